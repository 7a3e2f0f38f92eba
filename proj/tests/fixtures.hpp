#pragma once

// Shared instances and brute-force helpers for the test binaries.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "kei/exchange_graph.hpp"
#include "kei/instance.hpp"
#include "kei/matching.hpp"

namespace kei::test {

// Three pairs on one exchange cycle: d1 suits r0, r1 needs a suppressant for
// d2, r2 needs one for d0.
inline KeiInstance three_cycle() {
  KeiInstance inst = KeiInstance::with_layout(3, 0, 0);
  inst.add_compatible(0, 1);
  inst.add_half(1, 2);
  inst.add_half(2, 0);
  return inst;
}

// One single recipient (r0), three pairs (r1,d0) (r2,d1) (r3,d2) and the
// altruistic donor d3.
inline KeiInstance mixed_pool() {
  KeiInstance inst;
  for (int i = 0; i < 4; ++i) inst.recipients.push_back({i, std::nullopt, false});
  for (int j = 0; j < 4; ++j) inst.donors.push_back({j, std::nullopt, j == 3});
  inst.pairs = {{1, 0}, {2, 1}, {3, 2}};
  inst.compat.assign(4, {});
  inst.half.assign(4, {});
  inst.add_compatible(0, 0);
  inst.add_compatible(1, 2);
  inst.add_half(1, 0);
  inst.add_half(1, 1);
  inst.add_half(2, 2);
  inst.add_half(3, 1);
  inst.add_half(3, 3);
  return inst;
}

// mixed_pool() with every other recipient/donor combination half-compatible.
inline KeiInstance mixed_pool_silver() {
  KeiInstance inst = mixed_pool();
  for (int r = 0; r < 4; ++r)
    for (int d = 0; d < 4; ++d)
      if (!inst.is_compatible(r, d)) inst.add_half(r, d);
  return inst;
}

struct RandomShape {
  int max_pairs = 5;
  int max_singles = 1;
  int max_altruists = 1;
  double p_compat = 0.3;
  double p_half = 0.3;
  enum class Class { Any, BM, SBM } cls = Class::Any;
};

inline KeiInstance random_instance(std::mt19937_64& rng, const RandomShape& s) {
  auto pick = [&](int hi) { return static_cast<int>(rng() % static_cast<std::uint64_t>(hi + 1)); };
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };
  const int pairs = pick(s.max_pairs);
  const int singles = pick(s.max_singles);
  const int altruists = pick(s.max_altruists);
  KeiInstance inst = KeiInstance::with_layout(pairs, singles, altruists);
  for (std::size_t r = 0; r < inst.num_recipients(); ++r)
    for (std::size_t d = 0; d < inst.num_donors(); ++d) {
      const auto rid = static_cast<RecipientId>(r);
      const auto did = static_cast<DonorId>(d);
      if (coin(s.p_compat))
        inst.add_compatible(rid, did);
      else if (s.cls == RandomShape::Class::SBM || (s.cls == RandomShape::Class::Any && coin(s.p_half)))
        inst.add_half(rid, did);
    }
  return inst;
}

/// Best matching by exhaustive search over left vertices; with perfect_only,
/// only perfect matchings count. Empty when no perfect matching exists.
// First half of strong IR: a paired donor gives only when her recipient
// receives.
inline bool donors_follow_recipients(const KeiInstance& inst, const Allocation& a) {
  for (const auto& [r, d] : a.assignment)
    if (auto owner = inst.paired_recipient(d); owner && !a.assignment.count(*owner)) return false;
  return true;
}

inline std::optional<Weight> brute_force_matching(const ExchangeGraph& g, bool perfect_only) {
  const std::size_t nl = g.left().size(), nr = g.right().size();
  std::vector<std::vector<std::pair<std::size_t, Weight>>> adj(nl);
  for (const auto& e : g.edges()) adj[e.left].push_back({e.right, e.weight});
  std::vector<char> used(nr, 0);
  std::optional<Weight> best;
  auto rec = [&](auto& self, std::size_t l, Weight acc) -> void {
    if (l == nl) {
      if (!best || acc > *best) best = acc;
      return;
    }
    if (!perfect_only) self(self, l + 1, acc);
    for (auto [r, w] : adj[l]) {
      if (used[r]) continue;
      used[r] = 1;
      self(self, l + 1, acc + w);
      used[r] = 0;
    }
  };
  if (perfect_only && nl != nr) return std::nullopt;
  rec(rec, 0, 0);
  return best;
}

}  // namespace kei::test
