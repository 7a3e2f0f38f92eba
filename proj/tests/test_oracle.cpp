#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "kei/oracle.hpp"

using namespace kei;

namespace {

// Renames recipients and donors; pairs, flags and donor sets follow.
KeiInstance relabel(const KeiInstance& inst, const std::vector<int>& rp, const std::vector<int>& dp) {
  KeiInstance out;
  out.recipients.resize(inst.recipients.size());
  out.donors.resize(inst.donors.size());
  for (std::size_t r = 0; r < rp.size(); ++r) out.recipients[rp[r]] = {rp[r], inst.recipients[r].blood, false};
  for (std::size_t d = 0; d < dp.size(); ++d)
    out.donors[dp[d]] = {dp[d], inst.donors[d].blood, inst.donors[d].altruistic};
  for (const auto& [r, d] : inst.pairs) out.pairs.emplace_back(rp[r], dp[d]);
  out.compat.assign(rp.size(), {});
  out.half.assign(rp.size(), {});
  for (std::size_t r = 0; r < rp.size(); ++r) {
    for (int d : inst.compat[r]) out.add_compatible(rp[r], dp[d]);
    for (int d : inst.half[r]) out.add_half(rp[r], dp[d]);
  }
  return out;
}

}  // namespace

TEST_CASE("exchange cycle allocations") {
  const KeiInstance inst = test::three_cycle();
  OracleConstraints c;
  c.budget = 2;
  const auto all = all_allocations(inst, c);
  REQUIRE(all.size() == 2);
  CHECK(all[0].assignment.empty());
  CHECK(all[1].assignment == std::map<RecipientId, DonorId>{{0, 1}, {1, 2}, {2, 0}});
  c.budget = 1;
  CHECK(all_allocations(inst, c).size() == 1);

  const auto scheme = WeightScheme::for_instance(SchemeKind::MaxTR, inst);
  c.budget = 2;
  c.cycle_cap = 2;
  CHECK(oracle_optimum(inst, scheme, c).objective == ObjectiveTuple{0});
  c.cycle_cap = 3;
  const OracleResult r = oracle_optimum(inst, scheme, c);
  CHECK(r.objective == ObjectiveTuple{3});
  CHECK(r.optima == 1);
  CHECK(r.feasible == 2);
}

TEST_CASE("empty instance has one allocation") {
  const KeiInstance inst;
  CHECK(all_allocations(inst, {}).size() == 1);
  const auto r = oracle_optimum(inst, WeightScheme::for_instance(SchemeKind::LexCoTr, inst), {});
  CHECK(r.objective == ObjectiveTuple{0, 0});
}

TEST_CASE("oracle refuses large or ill-posed inputs") {
  KeiInstance big = KeiInstance::with_layout(11, 0, 0);
  CHECK_THROWS_WITH_AS(all_allocations(big, {}), doctest::Contains("recipients"), KeiError);
  OracleConstraints c;
  c.max_recipients = 12;
  CHECK_NOTHROW(all_allocations(KeiInstance::with_layout(3, 0, 0), c));
  c.strong_ir = false;
  c.cycle_cap = 3;
  CHECK_THROWS_AS(all_allocations(KeiInstance::with_layout(2, 0, 0), c), std::invalid_argument);
}

TEST_CASE("objective tuples") {
  const KeiInstance inst = test::mixed_pool();
  // d0 -> r0, d2 -> r1, d3 -> r3 (half-compatible); r2 and d1 stay out.
  const Allocation a = make_allocation(inst, {{0, 0}, {1, 2}, {3, 3}});
  REQUIRE_FALSE(allocation_violation(inst, a).has_value());
  auto tuple = [&](SchemeKind k) { return objective_tuple(inst, WeightScheme::for_instance(k, inst), a); };
  CHECK(tuple(SchemeKind::MaxTR) == ObjectiveTuple{3});
  CHECK(tuple(SchemeKind::LexCoTr) == ObjectiveTuple{2, 3});
  CHECK(tuple(SchemeKind::LexCoNegHc) == ObjectiveTuple{2, -1});
  CHECK(tuple(SchemeKind::LexTrNegHc) == ObjectiveTuple{3, -1});
  CHECK(tuple(SchemeKind::MaxCoBm) == ObjectiveTuple{2});
}

TEST_CASE("property: compatible-only markets never use suppressants") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 60; ++it) {
    test::RandomShape shape;
    shape.cls = test::RandomShape::Class::BM;
    shape.p_compat = 0.4;
    const KeiInstance inst = test::random_instance(rng, shape);
    for (SchemeKind k : {SchemeKind::MaxTR, SchemeKind::LexTrNegHc}) {
      const auto r = oracle_optimum(inst, WeightScheme::for_instance(k, inst), {});
      CHECK(stats(inst, r.witness).half_compatible == 0);
    }
  }
}

TEST_CASE("property: optimum does not depend on labels") {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 80; ++it) {
    const KeiInstance inst = test::random_instance(rng, {});
    std::vector<int> rp(inst.num_recipients()), dp(inst.num_donors());
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(dp.begin(), dp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(dp.begin(), dp.end(), rng);
    const KeiInstance moved = relabel(inst, rp, dp);
    OracleConstraints c;
    c.budget = static_cast<int>(rng() % 3);
    c.cycle_cap = 3;
    c.chain_cap = 2;
    for (SchemeKind k : {SchemeKind::MaxTR, SchemeKind::LexCoNegHc}) {
      const auto a = oracle_optimum(inst, WeightScheme::for_instance(k, inst), c);
      const auto b = oracle_optimum(moved, WeightScheme::for_instance(k, moved), c);
      CHECK(a.objective == b.objective);
      CHECK(a.optima == b.optima);
      CHECK(a.feasible == b.feasible);
    }
  }
}

TEST_CASE("property: every enumerated allocation is feasible and within budget") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    const KeiInstance inst = test::random_instance(rng, {});
    OracleConstraints c;
    c.budget = static_cast<int>(rng() % 3);
    enumerate_allocations(inst, c, [&](const Allocation& a) {
      CHECK_FALSE(allocation_violation(inst, a).has_value());
      CHECK(check_strong_ir(inst, a));
      CHECK(stats(inst, a).half_compatible <= *c.budget);
    });
  }
}
