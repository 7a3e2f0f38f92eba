#include "kei/oracle.hpp"

#include <algorithm>

namespace kei {

ObjectiveTuple objective_tuple(const KeiInstance& inst, const WeightScheme& scheme, const Allocation& alloc,
                               OracleObjective mode) {
  if (mode == OracleObjective::EdgeWeight) {
    Weight total = 0;
    for (const auto& [r, d] : alloc.assignment) {
      if (inst.is_compatible(r, d)) {
        total += scheme.compatible(r, d);
      } else {
        auto w = scheme.half(r, d);
        if (!w) throw InfeasibleAllocation("scheme forbids half-compatible transplants");
        total += *w;
      }
    }
    return {total};
  }
  const AllocationStats s = stats(inst, alloc);
  switch (scheme.kind) {
    case SchemeKind::MaxTR: return {s.total};
    case SchemeKind::MaxCoBm: return {s.compatible};
    case SchemeKind::LexCoTr: return {s.compatible, s.total};
    case SchemeKind::LexCoNegHc: return {s.compatible, -s.half_compatible};
    case SchemeKind::LexTrNegHc: return {s.total, -s.half_compatible};
    case SchemeKind::Custom: break;
  }
  Weight total = 0;
  for (std::size_t r = 0; r < inst.num_recipients(); ++r) {
    const auto rid = static_cast<RecipientId>(r);
    auto it = alloc.assignment.find(rid);
    if (it == alloc.assignment.end())
      total += scheme.waiting(rid);
    else if (inst.is_compatible(rid, it->second))
      total += scheme.compatible(rid, it->second);
    else
      total += *scheme.half(rid, it->second);
  }
  return {total};
}

namespace {

struct Enumerator {
  const KeiInstance& inst;
  const OracleConstraints& c;
  const std::function<void(const Allocation&)>& visit;
  std::vector<std::vector<DonorId>> options;
  std::vector<DonorId> choice;  // -1 = unassigned
  std::vector<char> used;
  int halves = 0;

  void recurse(std::size_t r) {
    if (r == inst.num_recipients()) {
      if (feasible()) emit();
      return;
    }
    choice[r] = -1;
    recurse(r + 1);
    for (DonorId d : options[r]) {
      if (used[d]) continue;
      const bool half = inst.is_half_compatible(static_cast<RecipientId>(r), d);
      if (half && c.budget && halves >= *c.budget) continue;
      used[d] = 1;
      halves += half;
      choice[r] = d;
      recurse(r + 1);
      choice[r] = -1;
      halves -= half;
      used[d] = 0;
    }
  }

  bool feasible() const {
    if (!c.strong_ir) return true;
    for (const auto& [r, d] : inst.pairs)
      if (used[d] && choice[r] < 0) return false;
    if (!c.cycle_cap && !c.chain_cap) return true;

    // With the coupling every assigned recipient lies on exactly one chain
    // (starting at an unpaired donor) or one cycle.
    const int n = static_cast<int>(inst.num_recipients());
    std::vector<char> seen(n, 0);
    std::vector<int> next(n, -1);  // recipient fed by this recipient's donor
    std::vector<std::vector<int>> chain_starts(inst.num_donors());
    for (int r = 0; r < n; ++r) {
      if (choice[r] < 0) continue;
      if (auto owner = inst.paired_recipient(choice[r]))
        next[*owner] = r;
      else
        chain_starts[choice[r]].push_back(r);
    }
    for (const auto& starts : chain_starts)
      for (int r : starts) {
        int length = 1;
        for (int v = r; v >= 0; v = next[v]) {
          seen[v] = 1;
          if (next[v] >= 0) ++length;
        }
        if (c.chain_cap && length > *c.chain_cap) return false;
      }
    for (int r = 0; r < n; ++r) {
      if (choice[r] < 0 || seen[r]) continue;
      int length = 0;
      for (int v = r; !seen[v]; v = next[v]) {
        seen[v] = 1;
        ++length;
      }
      if (c.cycle_cap && length > *c.cycle_cap) return false;
    }
    return true;
  }

  void emit() const {
    std::map<RecipientId, DonorId> assignment;
    for (std::size_t r = 0; r < choice.size(); ++r)
      if (choice[r] >= 0) assignment[static_cast<RecipientId>(r)] = choice[r];
    visit(make_allocation(inst, std::move(assignment)));
  }
};

}  // namespace

void enumerate_allocations(const KeiInstance& inst, const OracleConstraints& c,
                           const std::function<void(const Allocation&)>& visit) {
  if (static_cast<int>(inst.num_recipients()) > c.max_recipients)
    throw KeiError("oracle refuses instances with more than " + std::to_string(c.max_recipients) + " recipients");
  if (!c.strong_ir && (c.cycle_cap || c.chain_cap))
    throw std::invalid_argument("cycle and chain caps need the strong-IR coupling");
  Enumerator en{inst, c, visit, {}, std::vector<DonorId>(inst.num_recipients(), -1),
                std::vector<char>(inst.num_donors(), 0), 0};
  for (std::size_t r = 0; r < inst.num_recipients(); ++r) {
    const auto rid = static_cast<RecipientId>(r);
    const auto own = inst.paired_donor(rid);
    std::vector<DonorId> opts(inst.compat[r].begin(), inst.compat[r].end());
    if (!(c.strict_pairs && inst.own_donor_compatible(rid))) opts.insert(opts.end(), inst.half[r].begin(), inst.half[r].end());
    if (!c.allow_self_loops && own) opts.erase(std::remove(opts.begin(), opts.end(), *own), opts.end());
    std::sort(opts.begin(), opts.end());
    en.options.push_back(std::move(opts));
  }
  en.recurse(0);
}

std::vector<Allocation> all_allocations(const KeiInstance& inst, const OracleConstraints& c) {
  std::vector<Allocation> out;
  enumerate_allocations(inst, c, [&](const Allocation& a) { out.push_back(a); });
  return out;
}

OracleResult oracle_optimum(const KeiInstance& inst, const WeightScheme& scheme, const OracleConstraints& c,
                            OracleObjective mode) {
  OracleConstraints cons = c;
  if (scheme.kind == SchemeKind::MaxCoBm) cons.budget = 0;
  OracleResult res;
  enumerate_allocations(inst, cons, [&](const Allocation& a) {
    ++res.feasible;
    ObjectiveTuple t = objective_tuple(inst, scheme, a, mode);
    if (res.optima == 0 || t > res.objective) {
      res.objective = std::move(t);
      res.witness = a;
      res.optima = 1;
    } else if (t == res.objective) {
      ++res.optima;
    }
  });
  return res;
}

}  // namespace kei
