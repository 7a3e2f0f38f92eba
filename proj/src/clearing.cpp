#include "kei/clearing.hpp"

namespace kei {

Weight scheme_objective(const KeiInstance& inst, const WeightScheme& scheme, const Allocation& alloc) {
  Weight total = 0;
  for (std::size_t r = 0; r < inst.num_recipients(); ++r) {
    const auto rid = static_cast<RecipientId>(r);
    auto it = alloc.assignment.find(rid);
    if (it == alloc.assignment.end()) {
      total += scheme.waiting(rid);
    } else if (inst.is_compatible(rid, it->second)) {
      total += scheme.compatible(rid, it->second);
    } else {
      auto w = scheme.half(rid, it->second);
      if (!w) throw InfeasibleAllocation("scheme forbids half-compatible transplants");
      total += *w;
    }
  }
  return total;
}

namespace {

Matching perfect_matching_or_throw(const ExchangeGraph& g) {
  Matching m = max_weight_matching(perfectize(g));
  if (!is_perfect(g, m)) throw KeiError("exchange graph admits no perfect matching");
  m.weight = matching_weight(g, m);
  return m;
}

ClearingResult finish(const KeiInstance& inst, const WeightScheme& scheme, Allocation alloc) {
  ClearingResult res;
  res.stats = stats(inst, alloc);
  res.objective = scheme_objective(inst, scheme, alloc);
  res.allocation = std::move(alloc);
  return res;
}

}  // namespace

ClearingResult solve_objective(const KeiInstance& inst, const WeightScheme& scheme, ClearingOptions opts) {
  ExchangeGraph g = build_graph(inst, scheme);
  if (opts.strong_ir_pairs) g = restrict_compatible_pairs(g, inst);
  const Matching m = perfect_matching_or_throw(g);
  return finish(inst, scheme, matching_to_allocation(g, m, inst));
}

std::optional<Allocation> solve_h_all_kei(const KeiInstance& inst, int h, ClearingOptions opts) {
  if (h < 0) throw std::invalid_argument("suppressant budget must be non-negative");
  ExchangeGraph g = build_graph(inst, WeightScheme::for_instance(SchemeKind::MaxTR, inst));
  if (opts.strong_ir_pairs) g = restrict_compatible_pairs(g, inst);
  // Every real recipient must receive: drop their private edges.
  g = g.filtered([](const GraphEdge& e) { return !(e.kind == EdgeKind::Private && e.recipient >= 0); });
  std::vector<Weight> w;
  for (const auto& e : g.edges()) w.push_back(e.kind == EdgeKind::Compatible ? 1 : 0);
  g = g.with_weights(w);

  Matching m = max_weight_matching(perfectize(g));
  if (!is_perfect(g, m)) return std::nullopt;
  const Weight compatible = matching_weight(g, m);
  if (compatible < static_cast<Weight>(inst.num_recipients()) - h) return std::nullopt;
  return matching_to_allocation(g, m, inst);
}

ClearingResult solve_h_max_kei_sbm(const KeiInstance& inst, int h, const WeightScheme& scheme,
                                   ClearingOptions opts) {
  if (h < 0) throw std::invalid_argument("suppressant budget must be non-negative");
  if (!scheme.uniform_half_weight())
    throw std::invalid_argument("budgeted silver-bullet clearing needs a uniform half-compatible weight");
  ExchangeGraph g = build_graph(inst, scheme);
  if (g.source_class() == ModelClass::GM)
    throw ModelClassError("budgeted clearing via the suppressant gadget requires a silver-bullet instance");
  if (opts.strong_ir_pairs) g = restrict_compatible_pairs(g, inst);
  g = add_suppressant_gadget(g, h);
  const Matching m = perfect_matching_or_throw(g);
  return finish(inst, scheme, matching_to_allocation(g, m, inst));
}

BudgetedMatchingInstance export_budgeted_matching(const KeiInstance& inst, int h, Weight t) {
  const ExchangeGraph g = build_graph(inst, WeightScheme::for_instance(SchemeKind::MaxTR, inst));
  BudgetedMatchingInstance bm;
  bm.left = g.left().size();
  bm.right = g.right().size();
  bm.h = h;
  bm.t = t;
  const Weight shift = static_cast<Weight>(bm.left);
  for (const auto& e : g.edges())
    bm.edges.push_back({e.left, e.right, e.weight + shift, e.kind == EdgeKind::HalfCompatible, e.kind});
  return bm;
}

nlohmann::ordered_json to_json(const BudgetedMatchingInstance& bm) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["problem"] = "unit-cost-budgeted-matching";
  j["left"] = bm.left;
  j["right"] = bm.right;
  j["h"] = bm.h;
  j["t"] = bm.t;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : bm.edges) {
    nlohmann::ordered_json o;
    o["u"] = e.left;
    o["v"] = e.right;
    o["w"] = e.weight;
    o["special"] = e.special;
    o["kind"] = to_string(e.kind);
    j["edges"].push_back(o);
  }
  return j;
}

}  // namespace kei
