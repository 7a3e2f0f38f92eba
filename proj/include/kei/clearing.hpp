#pragma once

// Clearing via maximum-weight perfect matchings on the exchange graph.

#include <optional>

#include "json.hpp"
#include "kei/exchange_graph.hpp"
#include "kei/instance.hpp"
#include "kei/matching.hpp"
#include "kei/weights.hpp"

namespace kei {

struct ClearingOptions {
  /// Forbid recipients whose own donor is compatible from trading down to a
  /// half-compatible kidney.
  bool strong_ir_pairs = true;
};

struct ClearingResult {
  Allocation allocation;
  AllocationStats stats;
  Weight objective = 0;
};

/// Scheme value of an allocation: transplant weights plus the waiting weight
/// of every recipient left unassigned.
Weight scheme_objective(const KeiInstance& inst, const WeightScheme& scheme, const Allocation& alloc);

ClearingResult solve_objective(const KeiInstance& inst, const WeightScheme& scheme, ClearingOptions opts = {});

/// Allocation satisfying every recipient with at most h suppressants, if one
/// exists.
std::optional<Allocation> solve_h_all_kei(const KeiInstance& inst, int h, ClearingOptions opts = {});

/// Best allocation under the scheme using at most h suppressants. Requires a
/// silver-bullet instance (ModelClassError otherwise) and a scheme with a
/// uniform half-compatible weight; the custom scheme is rejected.
ClearingResult solve_h_max_kei_sbm(const KeiInstance& inst, int h, const WeightScheme& scheme,
                                   ClearingOptions opts = {});

struct BudgetedEdge {
  std::size_t left = 0;
  std::size_t right = 0;
  Weight weight = 0;
  bool special = false;  // member of E' (half-compatible)
  EdgeKind kind = EdgeKind::Private;
};

/// Unit-cost budgeted matching: find a matching of weight >= t with at most h
/// edges from E'.
struct BudgetedMatchingInstance {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<BudgetedEdge> edges;
  int h = 0;
  Weight t = 0;
};

/// Exports the unit-weight (max-tr) exchange graph with every weight shifted
/// by n, the number of left vertices, so that maximum-weight matchings are
/// perfect. E' is the half-compatible edge set.
BudgetedMatchingInstance export_budgeted_matching(const KeiInstance& inst, int h, Weight t);

nlohmann::ordered_json to_json(const BudgetedMatchingInstance& bm);

}  // namespace kei
