#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kei/exchange_graph.hpp"

namespace kei {

/// Dense rectangular assignment problem. Entry (i, j) lives at i * cols + j;
/// disallowed entries are ignored.
struct AssignmentProblem {
  int rows = 0;
  int cols = 0;
  std::vector<Weight> cost;
  std::vector<char> allowed;

  AssignmentProblem(int r, int c) : rows(r), cols(c), cost(std::size_t(r) * c, 0), allowed(std::size_t(r) * c, 0) {}

  void set(int i, int j, Weight c) {
    cost[std::size_t(i) * cols + j] = c;
    allowed[std::size_t(i) * cols + j] = 1;
  }
};

/// Minimum-cost assignment of every row to a distinct column (rows <= cols)
/// by shortest augmenting paths with dual potentials, O(rows^2 * cols).
/// Returns the column of each row, or nothing when no complete assignment
/// exists.
std::optional<std::vector<int>> min_cost_assignment(const AssignmentProblem& p);

/// Maximum-weight (not necessarily perfect) matching of a bipartite
/// multigraph. Among parallel edges the heaviest, then lowest-index, is used.
Matching max_weight_matching(const ExchangeGraph& g);

/// Uniform shift that turns a maximum-weight matching into a maximum
/// cardinality matching that is maximum-weight among those: n * w_max + 1 for
/// non-negative weights, where n is the larger side. Negative weights widen
/// the shift to n * (w_max - w_min) + 1.
Weight perfectization_shift(const ExchangeGraph& g);

ExchangeGraph perfectize(const ExchangeGraph& g);

/// Sum of the graph's edge weights over the matching.
Weight matching_weight(const ExchangeGraph& g, const Matching& m);

}  // namespace kei
