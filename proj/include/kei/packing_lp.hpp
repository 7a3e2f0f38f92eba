#pragma once

// Small dense revised simplex for packing LPs
//   max w.x  s.t.  A x <= b,  0 <= x <= 1,  A >= 0,
// where every column covers at least one row with coefficient 1 and b >= 0,
// so the unit upper bounds are implied by the covering rows.

#include <cstdint>
#include <vector>

namespace kei {

struct PackingColumn {
  std::vector<int> rows;          // rows with coefficient 1
  int budget_coef = 0;            // coefficient in the optional budget row
  double weight = 0;
};

struct PackingLpResult {
  double value = 0;               // primal objective reached
  double dual_bound = 0;          // Lagrangian bound from the final duals
  bool optimal = false;
  int iterations = 0;
  std::vector<double> x;          // primal value per column
};

/// `rhs` has one entry per covering row; `budget` < 0 drops the budget row.
/// dual_bound is a valid upper bound on the integer optimum for any stopping
/// point, since it is evaluated from clipped duals.
PackingLpResult solve_packing_lp(int num_rows, const std::vector<PackingColumn>& cols, double budget,
                                 int max_iterations = 5000);

}  // namespace kei
