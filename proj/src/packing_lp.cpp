#include "kei/packing_lp.hpp"

#include <algorithm>
#include <cmath>

namespace kei {

namespace {

constexpr double kEps = 1e-9;

}  // namespace

PackingLpResult solve_packing_lp(int num_rows, const std::vector<PackingColumn>& cols, double budget,
                                 int max_iterations) {
  const bool has_budget = budget >= 0;
  const int m = num_rows + (has_budget ? 1 : 0);
  const int n = static_cast<int>(cols.size());
  PackingLpResult res;
  res.x.assign(n, 0.0);
  if (m == 0 || n == 0) return res.optimal = true, res;

  // Variables 0..n-1 are structural, n..n+m-1 are slacks.
  std::vector<double> binv(std::size_t(m) * m, 0.0);
  for (int i = 0; i < m; ++i) binv[std::size_t(i) * m + i] = 1.0;
  std::vector<int> head(m);
  std::vector<char> in_basis(n + m, 0);
  std::vector<double> xb(m, 1.0);
  for (int i = 0; i < m; ++i) {
    head[i] = n + i;
    in_basis[n + i] = 1;
  }
  if (has_budget) xb[m - 1] = budget;

  auto cost = [&](int var) { return var < n ? cols[var].weight : 0.0; };
  std::vector<double> y(m), alpha(m);

  auto compute_duals = [&] {
    std::fill(y.begin(), y.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      const double c = cost(head[i]);
      if (c == 0) continue;
      const double* row = &binv[std::size_t(i) * m];
      for (int k = 0; k < m; ++k) y[k] += c * row[k];
    }
  };
  auto reduced = [&](int j) {
    double d = cols[j].weight;
    for (int r : cols[j].rows) d -= y[r];
    if (has_budget) d -= y[m - 1] * cols[j].budget_coef;
    return d;
  };

  int degenerate_run = 0;
  for (; res.iterations < max_iterations; ++res.iterations) {
    compute_duals();
    // Dantzig pricing; after a long degenerate run fall back to the lowest
    // improving index to avoid cycling.
    const bool bland = degenerate_run > 50;
    int enter = -1;
    double best = kEps;
    for (int j = 0; j < n; ++j) {
      if (in_basis[j]) continue;
      const double d = reduced(j);
      if (d > best) {
        best = d;
        enter = j;
        if (bland) break;
      }
    }
    for (int i = 0; i < m && (enter < 0 || !bland); ++i) {
      if (in_basis[n + i]) continue;
      if (-y[i] > best) {
        best = -y[i];
        enter = n + i;
        if (bland) break;
      }
    }
    if (enter < 0) {
      res.optimal = true;
      break;
    }

    std::fill(alpha.begin(), alpha.end(), 0.0);
    auto add_col = [&](int r, double coef) {
      for (int i = 0; i < m; ++i) alpha[i] += binv[std::size_t(i) * m + r] * coef;
    };
    if (enter < n) {
      for (int r : cols[enter].rows) add_col(r, 1.0);
      if (has_budget && cols[enter].budget_coef) add_col(m - 1, cols[enter].budget_coef);
    } else {
      add_col(enter - n, 1.0);
    }

    int leave = -1;
    double ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (alpha[i] <= kEps) continue;
      const double t = std::max(0.0, xb[i]) / alpha[i];
      if (leave < 0 || t < ratio - kEps || (t <= ratio + kEps && head[i] < head[leave])) {
        leave = i;
        ratio = t;
      }
    }
    if (leave < 0) break;  // unbounded cannot happen for packing rows
    degenerate_run = ratio <= kEps ? degenerate_run + 1 : 0;

    for (int i = 0; i < m; ++i) xb[i] -= ratio * alpha[i];
    xb[leave] = ratio;
    const double piv = alpha[leave];
    double* prow = &binv[std::size_t(leave) * m];
    for (int k = 0; k < m; ++k) prow[k] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || std::abs(alpha[i]) <= 1e-15) continue;
      double* row = &binv[std::size_t(i) * m];
      const double f = alpha[i];
      for (int k = 0; k < m; ++k) row[k] -= f * prow[k];
    }
    in_basis[head[leave]] = 0;
    head[leave] = enter;
    in_basis[enter] = 1;
  }

  compute_duals();
  for (int i = 0; i < m; ++i) {
    if (head[i] < n) res.x[head[i]] = std::max(0.0, xb[i]);
    res.value += cost(head[i]) * xb[i];
  }
  for (double& v : y) v = std::max(0.0, v);
  double bound = 0;
  for (int i = 0; i < num_rows; ++i) bound += y[i];
  if (has_budget) bound += budget * y[m - 1];
  for (int j = 0; j < n; ++j) bound += std::max(0.0, reduced(j));
  res.dual_bound = bound;
  return res;
}

}  // namespace kei
