#include "kei/matching.hpp"

#include <algorithm>
#include <limits>

namespace kei {

std::optional<std::vector<int>> min_cost_assignment(const AssignmentProblem& p) {
  const int n = p.rows;
  const int m = p.cols;
  if (n > m) throw std::invalid_argument("assignment needs rows <= cols");
  if (n == 0) return std::vector<int>{};
  constexpr Weight kInf = std::numeric_limits<Weight>::max();

  // 1-based potentials; column 0 is the virtual root of each search.
  std::vector<Weight> u(n + 1, 0), v(m + 1, 0), minv(m + 1);
  std::vector<int> owner(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);

  for (int i = 1; i <= n; ++i) {
    owner[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = owner[j0];
      Weight delta = kInf;
      int j1 = -1;
      const std::size_t row = std::size_t(i0 - 1) * m;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        if (p.allowed[row + j - 1]) {
          const Weight cur = p.cost[row + j - 1] - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 < 0) return std::nullopt;
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else if (minv[j] != kInf) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> col_of(n, -1);
  for (int j = 1; j <= m; ++j)
    if (owner[j] != 0) col_of[owner[j] - 1] = j - 1;
  return col_of;
}

Matching max_weight_matching(const ExchangeGraph& g) {
  const int nl = static_cast<int>(g.left().size());
  const int nr = static_cast<int>(g.right().size());
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> best(std::size_t(nl) * nr, kNone);
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::size_t& slot = best[edges[i].left * nr + edges[i].right];
    if (slot == kNone || edges[i].weight > edges[slot].weight) slot = i;
  }

  // One private "skip" column per row lets any row stay unmatched at cost 0.
  AssignmentProblem p(nl, nr + nl);
  for (int i = 0; i < nl; ++i) {
    for (int j = 0; j < nr; ++j) {
      const std::size_t e = best[std::size_t(i) * nr + j];
      if (e != kNone) p.set(i, j, -edges[e].weight);
    }
    p.set(i, nr + i, 0);
  }
  auto cols = min_cost_assignment(p);

  Matching m;
  for (int i = 0; i < nl; ++i) {
    const int j = (*cols)[i];
    if (j >= nr) continue;
    const std::size_t e = best[std::size_t(i) * nr + j];
    if (edges[e].weight < 0) continue;
    m.edges.push_back(e);
    m.weight += edges[e].weight;
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

Weight perfectization_shift(const ExchangeGraph& g) {
  const Weight n = static_cast<Weight>(std::max(g.left().size(), g.right().size()));
  Weight w_max = 0, w_min = 0;
  for (const auto& e : g.edges()) {
    w_max = std::max(w_max, e.weight);
    w_min = std::min(w_min, e.weight);
  }
  return n * (w_max - w_min) + 1;
}

ExchangeGraph perfectize(const ExchangeGraph& g) {
  const Weight shift = perfectization_shift(g);
  std::vector<Weight> w;
  w.reserve(g.edges().size());
  for (const auto& e : g.edges()) w.push_back(e.weight + shift);
  return g.with_weights(w);
}

Weight matching_weight(const ExchangeGraph& g, const Matching& m) {
  Weight total = 0;
  for (std::size_t idx : m.edges) total += g.edges()[idx].weight;
  return total;
}

}  // namespace kei
