#include "kei/exact_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "kei/packing_lp.hpp"

namespace kei {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

namespace {

void set_bit(std::vector<std::uint64_t>& bits, int v) { bits[v >> 6] |= std::uint64_t{1} << (v & 63); }
bool test_bit(const std::vector<std::uint64_t>& bits, int v) { return (bits[v >> 6] >> (v & 63)) & 1; }

bool fits(const Structure& s, const SearchState& state) {
  if (s.half_edges > state.residual_budget) return false;
  for (std::size_t w = 0; w < s.mask.size(); ++w)
    if (s.mask[w] & ~state.available[w]) return false;
  return true;
}

Structure make_structure(const PackingProblem& p, bool is_cycle, int cycle, std::vector<int> edges,
                         std::vector<int> vertices) {
  const auto& g = p.model->graph;
  Structure s;
  s.is_cycle = is_cycle;
  s.cycle = cycle;
  s.edges = std::move(edges);
  s.vertices = std::move(vertices);
  s.mask.assign(p.words, 0);
  for (int v : s.vertices) set_bit(s.mask, v);
  for (int e : s.edges) {
    s.weight += g.edges()[e].weight;
    s.half_edges += g.edges()[e].half ? 1 : 0;
  }
  return s;
}

// Candidate-restricted bounds; every candidate must fit the state.
class BoundEvaluator {
 public:
  explicit BoundEvaluator(const PackingProblem& p)
      : p_(p),
        best_compat_(p.num_vertices, 0),
        best_half_(p.num_vertices, 0),
        vertex_slot_(p.num_vertices, -1) {}

  Weight per_recipient(const std::vector<int>& cands, int residual) {
    const auto& edges = p_.model->graph.edges();
    std::fill(best_compat_.begin(), best_compat_.end(), 0);
    std::fill(best_half_.begin(), best_half_.end(), 0);
    for (int si : cands)
      for (int e : p_.structures[si].edges) {
        const auto& edge = edges[e];
        Weight& slot = edge.half ? best_half_[edge.to] : best_compat_[edge.to];
        slot = std::max(slot, edge.weight);
      }
    Weight total = 0;
    upgrades_.clear();
    for (int v = 0; v < p_.num_vertices; ++v) {
      total += best_compat_[v];
      if (best_half_[v] > best_compat_[v]) upgrades_.push_back(best_half_[v] - best_compat_[v]);
    }
    const std::size_t take = std::min<std::size_t>(upgrades_.size(), static_cast<std::size_t>(residual));
    std::partial_sort(upgrades_.begin(), upgrades_.begin() + take, upgrades_.end(), std::greater<>());
    for (std::size_t i = 0; i < take; ++i) total += upgrades_[i];
    return total;
  }

  // Dual bound of the LP relaxation of the packing over the candidates.
  Weight linear(const std::vector<int>& cands, int residual) {
    int rows = 0, halves = 0;
    cols_.resize(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const auto& s = p_.structures[cands[i]];
      auto& col = cols_[i];
      col.rows.clear();
      for (int v : s.vertices) {
        if (vertex_slot_[v] < 0) {
          vertex_slot_[v] = rows++;
          vertices_.push_back(v);
        }
        col.rows.push_back(vertex_slot_[v]);
      }
      col.budget_coef = s.half_edges;
      col.weight = static_cast<double>(s.weight);
      halves += s.half_edges;
    }
    for (int v : vertices_) vertex_slot_[v] = -1;
    vertices_.clear();
    const double budget = residual < halves ? residual : -1.0;
    lp_ = solve_packing_lp(rows, cols_, budget);
    return static_cast<Weight>(std::floor(lp_.dual_bound + 1e-6));
  }

  /// Primal values of the last linear() call, one per candidate.
  const std::vector<double>& lp_values() const { return lp_.x; }

 private:
  const PackingProblem& p_;
  std::vector<Weight> best_compat_, best_half_, upgrades_;
  std::vector<int> vertex_slot_, vertices_;
  std::vector<PackingColumn> cols_;
  PackingLpResult lp_;
};

std::vector<int> candidates_for(const PackingProblem& p, const SearchState& state) {
  std::vector<int> cands;
  for (int i = 0; i < static_cast<int>(p.structures.size()); ++i)
    if (fits(p.structures[i], state)) cands.push_back(i);
  return cands;
}

// Higher weight per vertex first, then canonical index.
bool denser(const Structure& a, int ia, const Structure& b, int ib) {
  const Weight lhs = a.weight * static_cast<Weight>(b.vertices.size());
  const Weight rhs = b.weight * static_cast<Weight>(a.vertices.size());
  if (lhs != rhs) return lhs > rhs;
  return ia < ib;
}

std::vector<int> greedy_selection(const PackingProblem& p, SearchState state) {
  std::vector<int> order(p.structures.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return denser(p.structures[a], a, p.structures[b], b); });
  std::vector<int> chosen;
  for (int i : order) {
    const auto& s = p.structures[i];
    if (!fits(s, state)) continue;
    chosen.push_back(i);
    for (std::size_t w = 0; w < s.mask.size(); ++w) state.available[w] &= ~s.mask[w];
    state.residual_budget -= s.half_edges;
  }
  return chosen;
}

Weight selection_weight(const PackingProblem& p, const std::vector<int>& sel) {
  Weight total = 0;
  for (int i : sel) total += p.structures[i].weight;
  return total;
}

class Search {
 public:
  Search(const PackingProblem& p, const SolveLimits& limits)
      : p_(p), limits_(limits), bounds_(p), start_(std::chrono::steady_clock::now()), counts_(p.num_vertices, 0) {}

  void seed(std::vector<int> selection) {
    incumbent_ = selection_weight(p_, selection);
    best_ = std::move(selection);
    trajectory_.push_back({0, 0.0, incumbent_});
  }

  // Sets lp_ready_ when the LP relaxation was solved for these candidates.
  Weight bound(const std::vector<int>& cands, const SearchState& state, Weight cutoff) {
    lp_ready_ = false;
    Weight b = bounds_.per_recipient(cands, state.residual_budget);
    if (state.value + b <= cutoff) return b;
    b = std::min(b, bounds_.linear(cands, state.residual_budget));
    lp_ready_ = true;
    return b;
  }

  void run(const SearchState& state, const std::vector<int>& cands) {
    if (aborted_ || incumbent_ >= global_bound_) return;
    ++nodes_;
    if (limits_.node_limit && nodes_ > *limits_.node_limit) {
      aborted_ = true;
      return;
    }
    if (limits_.time_limit_seconds && (nodes_ & 15) == 0 && elapsed() > *limits_.time_limit_seconds) {
      aborted_ = true;
      return;
    }
    offer(state.value, selection_);
    if (cands.empty()) return;
    const Weight b = bound(cands, state, incumbent_);
    if (state.value + b <= incumbent_) return;

    std::vector<double> x(cands.size(), 0.0);
    if (lp_ready_) {
      x = bounds_.lp_values();
      round_lp(state, cands, x);
      if (state.value + b <= incumbent_) return;
    }

    const int v = branching_vertex(cands, x);
    std::vector<int> order;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (test_bit(p_.structures[cands[i]].mask, v)) order.push_back(static_cast<int>(i));
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (x[a] != x[b]) return x[a] > x[b];
      return denser(p_.structures[cands[a]], cands[a], p_.structures[cands[b]], cands[b]);
    });

    for (int oi : order) {
      const int si = cands[oi];
      const auto& s = p_.structures[si];
      SearchState child = state;
      for (std::size_t w = 0; w < s.mask.size(); ++w) child.available[w] &= ~s.mask[w];
      child.residual_budget -= s.half_edges;
      child.value += s.weight;
      std::vector<int> next;
      for (int ci : cands) {
        const auto& c = p_.structures[ci];
        if (c.half_edges > child.residual_budget) continue;
        bool clash = false;
        for (std::size_t w = 0; w < s.mask.size() && !clash; ++w) clash = (c.mask[w] & s.mask[w]) != 0;
        if (!clash) next.push_back(ci);
      }
      selection_.push_back(si);
      run(child, next);
      selection_.pop_back();
      if (aborted_ || incumbent_ >= global_bound_) return;
    }

    // Branch where v stays out of every structure.
    SearchState child = state;
    child.available[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    std::vector<int> next;
    for (int ci : cands)
      if (!test_bit(p_.structures[ci].mask, v)) next.push_back(ci);
    run(child, next);
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  const PackingProblem& p_;
  SolveLimits limits_;
  BoundEvaluator bounds_;
  std::chrono::steady_clock::time_point start_;
  std::vector<int> counts_;
  std::vector<int> selection_, best_;
  Weight incumbent_ = 0;
  Weight global_bound_ = std::numeric_limits<Weight>::max();  // root bound; reaching it ends the search
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<IncumbentPoint> trajectory_;

 private:
  bool lp_ready_ = false;

  void offer(Weight value, const std::vector<int>& selection) {
    if (value <= incumbent_) return;
    incumbent_ = value;
    best_ = selection;
    trajectory_.push_back({nodes_, elapsed(), incumbent_});
  }

  // Greedy completion in order of LP value; exact when the LP is integral.
  void round_lp(const SearchState& state, const std::vector<int>& cands, const std::vector<double>& x) {
    std::vector<int> order;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (x[i] > 1e-6) order.push_back(static_cast<int>(i));
    std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a] != x[b] ? x[a] > x[b] : a < b; });
    SearchState st = state;
    std::vector<int> sel = selection_;
    for (int i : order) {
      const auto& s = p_.structures[cands[i]];
      if (!fits(s, st)) continue;
      sel.push_back(cands[i]);
      for (std::size_t w = 0; w < s.mask.size(); ++w) st.available[w] &= ~s.mask[w];
      st.residual_budget -= s.half_edges;
      st.value += s.weight;
    }
    offer(st.value, sel);
  }

  // Pair vertex shared by the most fractional LP structures; without LP
  // information, the one covered by the fewest candidates.
  int branching_vertex(const std::vector<int>& cands, const std::vector<double>& x) {
    const auto& g = p_.model->graph;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const bool fractional = x[i] > 1e-6 && x[i] < 1 - 1e-6;
      if (fractional)
        for (int v : p_.structures[cands[i]].vertices)
          if (!g.is_ndd(v)) ++counts_[v];
    }
    int best = -1;
    for (int v = 0; v < g.num_pairs(); ++v)
      if (counts_[v] > 0 && (best < 0 || counts_[v] > counts_[best])) best = v;
    std::fill(counts_.begin(), counts_.end(), 0);
    if (best >= 0) return best;

    for (int si : cands)
      for (int v : p_.structures[si].vertices)
        if (!g.is_ndd(v)) ++counts_[v];
    for (int v = 0; v < g.num_pairs(); ++v)
      if (counts_[v] > 0 && (best < 0 || counts_[v] < counts_[best])) best = v;
    std::fill(counts_.begin(), counts_.end(), 0);
    return best;
  }
};

}  // namespace

PackingProblem make_packing_problem(const PicefModel& model, std::size_t max_structures) {
  PackingProblem p;
  p.model = &model;
  const auto& g = model.graph;
  p.num_vertices = g.num_vertices();
  p.words = std::max(1, (p.num_vertices + 63) / 64);

  for (int c = 0; c < static_cast<int>(model.cycles.size()); ++c) {
    const auto& cyc = model.cycles[c];
    if (cyc.weight <= 0) continue;
    p.structures.push_back(make_structure(p, true, c, cyc.edges, cyc.vertices));
  }

  // Chains grow one position at a time along edges whose position set allows it.
  std::vector<int> edges, vertices;
  std::vector<char> on_chain(p.num_vertices, 0);
  std::function<void(int, int)> grow = [&](int v, int k) {
    for (int e : g.out_edges(v)) {
      const int w = g.edges()[e].to;
      if (on_chain[w] || g.is_ndd(w) || model.y_var(e, k) < 0) continue;
      edges.push_back(e);
      vertices.push_back(w);
      on_chain[w] = 1;
      Structure s = make_structure(p, false, -1, edges, vertices);
      if (s.weight > 0) {
        if (p.structures.size() >= max_structures)
          throw KeiError("chain enumeration exceeds " + std::to_string(max_structures) + " structures");
        p.structures.push_back(std::move(s));
      }
      if (k < model.chain_cap) grow(w, k + 1);
      on_chain[w] = 0;
      vertices.pop_back();
      edges.pop_back();
    }
  };
  for (int ndd = g.num_pairs(); ndd < g.num_vertices(); ++ndd) {
    vertices = {ndd};
    on_chain[ndd] = 1;
    grow(ndd, 1);
    on_chain[ndd] = 0;
  }
  return p;
}

SearchState root_state(const PackingProblem& p) {
  SearchState s;
  s.available.assign(p.words, 0);
  for (int v = 0; v < p.num_vertices; ++v) set_bit(s.available, v);
  s.residual_budget = p.model->budget;
  return s;
}

Weight upper_bound(const PackingProblem& p, const SearchState& state) {
  const auto cands = candidates_for(p, state);
  if (cands.empty()) return 0;
  Search search(p, {});
  SearchState zero = state;
  zero.value = 0;
  return search.bound(cands, zero, std::numeric_limits<Weight>::min());
}

std::vector<char> assignment_for(const PackingProblem& p, const std::vector<int>& selected) {
  const PicefModel& m = *p.model;
  std::vector<char> x(m.num_vars(), 0);
  for (int si : selected) {
    const auto& s = p.structures[si];
    if (s.is_cycle) {
      x[m.z_var(s.cycle)] = 1;
    } else {
      for (std::size_t k = 0; k < s.edges.size(); ++k) x[m.y_var(s.edges[k], static_cast<int>(k) + 1)] = 1;
    }
    for (int e : s.edges) x[m.u_var(e)] = 1;
  }
  return x;
}

SolveReport BranchAndBoundSolver::solve(const PicefModel& model, const SolveLimits& limits) const {
  const PackingProblem p = make_packing_problem(model);
  const SearchState root = root_state(p);
  const auto cands = candidates_for(p, root);

  Search search(p, limits);
  search.seed(greedy_selection(p, root));
  const Weight root_bound =
      cands.empty() ? 0 : search.bound(cands, root, std::numeric_limits<Weight>::min());
  search.global_bound_ = root_bound;
  search.run(root, cands);

  SolveReport rep;
  rep.assignment = assignment_for(p, search.best_);
  rep.objective = search.incumbent_;
  rep.nodes = search.nodes_;
  rep.trajectory = std::move(search.trajectory_);
  rep.proven_optimal = !search.aborted_;
  rep.status = rep.proven_optimal ? SolveStatus::Optimal : SolveStatus::Feasible;
  rep.bound = rep.proven_optimal ? rep.objective : std::max(rep.objective, root_bound);
  return rep;
}

SolveReport GreedySolver::solve(const PicefModel& model, const SolveLimits&) const {
  const PackingProblem p = make_packing_problem(model);
  const auto sel = greedy_selection(p, root_state(p));
  SolveReport rep;
  rep.assignment = assignment_for(p, sel);
  rep.objective = selection_weight(p, sel);
  rep.status = SolveStatus::Feasible;
  rep.bound = std::max(rep.objective, upper_bound(p, root_state(p)));
  rep.trajectory.push_back({0, 0.0, rep.objective});
  return rep;
}

SolveReport solve_exact(const PicefModel& model, const SolveLimits& limits) {
  return BranchAndBoundSolver{}.solve(model, limits);
}

}  // namespace kei
