#include <functional>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "kei/exact_solver.hpp"
#include "kei/generator.hpp"
#include "kei/oracle.hpp"
#include "kei/packing_lp.hpp"

using namespace kei;

namespace {

Weight brute_packing(const PackingProblem& p, const SearchState& s) {
  Weight best = 0;
  std::function<void(std::size_t, std::vector<std::uint64_t>, int, Weight)> rec =
      [&](std::size_t i, std::vector<std::uint64_t> avail, int budget, Weight value) {
        best = std::max(best, value);
        for (; i < p.structures.size(); ++i) {
          const auto& st = p.structures[i];
          if (st.half_edges > budget) continue;
          bool fits = true;
          for (std::size_t w = 0; w < avail.size(); ++w) fits = fits && (st.mask[w] & ~avail[w]) == 0;
          if (!fits) continue;
          auto next = avail;
          for (std::size_t w = 0; w < next.size(); ++w) next[w] &= ~st.mask[w];
          rec(i + 1, next, budget - st.half_edges, value + st.weight);
        }
      };
  rec(0, s.available, s.residual_budget, 0);
  return best;
}

void check_report(const PicefModel& m, const SolveReport& rep) {
  REQUIRE(rep.assignment.size() == static_cast<std::size_t>(m.num_vars()));
  CHECK_FALSE(violated_row(m, rep.assignment).has_value());
  CHECK(evaluate(m, rep.assignment) == rep.objective);
  CHECK(rep.bound >= rep.objective);
  for (std::size_t i = 1; i < rep.trajectory.size(); ++i) {
    CHECK(rep.trajectory[i].objective >= rep.trajectory[i - 1].objective);
    CHECK(rep.trajectory[i].node >= rep.trajectory[i - 1].node);
  }
  if (!rep.trajectory.empty()) CHECK(rep.trajectory.back().objective == rep.objective);
}

}  // namespace

TEST_CASE("exchange cycle needs both suppressants") {
  const KeiInstance inst = test::three_cycle();
  const auto scheme = WeightScheme::for_instance(SchemeKind::MaxTR, inst);
  const PicefModel m = build_model(inst, scheme, 3, 3, 2);
  const SolveReport rep = solve_exact(m);
  CHECK(rep.status == SolveStatus::Optimal);
  CHECK(rep.objective == 3);
  check_report(m, rep);
  for (int h : {0, 1}) {
    const SolveReport r = solve_exact(m.with_budget(h));
    CHECK(r.objective == 0);
    CHECK(r.status == SolveStatus::Optimal);
  }
  CHECK(solve_exact(build_model(inst, scheme, 2, 3, 2)).objective == 0);
}

TEST_CASE("altruist chain on the mixed pool") {
  const KeiInstance inst = test::mixed_pool();
  const auto scheme = WeightScheme::for_instance(SchemeKind::MaxTR, inst);
  const PicefModel m = build_model(inst, scheme, 3, 3, kUnlimitedBudget);
  const SolveReport rep = solve_exact(m);
  check_report(m, rep);
  OracleConstraints c;
  c.cycle_cap = 3;
  c.chain_cap = 3;
  CHECK(rep.objective == oracle_optimum(inst, scheme, c, OracleObjective::EdgeWeight).objective[0]);
  const IlpSolution sol = extract_solution(m, rep.assignment);
  const Allocation a = solution_allocation(m, sol, inst);
  CHECK(a.assignment.size() == static_cast<std::size_t>(rep.objective));
}

TEST_CASE("property: branch and bound matches the exhaustive oracle") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int it = 0; it < 200; ++it) {
    test::RandomShape shape;
    shape.max_pairs = 6;
    shape.max_singles = 1;
    shape.max_altruists = 2;
    shape.p_compat = 0.25;
    shape.p_half = 0.3;
    const KeiInstance inst = test::random_instance(rng, shape);
    const int D = 2 + static_cast<int>(rng() % 2);
    const int L = static_cast<int>(rng() % 4);
    const int h = static_cast<int>(rng() % 4);
    const SchemeKind kind = it % 3 == 0 ? SchemeKind::LexCoTr : SchemeKind::MaxTR;
    const auto scheme = WeightScheme::for_instance(kind, inst);
    const PicefModel m = build_model(inst, scheme, D, L, h);
    const SolveReport rep = solve_exact(m);
    CHECK(rep.status == SolveStatus::Optimal);
    check_report(m, rep);

    OracleConstraints c;
    c.budget = h;
    c.cycle_cap = D;
    c.chain_cap = L;
    const OracleResult o = oracle_optimum(inst, scheme, c, OracleObjective::EdgeWeight);
    CHECK(rep.objective == o.objective[0]);

    const Allocation a = solution_allocation(m, extract_solution(m, rep.assignment), inst);
    CHECK(stats(inst, a).half_compatible <= h);
    CHECK(check_strong_ir(inst, a));
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("property: upper bound is admissible") {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 150; ++it) {
    test::RandomShape shape;
    shape.max_pairs = 5;
    shape.max_altruists = 1;
    const KeiInstance inst = test::random_instance(rng, shape);
    const auto scheme = WeightScheme::for_instance(SchemeKind::MaxTR, inst);
    const PicefModel m = build_model(inst, scheme, 3, 3, static_cast<int>(rng() % 3));
    const PackingProblem p = make_packing_problem(m);
    SearchState s = root_state(p);
    CHECK(upper_bound(p, s) >= brute_packing(p, s));
    for (int v = 0; v < p.num_vertices; ++v)
      if (rng() % 3 == 0) s.available[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    s.residual_budget = static_cast<int>(rng() % 3);
    CHECK(upper_bound(p, s) >= brute_packing(p, s));
  }
}

TEST_CASE("packing structures") {
  const KeiInstance inst = test::mixed_pool();
  const auto scheme = WeightScheme::for_instance(SchemeKind::MaxTR, inst);
  const PicefModel m = build_model(inst, scheme, 3, 3, kUnlimitedBudget);
  const PackingProblem p = make_packing_problem(m);
  CHECK(p.num_vertices == 5);
  for (const auto& s : p.structures) {
    CHECK(s.weight > 0);
    CHECK(s.edges.size() == (s.is_cycle ? s.vertices.size() : s.vertices.size() - 1));
    if (!s.is_cycle) CHECK(m.graph.is_ndd(s.vertices.front()));
    CHECK_FALSE(violated_row(m, assignment_for(p, {static_cast<int>(&s - p.structures.data())})).has_value());
  }
  CHECK_THROWS_AS(make_packing_problem(m, 1), KeiError);
}

TEST_CASE("solver is deterministic") {
  GeneratorConfig cfg;
  cfg.n_vertices = 48;
  cfg.alpha = 0.2;
  cfg.seed = 3;
  const KeiInstance inst = generate_pool(cfg);
  const PicefModel m = build_model(inst, WeightScheme::for_instance(SchemeKind::MaxTR, inst), 3, 3, 5);
  const SolveReport a = solve_exact(m);
  const SolveReport b = solve_exact(m);
  CHECK(a.status == SolveStatus::Optimal);
  CHECK(a.objective == b.objective);
  CHECK(a.assignment == b.assignment);
  CHECK(a.nodes == b.nodes);
  check_report(m, a);
}

TEST_CASE("limits yield feasible reports with valid bounds") {
  int limited = 0;
  for (std::uint64_t seed = 1; seed <= 30 && limited < 3; ++seed) {
    GeneratorConfig cfg;
    cfg.n_vertices = 40;
    cfg.alpha = 0.3;
    cfg.seed = seed;
    const KeiInstance inst = generate_pool(cfg);
    const PicefModel m = build_model(inst, WeightScheme::for_instance(SchemeKind::MaxTR, inst), 3, 3, 4);
    const SolveReport full = solve_exact(m);
    const SolveReport cut = solve_exact(m, SolveLimits{std::nullopt, 0});
    check_report(m, cut);
    CHECK(cut.objective <= full.objective);
    CHECK(cut.bound >= full.objective);
    if (cut.status == SolveStatus::Feasible) {
      ++limited;
      CHECK_FALSE(cut.proven_optimal);
    } else {
      CHECK(cut.objective == full.objective);
    }
  }
  CHECK(limited > 0);
}

TEST_CASE("greedy backend") {
  GreedySolver greedy;
  CHECK(greedy.capability() == Capability::Heuristic);
  CHECK(BranchAndBoundSolver{}.capability() == Capability::Exact);
  std::mt19937_64 rng(9);
  for (int it = 0; it < 50; ++it) {
    const KeiInstance inst = test::random_instance(rng, {});
    const PicefModel m = build_model(inst, WeightScheme::for_instance(SchemeKind::MaxTR, inst), 3, 3, 2);
    const SolveReport g = greedy.solve(m, {});
    check_report(m, g);
    CHECK(g.objective <= solve_exact(m).objective);
  }
}

TEST_CASE("packing lp") {
  SUBCASE("triangle of pairs") {
    // Three edges on three rows: fractional optimum 1.5.
    std::vector<PackingColumn> cols{{{0, 1}, 0, 1}, {{1, 2}, 0, 1}, {{0, 2}, 0, 1}};
    const auto r = solve_packing_lp(3, cols, -1);
    CHECK(r.optimal);
    CHECK(r.value == doctest::Approx(1.5));
    CHECK(r.dual_bound == doctest::Approx(1.5));
    for (double x : r.x) CHECK(x == doctest::Approx(0.5));
  }
  SUBCASE("budget row binds") {
    std::vector<PackingColumn> cols{{{0}, 1, 3}, {{1}, 1, 2}, {{2}, 0, 1}};
    const auto r = solve_packing_lp(3, cols, 1);
    CHECK(r.value == doctest::Approx(4));
    CHECK(r.x[0] == doctest::Approx(1));
    CHECK(r.x[1] == doctest::Approx(0));
  }
  SUBCASE("no columns") {
    const auto r = solve_packing_lp(2, {}, -1);
    CHECK(r.optimal);
    CHECK(r.value == 0);
  }
  SUBCASE("early stop keeps a valid bound") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 30; ++it) {
      std::vector<PackingColumn> cols;
      for (int c = 0; c < 25; ++c) {
        PackingColumn col;
        for (int row = 0; row < 10; ++row)
          if (rng() % 4 == 0) col.rows.push_back(row);
        if (col.rows.empty()) col.rows.push_back(c % 10);
        col.budget_coef = static_cast<int>(rng() % 2);
        col.weight = 1 + static_cast<double>(rng() % 5);
        cols.push_back(col);
      }
      const auto full = solve_packing_lp(10, cols, 2);
      REQUIRE(full.optimal);
      CHECK(full.dual_bound == doctest::Approx(full.value));
      for (int iters : {0, 1, 2, 3}) CHECK(solve_packing_lp(10, cols, 2, iters).dual_bound >= full.value - 1e-6);
    }
  }
}
