#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "kei/picef.hpp"
#include "kei/pool_graph.hpp"

using namespace kei;

namespace {

WeightScheme unit(const KeiInstance& inst) { return WeightScheme::for_instance(SchemeKind::MaxTR, inst); }

// Simple cycles by brute force over vertex sequences that start at their
// smallest vertex.
std::set<std::vector<int>> brute_cycles(const DirectedPoolGraph& g, int max_len) {
  std::set<std::vector<int>> out;
  std::vector<int> path;
  std::function<void()> rec = [&] {
    const int len = static_cast<int>(path.size());
    if (len >= 1 && g.find_edge(path.back(), path.front()) >= 0 && (len >= 2 || path[0] == path.back()))
      out.insert(path);
    if (len == max_len) return;
    for (int v = path.front() + 1; v < g.num_pairs(); ++v) {
      if (std::find(path.begin(), path.end(), v) != path.end()) continue;
      if (g.find_edge(path.back(), v) < 0) continue;
      path.push_back(v);
      rec();
      path.pop_back();
    }
  };
  for (int s = 0; s < g.num_pairs(); ++s) {
    path = {s};
    rec();
  }
  return out;
}

// Walks from NDDs, enumerated edge by edge.
std::vector<std::set<int>> brute_positions(const DirectedPoolGraph& g, int L) {
  std::vector<std::set<int>> out(g.edges().size());
  std::function<void(int, int)> walk = [&](int v, int k) {
    if (k > L) return;
    for (int e : g.out_edges(v)) {
      const auto& edge = g.edges()[e];
      if (edge.from == edge.to) continue;
      out[e].insert(k);
      walk(edge.to, k + 1);
    }
  };
  for (int n = g.num_pairs(); n < g.num_vertices(); ++n) walk(n, 1);
  return out;
}

}  // namespace

TEST_CASE("pool graph of the exchange cycle") {
  const KeiInstance inst = test::three_cycle();
  const DirectedPoolGraph g = build_pool_graph(inst, unit(inst));
  CHECK(g.num_pairs() == 3);
  CHECK(g.num_ndds() == 0);
  REQUIRE(g.edges().size() == 3);
  CHECK(g.find_edge(1, 0) >= 0);
  CHECK_FALSE(g.edges()[g.find_edge(1, 0)].half);
  CHECK(g.edges()[g.find_edge(2, 1)].half);
  CHECK(g.edges()[g.find_edge(0, 2)].half);
  CHECK(g.num_half_edges() == 2);

  const auto three = enumerate_cycles(g, 3);
  REQUIRE(three.size() == 1);
  CHECK(three[0].vertices == std::vector<int>{0, 2, 1});
  CHECK(three[0].half_edges == 2);
  CHECK(enumerate_cycles(g, 2).empty());
}

TEST_CASE("pool graph vertices and options") {
  const KeiInstance inst = test::mixed_pool();
  const DirectedPoolGraph g = build_pool_graph(inst, unit(inst));
  CHECK(g.num_pairs() == 4);
  CHECK(g.num_ndds() == 1);
  CHECK(g.donor(0) == -1);
  CHECK(g.donor(1) == 0);
  CHECK(g.donor(4) == 3);
  CHECK(g.ndd_vertex(3) == 4);
  CHECK(g.recipient(4) == -1);
  CHECK(g.out_edges(0).empty());
  // Own half-compatible donor of r1 is a self-loop.
  CHECK(g.find_edge(1, 1) >= 0);
  const DirectedPoolGraph no_loops = build_pool_graph(inst, unit(inst), {true, false});
  CHECK(no_loops.find_edge(1, 1) < 0);

  KeiInstance altruists = KeiInstance::with_layout(0, 0, 2);
  const DirectedPoolGraph ag = build_pool_graph(altruists, unit(altruists));
  CHECK(ag.num_ndds() == 2);
  CHECK(enumerate_cycles(ag, 3).empty());

  KeiInstance bm = KeiInstance::with_layout(3, 0, 1);
  bm.add_compatible(0, 1);
  bm.add_compatible(1, 3);
  for (const auto& e : build_pool_graph(bm, unit(bm)).edges()) CHECK_FALSE(e.half);

  KeiInstance own = KeiInstance::with_layout(2, 0, 0);
  own.add_compatible(0, 0);
  own.add_half(0, 1);
  CHECK(build_pool_graph(own, unit(own)).find_edge(1, 0) < 0);
  CHECK(build_pool_graph(own, unit(own), {false, true}).find_edge(1, 0) >= 0);
}

TEST_CASE("property: cycle enumeration matches brute force") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 150; ++it) {
    test::RandomShape shape;
    shape.max_pairs = 8;
    shape.max_singles = 2;
    shape.p_compat = 0.25;
    shape.p_half = 0.2;
    const KeiInstance inst = test::random_instance(rng, shape);
    const DirectedPoolGraph g = build_pool_graph(inst, unit(inst));
    for (int D : {1, 2, 3, 4}) {
      const auto cycles = enumerate_cycles(g, D);
      std::set<std::vector<int>> got;
      for (const auto& c : cycles) {
        got.insert(c.vertices);
        CHECK(c.edges.size() == c.vertices.size());
        for (std::size_t i = 0; i < c.edges.size(); ++i) {
          CHECK(g.edges()[c.edges[i]].from == c.vertices[i]);
          CHECK(g.edges()[c.edges[i]].to == c.vertices[(i + 1) % c.vertices.size()]);
        }
      }
      CHECK(got.size() == cycles.size());
      CHECK(got == brute_cycles(g, D));
    }
  }
}

TEST_CASE("chain positions") {
  // NDD n reaches p0; p0 and p1 form a two-cycle; p2 is idle.
  KeiInstance inst = KeiInstance::with_layout(3, 0, 1);
  inst.add_compatible(0, 3);
  inst.add_compatible(1, 0);
  inst.add_compatible(0, 1);
  DirectedPoolGraph g = build_pool_graph(inst, unit(inst));
  auto pos = compute_positions(g, 3);
  const int n = g.ndd_vertex(3);
  CHECK(pos[g.find_edge(n, 0)] == std::vector<int>{1});
  CHECK(pos[g.find_edge(0, 1)] == std::vector<int>{2});
  CHECK(pos[g.find_edge(1, 0)] == std::vector<int>{3});

  inst.add_compatible(1, 3);
  g = build_pool_graph(inst, unit(inst));
  pos = compute_positions(g, 3);
  CHECK(pos[g.find_edge(1, 0)] == std::vector<int>{2, 3});
  CHECK(pos[g.find_edge(0, 1)] == std::vector<int>{2, 3});

  for (const auto& k : compute_positions(g, 0)) CHECK(k.empty());
}

TEST_CASE("property: positions match walk enumeration") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 150; ++it) {
    test::RandomShape shape;
    shape.max_pairs = 6;
    shape.max_altruists = 2;
    const KeiInstance inst = test::random_instance(rng, shape);
    const DirectedPoolGraph g = build_pool_graph(inst, unit(inst));
    for (int L : {1, 2, 3, 4}) {
      const auto pos = compute_positions(g, L);
      const auto brute = brute_positions(g, L);
      for (std::size_t e = 0; e < pos.size(); ++e)
        CHECK(std::set<int>(pos[e].begin(), pos[e].end()) == brute[e]);
    }
  }
}

TEST_CASE("model of the exchange cycle") {
  const KeiInstance inst = test::three_cycle();
  const PicefModel m = build_model(inst, unit(inst), 3, 0, 2);
  CHECK(m.cycles.size() == 1);
  CHECK(m.chain_vars.empty());
  CHECK(m.num_vars() == 4);
  const Row* budget = nullptr;
  for (const auto& r : m.rows)
    if (r.family == RowFamily::Budget) budget = &r;
  REQUIRE(budget);
  CHECK(budget->terms.size() == 2);
  CHECK(budget->rhs == 2);
  CHECK(m.with_budget(0).rows.back().rhs == 0);
  CHECK(m.with_budget(0).objective == m.objective);

  SUBCASE("decoding") {
    std::vector<char> zero(m.num_vars(), 0);
    const IlpSolution empty = extract_solution(m, zero);
    CHECK(empty.cycles.empty());
    CHECK(solution_allocation(m, empty, inst) == Allocation{});

    std::vector<char> x(m.num_vars(), 0);
    x[m.z_var(0)] = 1;
    for (int e = 0; e < 3; ++e) x[m.u_var(e)] = 1;
    const IlpSolution sol = extract_solution(m, x);
    CHECK(sol.objective == 3);
    CHECK(sol.suppressants == 2);
    const Allocation a = solution_allocation(m, sol, inst);
    CHECK(stats(inst, a) == AllocationStats{1, 2, 3});

    CHECK_THROWS_WITH_AS(extract_solution(m.with_budget(1), x), doctest::Contains("budget"), KeiError);
    x[m.u_var(0)] = 0;
    CHECK_THROWS_WITH_AS(extract_solution(m, x), doctest::Contains("edge_use"), KeiError);
  }
}

TEST_CASE("models without structure") {
  const KeiInstance inst = KeiInstance::with_layout(3, 1, 0);
  const PicefModel m = build_model(inst, unit(inst), 3, 3, kUnlimitedBudget);
  CHECK(m.num_vars() == 0);
  CHECK(evaluate(m, {}) == 0);
}

TEST_CASE("chains decode in order") {
  // Altruist d2 -> r0, then d0 -> r1.
  KeiInstance inst = KeiInstance::with_layout(2, 0, 1);
  inst.add_compatible(0, 2);
  inst.add_compatible(1, 0);
  const PicefModel m = build_model(inst, unit(inst), 3, 3, kUnlimitedBudget);
  const auto& g = m.graph;
  const int first = g.find_edge(g.ndd_vertex(2), 0);
  const int second = g.find_edge(0, 1);
  std::vector<char> x(m.num_vars(), 0);
  x[m.y_var(first, 1)] = 1;
  x[m.y_var(second, 2)] = 1;
  x[m.u_var(first)] = 1;
  x[m.u_var(second)] = 1;
  const IlpSolution sol = extract_solution(m, x);
  REQUIRE(sol.chains.size() == 1);
  CHECK(sol.chains[0].ndd == g.ndd_vertex(2));
  CHECK(sol.chains[0].edges == std::vector<int>{first, second});
  CHECK(solution_allocation(m, sol, inst).assignment == std::map<RecipientId, DonorId>{{0, 2}, {1, 0}});

  // Position 2 without position 1 breaks the flow row.
  x[m.y_var(first, 1)] = 0;
  x[m.u_var(first)] = 0;
  CHECK_THROWS_WITH_AS(extract_solution(m, x), doctest::Contains("chain_flow"), KeiError);
}

TEST_CASE("lp export") {
  const KeiInstance inst = test::mixed_pool();
  const PicefModel m = build_model(inst, WeightScheme::for_instance(SchemeKind::LexCoNegHc, inst), 3, 3, 1);
  std::ostringstream os;
  write_lp(os, m);
  const std::string s = os.str();
  CHECK(s.find("Maximize") != std::string::npos);
  CHECK(s.find("Subject To") != std::string::npos);
  CHECK(s.find(" budget:") != std::string::npos);
  CHECK(s.find("Binaries") != std::string::npos);
  CHECK(s.rfind("End\n") == s.size() - 4);
  CHECK(s.find(" - 1 u_e") != std::string::npos);
  std::istringstream lines(s);
  for (std::string line; std::getline(lines, line);) CHECK(line.size() < 255);
  for (const auto& name : m.var_names) CHECK(s.find(" " + name + "\n") != std::string::npos);
}
