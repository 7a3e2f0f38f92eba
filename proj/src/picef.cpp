#include "kei/picef.hpp"

#include <algorithm>
#include <ostream>

namespace kei {

int PicefModel::y_var(int edge, int position) const {
  const auto& ks = positions[edge];
  auto it = std::find(ks.begin(), ks.end(), position);
  if (it == ks.end()) return -1;
  return y_first_[edge] + static_cast<int>(it - ks.begin());
}

PicefModel PicefModel::with_budget(int h) const {
  PicefModel m = *this;
  m.budget = h;
  for (auto& row : m.rows)
    if (row.family == RowFamily::Budget) row.rhs = std::min<int>(h, static_cast<int>(row.terms.size()));
  return m;
}

PicefModel build_model(DirectedPoolGraph graph, std::vector<Cycle> cycles, std::vector<std::vector<int>> positions,
                       int cycle_cap, int chain_cap, int budget) {
  if (budget < 0) throw std::invalid_argument("suppressant budget must be non-negative");
  PicefModel m;
  m.graph = std::move(graph);
  m.cycles = std::move(cycles);
  m.positions = std::move(positions);
  m.cycle_cap = cycle_cap;
  m.chain_cap = chain_cap;
  m.budget = budget;

  const auto& g = m.graph;
  const int ne = static_cast<int>(g.edges().size());
  if (static_cast<int>(m.positions.size()) != ne) throw std::invalid_argument("positions do not match edges");

  m.y_first_.assign(ne, 0);
  for (int e = 0; e < ne; ++e) {
    m.y_first_[e] = static_cast<int>(m.chain_vars.size());
    for (int k : m.positions[e]) {
      m.chain_vars.push_back({e, k});
      m.var_names.push_back("y_e" + std::to_string(e) + "_k" + std::to_string(k));
    }
  }
  for (std::size_t c = 0; c < m.cycles.size(); ++c) m.var_names.push_back("z_c" + std::to_string(c));
  for (int e = 0; e < ne; ++e) m.var_names.push_back("u_e" + std::to_string(e));
  m.objective.assign(m.var_names.size(), 0);
  for (int e = 0; e < ne; ++e) m.objective[m.u_var(e)] = g.edges()[e].weight;

  std::vector<std::vector<int>> cycles_at_vertex(g.num_vertices()), cycles_at_edge(ne);
  for (int c = 0; c < static_cast<int>(m.cycles.size()); ++c) {
    for (int v : m.cycles[c].vertices) cycles_at_vertex[v].push_back(c);
    for (int e : m.cycles[c].edges) cycles_at_edge[e].push_back(c);
  }

  for (int i = 0; i < g.num_pairs(); ++i) {
    Row row{RowFamily::PairCapacity, "pair_cap_" + std::to_string(i), {}, RowSense::LessEqual, 1};
    for (int e : g.in_edges(i))
      for (int k : m.positions[e]) row.terms.push_back({m.y_var(e, k), 1});
    for (int c : cycles_at_vertex[i]) row.terms.push_back({m.z_var(c), 1});
    if (!row.terms.empty()) m.rows.push_back(std::move(row));
  }
  for (int i = 0; i < g.num_pairs(); ++i) {
    for (int k = 1; k < chain_cap; ++k) {
      Row row{RowFamily::ChainFlow, "chain_flow_" + std::to_string(i) + "_" + std::to_string(k), {},
              RowSense::GreaterEqual, 0};
      bool has_out = false;
      for (int e : g.in_edges(i))
        if (int y = m.y_var(e, k); y >= 0) row.terms.push_back({y, 1});
      for (int e : g.out_edges(i))
        if (int y = m.y_var(e, k + 1); y >= 0) {
          row.terms.push_back({y, -1});
          has_out = true;
        }
      if (has_out) m.rows.push_back(std::move(row));
    }
  }
  for (int i = g.num_pairs(); i < g.num_vertices(); ++i) {
    Row row{RowFamily::NddCapacity, "ndd_cap_" + std::to_string(i), {}, RowSense::LessEqual, 1};
    for (int e : g.out_edges(i))
      if (int y = m.y_var(e, 1); y >= 0) row.terms.push_back({y, 1});
    if (!row.terms.empty()) m.rows.push_back(std::move(row));
  }
  for (int e = 0; e < ne; ++e) {
    Row row{RowFamily::EdgeUse, "edge_use_" + std::to_string(e), {}, RowSense::Equal, 0};
    row.terms.push_back({m.u_var(e), 1});
    for (int k : m.positions[e]) row.terms.push_back({m.y_var(e, k), -1});
    for (int c : cycles_at_edge[e]) row.terms.push_back({m.z_var(c), -1});
    m.rows.push_back(std::move(row));
  }
  Row budget_row{RowFamily::Budget, "budget", {}, RowSense::LessEqual, 0};
  for (int e = 0; e < ne; ++e)
    if (g.edges()[e].half) budget_row.terms.push_back({m.u_var(e), 1});
  if (!budget_row.terms.empty()) {
    budget_row.rhs = std::min<int>(budget, static_cast<int>(budget_row.terms.size()));
    m.rows.push_back(std::move(budget_row));
  }
  return m;
}

PicefModel build_model(const KeiInstance& inst, const WeightScheme& scheme, int cycle_cap, int chain_cap, int budget,
                       PoolOptions opts) {
  DirectedPoolGraph g = build_pool_graph(inst, scheme, opts);
  auto cycles = enumerate_cycles(g, cycle_cap);
  auto positions = compute_positions(g, chain_cap);
  return build_model(std::move(g), std::move(cycles), std::move(positions), cycle_cap, chain_cap, budget);
}

std::optional<std::string> violated_row(const PicefModel& model, const std::vector<char>& assignment) {
  if (static_cast<int>(assignment.size()) != model.num_vars()) return std::string("assignment size");
  for (int v = 0; v < model.num_vars(); ++v)
    if (assignment[v] != 0 && assignment[v] != 1) return "binary:" + model.var_names[v];
  for (const auto& row : model.rows) {
    long long activity = 0;
    for (const auto& t : row.terms) activity += static_cast<long long>(t.coef) * assignment[t.var];
    const bool ok = row.sense == RowSense::LessEqual      ? activity <= row.rhs
                    : row.sense == RowSense::GreaterEqual ? activity >= row.rhs
                                                          : activity == row.rhs;
    if (!ok) return row.name;
  }
  return std::nullopt;
}

Weight evaluate(const PicefModel& model, const std::vector<char>& assignment) {
  Weight total = 0;
  for (int v = 0; v < model.num_vars(); ++v)
    if (assignment[v]) total += model.objective[v];
  return total;
}

IlpSolution extract_solution(const PicefModel& model, const std::vector<char>& assignment) {
  if (auto row = violated_row(model, assignment)) throw KeiError("assignment violates row " + *row);
  const auto& g = model.graph;
  IlpSolution sol;
  for (int c = 0; c < static_cast<int>(model.cycles.size()); ++c)
    if (assignment[model.z_var(c)]) sol.cycles.push_back(c);
  for (int ndd = g.num_pairs(); ndd < g.num_vertices(); ++ndd) {
    int current = -1;
    for (int e : g.out_edges(ndd))
      if (int y = model.y_var(e, 1); y >= 0 && assignment[y]) current = e;
    if (current < 0) continue;
    Chain chain{ndd, {current}};
    for (int k = 2; k <= model.chain_cap; ++k) {
      int next = -1;
      for (int e : g.out_edges(g.edges()[current].to))
        if (int y = model.y_var(e, k); y >= 0 && assignment[y]) next = e;
      if (next < 0) break;
      chain.edges.push_back(next);
      current = next;
    }
    sol.chains.push_back(std::move(chain));
  }
  for (int e = 0; e < static_cast<int>(g.edges().size()); ++e)
    if (assignment[model.u_var(e)] && g.edges()[e].half) ++sol.suppressants;
  sol.objective = evaluate(model, assignment);
  return sol;
}

Allocation solution_allocation(const PicefModel& model, const IlpSolution& sol, const KeiInstance& inst) {
  const auto& g = model.graph;
  std::map<RecipientId, DonorId> assignment;
  auto take = [&](int e) {
    const auto& edge = g.edges()[e];
    assignment[g.recipient(edge.to)] = g.donor(edge.from);
  };
  for (int c : sol.cycles)
    for (int e : model.cycles[c].edges) take(e);
  for (const auto& chain : sol.chains)
    for (int e : chain.edges) take(e);
  return make_allocation(inst, std::move(assignment));
}

void write_lp(std::ostream& os, const PicefModel& model) {
  // LP readers cap line length, so long expressions wrap every few terms.
  auto expression = [&](const std::vector<Term>& terms) {
    int on_line = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (on_line == 8) {
        os << "\n   ";
        on_line = 0;
      }
      const long long c = terms[i].coef;
      if (i > 0 || c < 0) os << (c < 0 ? " - " : " + ");
      else os << ' ';
      os << (c < 0 ? -c : c) << ' ' << model.var_names[terms[i].var];
      ++on_line;
    }
  };
  os << "\\ position-indexed cycle/chain model, cycle cap " << model.cycle_cap << ", chain cap " << model.chain_cap
     << "\nMaximize\n obj:";
  std::vector<Term> obj;
  for (int v = 0; v < model.num_vars(); ++v)
    if (model.objective[v] != 0) obj.push_back({v, static_cast<int>(model.objective[v])});
  if (obj.empty() && model.num_vars() > 0) obj.push_back({0, 0});
  expression(obj);
  os << "\nSubject To\n";
  for (const auto& row : model.rows) {
    os << ' ' << row.name << ':';
    expression(row.terms);
    os << (row.sense == RowSense::LessEqual ? " <= " : row.sense == RowSense::GreaterEqual ? " >= " : " = ")
       << row.rhs << '\n';
  }
  os << "Binaries\n";
  for (const auto& name : model.var_names) os << ' ' << name << '\n';
  os << "End\n";
}

}  // namespace kei
