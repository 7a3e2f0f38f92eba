#include "kei/pool_graph.hpp"

#include <algorithm>

namespace kei {

int DirectedPoolGraph::ndd_vertex(DonorId d) const {
  auto it = std::find(ndd_donor_.begin(), ndd_donor_.end(), d);
  return it == ndd_donor_.end() ? -1 : num_pairs_ + static_cast<int>(it - ndd_donor_.begin());
}

int DirectedPoolGraph::find_edge(int u, int v) const {
  for (int e : out_[u])
    if (edges_[e].to == v) return e;
  return -1;
}

int DirectedPoolGraph::num_half_edges() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [](const PoolEdge& e) { return e.half; }));
}

DirectedPoolGraph build_pool_graph(const KeiInstance& inst, const WeightScheme& scheme, PoolOptions opts) {
  DirectedPoolGraph g;
  const int nr = static_cast<int>(inst.num_recipients());
  g.num_pairs_ = nr;
  std::vector<int> donor_vertex(inst.num_donors(), -1);
  for (int r = 0; r < nr; ++r) {
    auto d = inst.paired_donor(r);
    g.vertex_donor_.push_back(d ? *d : -1);
    if (d) donor_vertex[*d] = r;
  }
  for (std::size_t d = 0; d < inst.num_donors(); ++d) {
    if (donor_vertex[d] >= 0) continue;
    donor_vertex[d] = nr + static_cast<int>(g.ndd_donor_.size());
    g.ndd_donor_.push_back(static_cast<DonorId>(d));
    g.vertex_donor_.push_back(static_cast<DonorId>(d));
  }

  for (int v = 0; v < nr; ++v) {
    const bool protect = opts.strict_pairs && inst.own_donor_compatible(v);
    for (DonorId d : inst.compat[v]) {
      const int u = donor_vertex[d];
      if (u == v && !opts.allow_self_loops) continue;
      g.edges_.push_back({u, v, false, scheme.compatible(v, d)});
    }
    if (protect) continue;
    for (DonorId d : inst.half[v]) {
      const int u = donor_vertex[d];
      if (u == v && !opts.allow_self_loops) continue;
      auto w = scheme.half(v, d);
      if (!w) continue;
      g.edges_.push_back({u, v, true, *w});
    }
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const PoolEdge& a, const PoolEdge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });

  const int nv = g.num_vertices();
  g.out_.assign(nv, {});
  g.in_.assign(nv, {});
  for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
    g.out_[g.edges_[e].from].push_back(e);
    g.in_[g.edges_[e].to].push_back(e);
  }
  return g;
}

namespace {

struct CycleSearch {
  const DirectedPoolGraph& g;
  int max_length;
  int start = 0;
  std::vector<int> path_vertices;
  std::vector<int> path_edges;
  std::vector<char> on_path;
  std::vector<Cycle>& out;

  void extend(int v) {
    for (int e : g.out_edges(v)) {
      const int w = g.edges()[e].to;
      if (w == start && path_vertices.size() >= 2) {
        path_edges.push_back(e);
        emit();
        path_edges.pop_back();
      } else if (w > start && !g.is_ndd(w) && !on_path[w] &&
                 static_cast<int>(path_vertices.size()) < max_length) {
        on_path[w] = 1;
        path_vertices.push_back(w);
        path_edges.push_back(e);
        extend(w);
        path_edges.pop_back();
        path_vertices.pop_back();
        on_path[w] = 0;
      }
    }
  }

  void emit() {
    Cycle c;
    c.vertices = path_vertices;
    c.edges = path_edges;
    for (int e : c.edges) {
      c.weight += g.edges()[e].weight;
      c.half_edges += g.edges()[e].half ? 1 : 0;
    }
    out.push_back(std::move(c));
  }
};

}  // namespace

std::vector<Cycle> enumerate_cycles(const DirectedPoolGraph& g, int max_length) {
  std::vector<Cycle> cycles;
  if (max_length < 1) return cycles;
  CycleSearch search{g, max_length, 0, {}, {}, std::vector<char>(g.num_vertices(), 0), cycles};
  for (int s = 0; s < g.num_pairs(); ++s) {
    const int self = g.find_edge(s, s);
    if (self >= 0) {
      const auto& e = g.edges()[self];
      cycles.push_back(Cycle{{s}, {self}, e.weight, e.half ? 1 : 0});
    }
    if (max_length < 2) continue;
    search.start = s;
    search.on_path[s] = 1;
    search.path_vertices = {s};
    search.path_edges.clear();
    search.extend(s);
    search.on_path[s] = 0;
  }
  std::sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) { return a.vertices < b.vertices; });
  return cycles;
}

std::vector<std::vector<int>> compute_positions(const DirectedPoolGraph& g, int max_chain_length) {
  const int ne = static_cast<int>(g.edges().size());
  std::vector<std::vector<int>> positions(ne);
  if (max_chain_length < 1 || g.num_ndds() == 0) return positions;

  // reach[j][v]: some walk of exactly j edges runs from an NDD to v.
  // Self-loops never sit on a chain, so walks skip them.
  const int nv = g.num_vertices();
  std::vector<std::vector<char>> reach(max_chain_length, std::vector<char>(nv, 0));
  for (int v = g.num_pairs(); v < nv; ++v) reach[0][v] = 1;
  for (int j = 0; j + 1 < max_chain_length; ++j)
    for (int v = 0; v < nv; ++v)
      if (reach[j][v])
        for (int e : g.out_edges(v))
          if (g.edges()[e].to != v) reach[j + 1][g.edges()[e].to] = 1;

  for (int e = 0; e < ne; ++e) {
    const auto& edge = g.edges()[e];
    if (edge.from == edge.to) continue;
    if (g.is_ndd(edge.from)) {
      positions[e] = {1};
      continue;
    }
    for (int k = 2; k <= max_chain_length; ++k)
      if (reach[k - 1][edge.from]) positions[e].push_back(k);
  }
  return positions;
}

}  // namespace kei
