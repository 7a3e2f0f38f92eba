#pragma once

// Directed compatibility graph over pool vertices: one vertex per recipient
// (paired or single) followed by one vertex per altruistic donor (NDD). An
// edge u -> v means u's donor can give to v's recipient.

#include <vector>

#include "kei/instance.hpp"
#include "kei/weights.hpp"

namespace kei {

struct PoolEdge {
  int from = 0;
  int to = 0;
  bool half = false;
  Weight weight = 0;
};

struct PoolOptions {
  /// Drop half-compatible edges into recipients whose own donor is compatible.
  bool strict_pairs = true;
  /// Keep own-donor edges as length-one cycles.
  bool allow_self_loops = true;
};

class DirectedPoolGraph {
 public:
  int num_pairs() const { return num_pairs_; }
  int num_ndds() const { return static_cast<int>(ndd_donor_.size()); }
  int num_vertices() const { return num_pairs_ + num_ndds(); }
  bool is_ndd(int v) const { return v >= num_pairs_; }

  /// Donor of a vertex, or -1 for a single recipient.
  DonorId donor(int v) const { return vertex_donor_[v]; }
  /// Recipient of a pair vertex (the vertex index itself), -1 for NDDs.
  RecipientId recipient(int v) const { return is_ndd(v) ? -1 : v; }
  int ndd_vertex(DonorId d) const;

  const std::vector<PoolEdge>& edges() const { return edges_; }
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }
  /// Edge index of u -> v, or -1.
  int find_edge(int u, int v) const;
  int num_half_edges() const;

  friend DirectedPoolGraph build_pool_graph(const KeiInstance&, const WeightScheme&, PoolOptions);

 private:
  int num_pairs_ = 0;
  std::vector<DonorId> vertex_donor_;
  std::vector<DonorId> ndd_donor_;
  std::vector<PoolEdge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

/// Edge weights come from the scheme; schemes that forbid half-compatible
/// donations produce no half edges.
DirectedPoolGraph build_pool_graph(const KeiInstance& inst, const WeightScheme& scheme, PoolOptions opts = {});

struct Cycle {
  std::vector<int> vertices;  // starts at the smallest vertex id
  std::vector<int> edges;     // edges[i] runs vertices[i] -> vertices[i+1 mod len]
  Weight weight = 0;
  int half_edges = 0;
};

/// All simple cycles over pair vertices with at most max_length edges, each
/// once, in lexicographic order of their vertex sequence. Self-loops count as
/// length-one cycles.
std::vector<Cycle> enumerate_cycles(const DirectedPoolGraph& g, int max_length);

/// K(e) for every edge: {1} for edges leaving an NDD (when L >= 1); for a
/// pair-to-pair edge u -> v, the positions k in [2, L] such that some walk of
/// k - 1 edges leads from an NDD to u.
std::vector<std::vector<int>> compute_positions(const DirectedPoolGraph& g, int max_chain_length);

}  // namespace kei
