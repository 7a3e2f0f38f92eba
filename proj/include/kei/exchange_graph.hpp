#pragma once

// Bipartite exchange graph: recipient-side vertices on the left, donor-side
// vertices on the right. Perfect matchings of this graph correspond one to
// one to strong-IR allocations.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kei/instance.hpp"
#include "kei/weights.hpp"

namespace kei {

enum class EdgeKind { Private, Dummy, Compatible, HalfCompatible, Gadget, GadgetLink };

std::string to_string(EdgeKind k);

enum class VertexClass {
  R0,  // dummy recipient standing in for an altruistic donor
  R1,  // recipient without a donor
  R2,  // paired recipient
  B,   // gadget slot, left side
  D0,  // dummy donor standing in for a donor-less recipient
  D1,  // altruistic donor
  D2,  // paired donor
  A,   // gadget slot, right side
};

struct GraphVertex {
  VertexClass cls;
  int ref;  // recipient id (R1, R2, D0), donor id (R0, D1, D2) or slot index (A, B)
};

struct GraphEdge {
  std::size_t left = 0;
  std::size_t right = 0;
  EdgeKind kind = EdgeKind::Private;
  Weight weight = 0;
  RecipientId recipient = -1;  // -1 when the left end is not a real recipient
  DonorId donor = -1;          // -1 when the right end is not a real donor
  int slot = -1;               // gadget slot for Gadget / GadgetLink edges
};

class ExchangeGraph {
 public:
  ExchangeGraph() = default;

  const std::vector<GraphVertex>& left() const { return left_; }
  const std::vector<GraphVertex>& right() const { return right_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  std::size_t recipient_vertex(RecipientId r) const { return static_cast<std::size_t>(r); }
  std::size_t donor_vertex(DonorId d) const { return static_cast<std::size_t>(d); }

  /// Model class of the instance the graph was built from.
  ModelClass source_class() const { return source_class_; }
  /// Number of gadget slots (zero when no gadget is present).
  int slots() const { return slots_; }
  bool has_gadget() const { return has_gadget_; }
  /// Factor applied to every scheme weight (2 once the gadget is inserted).
  Weight weight_scale() const { return weight_scale_; }

  /// Copy with every edge weight replaced.
  ExchangeGraph with_weights(std::span<const Weight> weights) const;
  /// Copy keeping only the edges for which keep(edge) is true.
  template <class Pred>
  ExchangeGraph filtered(Pred keep) const {
    ExchangeGraph g = *this;
    g.edges_.clear();
    for (const auto& e : edges_)
      if (keep(e)) g.edges_.push_back(e);
    return g;
  }

  friend ExchangeGraph build_graph(const KeiInstance& inst, const WeightScheme& scheme);
  friend ExchangeGraph add_suppressant_gadget(const ExchangeGraph& g, int h);

 private:
  std::vector<GraphVertex> left_;
  std::vector<GraphVertex> right_;
  std::vector<GraphEdge> edges_;
  ModelClass source_class_ = ModelClass::BM;
  int slots_ = 0;
  bool has_gadget_ = false;
  Weight weight_scale_ = 1;
};

/// Left vertices: recipients by id, then one dummy recipient per altruistic
/// donor. Right vertices: donors by id, then one dummy donor per donor-less
/// recipient. Half-compatible edges are omitted when the scheme forbids them.
ExchangeGraph build_graph(const KeiInstance& inst, const WeightScheme& scheme);

/// Drops every half-compatible edge of a recipient whose own donor is
/// compatible, so such a pair only takes part when she gets a compatible kidney.
ExchangeGraph restrict_compatible_pairs(const ExchangeGraph& g, const KeiInstance& inst);

/// Routes all half-compatible edges through h slots (a_k, b_k). All weights
/// are doubled first so that the split halves stay integral. Requires a
/// silver-bullet source instance and a uniform half-compatible weight.
ExchangeGraph add_suppressant_gadget(const ExchangeGraph& g, int h);

/// A matching given as edge indices into a graph.
struct Matching {
  std::vector<std::size_t> edges;
  Weight weight = 0;
};

bool is_perfect(const ExchangeGraph& g, const Matching& m);

/// Private and dummy edges mean "no transplant"; compatible and
/// half-compatible edges become assignments; in gadget graphs the recipient
/// on a_k receives from the donor on b_k. Throws KeiError unless m is perfect.
Allocation matching_to_allocation(const ExchangeGraph& g, const Matching& m, const KeiInstance& inst);

/// Graphviz dump. Edge kind is encoded as the line style: private dotted,
/// dummy dotted gray, compatible solid, half-compatible dashed.
void write_dot(std::ostream& os, const ExchangeGraph& g);

}  // namespace kei
