#include "kei/exchange_graph.hpp"

#include <map>
#include <ostream>

namespace kei {

std::string to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Private: return "private";
    case EdgeKind::Dummy: return "dummy";
    case EdgeKind::Compatible: return "compatible";
    case EdgeKind::HalfCompatible: return "half-compatible";
    case EdgeKind::Gadget: return "gadget";
    case EdgeKind::GadgetLink: return "gadget-link";
  }
  return "?";
}

ExchangeGraph ExchangeGraph::with_weights(std::span<const Weight> weights) const {
  if (weights.size() != edges_.size()) throw std::invalid_argument("weight vector size mismatch");
  ExchangeGraph g = *this;
  for (std::size_t i = 0; i < weights.size(); ++i) g.edges_[i].weight = weights[i];
  return g;
}

ExchangeGraph build_graph(const KeiInstance& inst, const WeightScheme& scheme) {
  ExchangeGraph g;
  g.source_class_ = model_class(inst);
  const int nr = static_cast<int>(inst.num_recipients());
  const int nd = static_cast<int>(inst.num_donors());

  for (int r = 0; r < nr; ++r)
    g.left_.push_back({inst.paired_donor(r) ? VertexClass::R2 : VertexClass::R1, r});
  std::vector<DonorId> altruists;
  for (int d = 0; d < nd; ++d) {
    const bool altruistic = !inst.paired_recipient(d).has_value();
    g.right_.push_back({altruistic ? VertexClass::D1 : VertexClass::D2, d});
    if (altruistic) altruists.push_back(d);
  }
  for (DonorId d : altruists) g.left_.push_back({VertexClass::R0, d});
  std::map<RecipientId, std::size_t> dummy_donor;
  for (int r = 0; r < nr; ++r) {
    if (inst.paired_donor(r)) continue;
    dummy_donor[r] = g.right_.size();
    g.right_.push_back({VertexClass::D0, r});
  }

  for (int r = 0; r < nr; ++r) {
    const auto own = inst.paired_donor(r);
    const std::size_t priv = own ? static_cast<std::size_t>(*own) : dummy_donor.at(r);
    g.edges_.push_back({static_cast<std::size_t>(r), priv, EdgeKind::Private, scheme.waiting(r), r,
                        own ? *own : -1, -1});
    for (DonorId d : inst.compat[r])
      g.edges_.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(d), EdgeKind::Compatible,
                          scheme.compatible(r, d), r, d, -1});
    for (DonorId d : inst.half[r]) {
      auto w = scheme.half(r, d);
      if (!w) continue;
      g.edges_.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(d), EdgeKind::HalfCompatible, *w,
                          r, d, -1});
    }
  }
  for (std::size_t k = 0; k < altruists.size(); ++k) {
    const std::size_t row = static_cast<std::size_t>(nr) + k;
    for (std::size_t col = 0; col < g.right_.size(); ++col) {
      const bool own = static_cast<int>(col) == altruists[k];
      const DonorId donor = col < static_cast<std::size_t>(nd) ? static_cast<DonorId>(col) : -1;
      g.edges_.push_back({row, col, own ? EdgeKind::Private : EdgeKind::Dummy, 0, -1, donor, -1});
    }
  }
  return g;
}

ExchangeGraph restrict_compatible_pairs(const ExchangeGraph& g, const KeiInstance& inst) {
  return g.filtered([&](const GraphEdge& e) {
    return !(e.kind == EdgeKind::HalfCompatible && inst.own_donor_compatible(e.recipient));
  });
}

ExchangeGraph add_suppressant_gadget(const ExchangeGraph& g, int h) {
  if (h < 0) throw std::invalid_argument("suppressant budget must be non-negative");
  if (g.has_gadget_) throw KeiError("graph already carries a suppressant gadget");
  if (g.source_class_ == ModelClass::GM)
    throw ModelClassError("suppressant gadget requires a silver-bullet instance (got GM)");

  std::optional<Weight> half_weight;
  std::vector<char> recipient_has_half(g.left_.size(), 0), donor_has_half(g.right_.size(), 0);
  for (const auto& e : g.edges_) {
    if (e.kind != EdgeKind::HalfCompatible) continue;
    if (half_weight && *half_weight != e.weight)
      throw KeiError("suppressant gadget needs a uniform half-compatible weight");
    half_weight = e.weight;
    recipient_has_half[e.left] = 1;
    donor_has_half[e.right] = 1;
  }

  ExchangeGraph out;
  out.source_class_ = g.source_class_;
  out.left_ = g.left_;
  out.right_ = g.right_;
  out.slots_ = h;
  out.has_gadget_ = true;
  out.weight_scale_ = g.weight_scale_ * 2;
  for (const auto& e : g.edges_) {
    if (e.kind == EdgeKind::HalfCompatible) continue;
    GraphEdge copy = e;
    copy.weight *= 2;
    out.edges_.push_back(copy);
  }
  const std::size_t first_b = out.left_.size();
  const std::size_t first_a = out.right_.size();
  for (int k = 0; k < h; ++k) out.left_.push_back({VertexClass::B, k});
  for (int k = 0; k < h; ++k) out.right_.push_back({VertexClass::A, k});
  if (half_weight) {
    for (std::size_t l = 0; l < recipient_has_half.size(); ++l) {
      if (!recipient_has_half[l]) continue;
      for (int k = 0; k < h; ++k)
        out.edges_.push_back({l, first_a + k, EdgeKind::Gadget, *half_weight, static_cast<RecipientId>(l), -1, k});
    }
    for (std::size_t r = 0; r < donor_has_half.size(); ++r) {
      if (!donor_has_half[r]) continue;
      for (int k = 0; k < h; ++k)
        out.edges_.push_back({first_b + k, r, EdgeKind::Gadget, *half_weight, -1, static_cast<DonorId>(r), k});
    }
  }
  for (int k = 0; k < h; ++k)
    out.edges_.push_back({first_b + k, first_a + k, EdgeKind::GadgetLink, 0, -1, -1, k});
  return out;
}

bool is_perfect(const ExchangeGraph& g, const Matching& m) {
  if (g.left().size() != g.right().size() || m.edges.size() != g.left().size()) return false;
  std::vector<char> l(g.left().size(), 0), r(g.right().size(), 0);
  for (std::size_t idx : m.edges) {
    if (idx >= g.edges().size()) return false;
    const auto& e = g.edges()[idx];
    if (l[e.left]++ || r[e.right]++) return false;
  }
  return true;
}

Allocation matching_to_allocation(const ExchangeGraph& g, const Matching& m, const KeiInstance& inst) {
  if (!is_perfect(g, m)) throw KeiError("matching is not perfect");
  std::map<RecipientId, DonorId> assignment;
  std::map<int, RecipientId> slot_recipient;
  std::map<int, DonorId> slot_donor;
  for (std::size_t idx : m.edges) {
    const auto& e = g.edges()[idx];
    switch (e.kind) {
      case EdgeKind::Compatible:
      case EdgeKind::HalfCompatible: assignment[e.recipient] = e.donor; break;
      case EdgeKind::Gadget:
        if (e.recipient >= 0)
          slot_recipient[e.slot] = e.recipient;
        else
          slot_donor[e.slot] = e.donor;
        break;
      default: break;
    }
  }
  for (const auto& [slot, r] : slot_recipient) {
    auto it = slot_donor.find(slot);
    if (it == slot_donor.end()) throw KeiError("gadget slot " + std::to_string(slot) + " has no donor");
    assignment[r] = it->second;
  }
  return make_allocation(inst, std::move(assignment));
}

namespace {

std::string vertex_label(const GraphVertex& v) {
  switch (v.cls) {
    case VertexClass::R0: return "r0(d_" + std::to_string(v.ref) + ")";
    case VertexClass::R1:
    case VertexClass::R2: return "r_" + std::to_string(v.ref);
    case VertexClass::B: return "b_" + std::to_string(v.ref);
    case VertexClass::D0: return "d0(r_" + std::to_string(v.ref) + ")";
    case VertexClass::D1:
    case VertexClass::D2: return "d_" + std::to_string(v.ref);
    case VertexClass::A: return "a_" + std::to_string(v.ref);
  }
  return "?";
}

const char* edge_style(EdgeKind k) {
  switch (k) {
    case EdgeKind::Private: return "style=dotted";
    case EdgeKind::Dummy: return "style=dotted,color=gray";
    case EdgeKind::Compatible: return "style=solid";
    case EdgeKind::HalfCompatible: return "style=dashed";
    case EdgeKind::Gadget: return "style=dashed,color=gray";
    case EdgeKind::GadgetLink: return "style=bold,color=gray";
  }
  return "";
}

}  // namespace

void write_dot(std::ostream& os, const ExchangeGraph& g) {
  os << "graph exchange {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < g.left().size(); ++i)
    os << "  l" << i << " [label=\"" << vertex_label(g.left()[i]) << "\"];\n";
  for (std::size_t j = 0; j < g.right().size(); ++j)
    os << "  r" << j << " [label=\"" << vertex_label(g.right()[j]) << "\"];\n";
  for (const auto& e : g.edges())
    os << "  l" << e.left << " -- r" << e.right << " [" << edge_style(e.kind) << ",label=\"" << e.weight
       << "\"];\n";
  os << "}\n";
}

}  // namespace kei
