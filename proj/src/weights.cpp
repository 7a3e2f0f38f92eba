#include "kei/weights.hpp"

namespace kei {

std::string scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::MaxTR: return "max-tr";
    case SchemeKind::MaxCoBm: return "max-co-bm";
    case SchemeKind::LexCoTr: return "lex-co-tr";
    case SchemeKind::LexCoNegHc: return "lex-co-neg-hc";
    case SchemeKind::LexTrNegHc: return "lex-tr-neg-hc";
    case SchemeKind::Custom: return "custom";
  }
  return "?";
}

SchemeKind scheme_from_name(const std::string& name) {
  for (auto k : {SchemeKind::MaxTR, SchemeKind::MaxCoBm, SchemeKind::LexCoTr, SchemeKind::LexCoNegHc,
                 SchemeKind::LexTrNegHc, SchemeKind::Custom})
    if (scheme_name(k) == name) return k;
  throw KeiError("unknown scheme '" + name + "'");
}

WeightScheme WeightScheme::for_instance(SchemeKind kind, const KeiInstance& inst) {
  WeightScheme s;
  s.kind = kind;
  s.big = static_cast<Weight>(inst.num_recipients()) + 1;
  return s;
}

WeightScheme WeightScheme::custom_scheme(CustomGains gains) {
  WeightScheme s;
  s.kind = SchemeKind::Custom;
  s.custom = std::move(gains);
  return s;
}

Weight WeightScheme::compatible(RecipientId r, DonorId d) const {
  switch (kind) {
    case SchemeKind::MaxTR:
    case SchemeKind::MaxCoBm: return 1;
    case SchemeKind::LexCoTr:
    case SchemeKind::LexCoNegHc:
    case SchemeKind::LexTrNegHc: return big;
    case SchemeKind::Custom: {
      auto it = custom.pair_gain.find({r, d});
      return it != custom.pair_gain.end() ? it->second : custom.compatible;
    }
  }
  return 0;
}

std::optional<Weight> WeightScheme::half(RecipientId r, DonorId d) const {
  switch (kind) {
    case SchemeKind::MaxTR: return 1;
    case SchemeKind::MaxCoBm: return std::nullopt;
    case SchemeKind::LexCoTr: return 1;
    case SchemeKind::LexCoNegHc: return -1;
    case SchemeKind::LexTrNegHc: return big - 1;
    case SchemeKind::Custom: {
      auto it = custom.pair_gain.find({r, d});
      return it != custom.pair_gain.end() ? it->second : custom.half;
    }
  }
  return std::nullopt;
}

Weight WeightScheme::waiting(RecipientId r) const {
  if (kind != SchemeKind::Custom) return 0;
  auto it = custom.waiting_gain.find(r);
  return it != custom.waiting_gain.end() ? it->second : custom.waiting;
}

}  // namespace kei
