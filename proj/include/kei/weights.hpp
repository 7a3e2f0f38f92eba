#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "kei/instance.hpp"

namespace kei {

enum class SchemeKind {
  MaxTR,        // TR under coarse preferences
  MaxCoBm,      // CO with half-compatible donations forbidden
  LexCoTr,      // (CO, TR)
  LexCoNegHc,   // (CO, -HC)
  LexTrNegHc,   // (TR, -HC), equivalently (TR, CO)
  Custom,       // per-transplant utilities
};

std::string scheme_name(SchemeKind k);

/// Accepts the CLI spellings: max-tr, max-co-bm, lex-co-tr, lex-co-neg-hc,
/// lex-tr-neg-hc, custom.
SchemeKind scheme_from_name(const std::string& name);

/// Utilities for the custom scheme. Per-(recipient, donor) gains override the
/// defaults; waiting gains apply to a recipient left without a transplant and
/// may be negative.
struct CustomGains {
  Weight compatible = 1;
  Weight half = 1;
  Weight waiting = 0;
  std::map<std::pair<RecipientId, DonorId>, Weight> pair_gain;
  std::map<RecipientId, Weight> waiting_gain;
};

/// Edge weights for the exchange graph. `big` plays the role of the large
/// constant in the lexicographic encodings and must exceed the number of
/// recipients.
struct WeightScheme {
  SchemeKind kind = SchemeKind::MaxTR;
  Weight big = 1;
  CustomGains custom;

  /// Scheme with big = n + 1 for the instance's n recipients.
  static WeightScheme for_instance(SchemeKind kind, const KeiInstance& inst);
  static WeightScheme custom_scheme(CustomGains gains);

  Weight compatible(RecipientId r, DonorId d) const;
  /// Empty when half-compatible donations are forbidden.
  std::optional<Weight> half(RecipientId r, DonorId d) const;
  /// Weight of a private edge (the recipient receives nothing).
  Weight waiting(RecipientId r) const;

  /// True when every half-compatible transplant carries the same weight.
  bool uniform_half_weight() const { return kind != SchemeKind::Custom; }
};

}  // namespace kei
