#pragma once

// Synthetic kidney-exchange pools: blood types, sensitization, crossmatch
// draws for compatible edges, then half-compatible augmentation among the
// remaining blood-compatible (donor, recipient) pairs.

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "json.hpp"
#include "kei/instance.hpp"

namespace kei {

/// Synthetic defaults, not derived from registry data.
struct GeneratorConfig {
  int n_vertices = 64;                                  // pairs plus NDDs
  double ndd_fraction = 0.05;
  std::array<double, 4> blood_type_distribution{0.48, 0.34, 0.14, 0.04};  // O, A, B, AB
  double sensitized_fraction = 0.2;
  double crossmatch_pass = 0.7;
  double crossmatch_pass_sensitized = 0.1;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  /// Redraw pairs whose donor already suits their recipient.
  bool incompatible_pairs_only = true;
  /// Let altruistic donors receive half-compatible edges too.
  bool augment_ndds = true;
  /// Independent Bernoulli(alpha) draws instead of an exact round(alpha * |candidates|).
  bool bernoulli_augmentation = false;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

inline constexpr int kGeneratorConfigVersion = 1;

nlohmann::ordered_json to_json(const GeneratorConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
GeneratorConfig generator_config_from_json(const nlohmann::json& j, GeneratorConfig base = {});
GeneratorConfig load_generator_config(const std::filesystem::path& path);

/// Deterministic RNG helpers that do not depend on the standard library's
/// distribution implementations.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t bits() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Base pool without half-compatible edges.
KeiInstance generate(const GeneratorConfig& config);

struct AugmentOptions {
  bool include_ndds = true;
  bool bernoulli = false;
};

/// Blood-compatible (donor, recipient) pairs that are neither compatible nor
/// half-compatible, excluding each recipient's own donor, in (recipient,
/// donor) order. Throws KeiError when a blood type is missing.
std::vector<std::pair<RecipientId, DonorId>> augmentation_candidates(const KeiInstance& inst,
                                                                     bool include_ndds = true);

KeiInstance augment_half_edges(const KeiInstance& inst, double alpha, std::uint64_t seed,
                               AugmentOptions opts = {});

/// generate() followed by augmentation with config.alpha.
KeiInstance generate_pool(const GeneratorConfig& config);

}  // namespace kei
