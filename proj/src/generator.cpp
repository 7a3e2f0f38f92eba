#include "kei/generator.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace kei {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

constexpr std::array<BloodType, 4> kBloodOrder{BloodType::O, BloodType::A, BloodType::B, BloodType::AB};

BloodType draw_blood(PortableRng& rng, const std::array<double, 4>& dist) {
  const double u = rng.uniform();
  double acc = 0;
  for (int i = 0; i < 3; ++i) {
    acc += dist[i];
    if (u < acc) return kBloodOrder[i];
  }
  return kBloodOrder[3];
}

// Keeps augmentation draws independent of the base pool's stream.
constexpr std::uint64_t kAugmentSalt = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t PortableRng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

void GeneratorConfig::validate() const {
  if (n_vertices < 0) throw std::invalid_argument("n_vertices must be non-negative");
  check_probability(ndd_fraction, "ndd_fraction");
  check_probability(sensitized_fraction, "sensitized_fraction");
  check_probability(crossmatch_pass, "crossmatch_pass");
  check_probability(crossmatch_pass_sensitized, "crossmatch_pass_sensitized");
  check_probability(alpha, "alpha");
  double sum = 0;
  for (double p : blood_type_distribution) {
    check_probability(p, "blood_type_distribution entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("blood_type_distribution must sum to 1");
}

nlohmann::ordered_json to_json(const GeneratorConfig& c) {
  nlohmann::ordered_json j;
  j["version"] = kGeneratorConfigVersion;
  j["n_vertices"] = c.n_vertices;
  j["ndd_fraction"] = c.ndd_fraction;
  j["blood_type_distribution"] = {{"O", c.blood_type_distribution[0]},
                                  {"A", c.blood_type_distribution[1]},
                                  {"B", c.blood_type_distribution[2]},
                                  {"AB", c.blood_type_distribution[3]}};
  j["sensitized_fraction"] = c.sensitized_fraction;
  j["crossmatch_pass"] = c.crossmatch_pass;
  j["crossmatch_pass_sensitized"] = c.crossmatch_pass_sensitized;
  j["alpha"] = c.alpha;
  j["seed"] = c.seed;
  j["incompatible_pairs_only"] = c.incompatible_pairs_only;
  j["augment_ndds"] = c.augment_ndds;
  j["bernoulli_augmentation"] = c.bernoulli_augmentation;
  return j;
}

GeneratorConfig generator_config_from_json(const nlohmann::json& j, GeneratorConfig c) {
  if (!j.is_object()) throw KeiError("generator config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "version") {
        if (value.get<int>() != kGeneratorConfigVersion)
          throw KeiError("unsupported generator config version " + value.dump());
      } else if (key == "n_vertices") {
        c.n_vertices = value.get<int>();
      } else if (key == "ndd_fraction") {
        c.ndd_fraction = value.get<double>();
      } else if (key == "blood_type_distribution") {
        for (const auto& [type, p] : value.items()) {
          const BloodType t = blood_type_from_string(type);
          for (int i = 0; i < 4; ++i)
            if (kBloodOrder[i] == t) c.blood_type_distribution[i] = p.get<double>();
        }
      } else if (key == "sensitized_fraction") {
        c.sensitized_fraction = value.get<double>();
      } else if (key == "crossmatch_pass") {
        c.crossmatch_pass = value.get<double>();
      } else if (key == "crossmatch_pass_sensitized") {
        c.crossmatch_pass_sensitized = value.get<double>();
      } else if (key == "alpha") {
        c.alpha = value.get<double>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "incompatible_pairs_only") {
        c.incompatible_pairs_only = value.get<bool>();
      } else if (key == "augment_ndds") {
        c.augment_ndds = value.get<bool>();
      } else if (key == "bernoulli_augmentation") {
        c.bernoulli_augmentation = value.get<bool>();
      } else {
        throw KeiError("unknown generator config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw KeiError(std::string("bad generator config: ") + e.what());
  }
  c.validate();
  return c;
}

GeneratorConfig load_generator_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw KeiError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw KeiError("cannot parse " + path.string() + ": " + e.what());
  }
  return generator_config_from_json(j);
}

KeiInstance generate(const GeneratorConfig& config) {
  config.validate();
  PortableRng rng(config.seed);
  const int n_ndd = static_cast<int>(std::llround(config.ndd_fraction * config.n_vertices));
  const int n_pairs = config.n_vertices - n_ndd;
  KeiInstance inst = KeiInstance::with_layout(n_pairs, 0, n_ndd);

  auto crossmatch = [&](RecipientId r) {
    return rng.bernoulli(inst.recipients[r].sensitized ? config.crossmatch_pass_sensitized : config.crossmatch_pass);
  };

  for (int i = 0; i < n_pairs; ++i) {
    auto& r = inst.recipients[i];
    auto& d = inst.donors[i];
    for (;;) {
      r.blood = draw_blood(rng, config.blood_type_distribution);
      r.sensitized = rng.bernoulli(config.sensitized_fraction);
      d.blood = draw_blood(rng, config.blood_type_distribution);
      const bool suits = blood_compatible(*d.blood, *r.blood) && crossmatch(i);
      if (!suits) break;
      if (!config.incompatible_pairs_only) {
        inst.add_compatible(i, i);
        break;
      }
    }
  }
  for (int k = 0; k < n_ndd; ++k) inst.donors[n_pairs + k].blood = draw_blood(rng, config.blood_type_distribution);

  for (int r = 0; r < n_pairs; ++r)
    for (std::size_t d = 0; d < inst.num_donors(); ++d) {
      if (static_cast<int>(d) == r) continue;
      if (blood_compatible(*inst.donors[d].blood, *inst.recipients[r].blood) && crossmatch(r))
        inst.add_compatible(r, static_cast<DonorId>(d));
    }
  return inst;
}

std::vector<std::pair<RecipientId, DonorId>> augmentation_candidates(const KeiInstance& inst, bool include_ndds) {
  std::vector<std::pair<RecipientId, DonorId>> out;
  for (std::size_t r = 0; r < inst.num_recipients(); ++r) {
    const auto rid = static_cast<RecipientId>(r);
    if (!inst.recipients[r].blood) throw KeiError("recipient r_" + std::to_string(r) + " has no blood type");
    const auto own = inst.paired_donor(rid);
    for (std::size_t d = 0; d < inst.num_donors(); ++d) {
      const auto did = static_cast<DonorId>(d);
      if (!inst.donors[d].blood) throw KeiError("donor d_" + std::to_string(d) + " has no blood type");
      if (own && *own == did) continue;
      if (!include_ndds && !inst.paired_recipient(did)) continue;
      if (inst.is_compatible(rid, did) || inst.is_half_compatible(rid, did)) continue;
      if (blood_compatible(*inst.donors[d].blood, *inst.recipients[r].blood)) out.emplace_back(rid, did);
    }
  }
  return out;
}

KeiInstance augment_half_edges(const KeiInstance& inst, double alpha, std::uint64_t seed, AugmentOptions opts) {
  check_probability(alpha, "alpha");
  auto candidates = augmentation_candidates(inst, opts.include_ndds);
  KeiInstance out = inst;
  PortableRng rng(seed ^ kAugmentSalt);
  if (opts.bernoulli) {
    for (const auto& [r, d] : candidates)
      if (rng.bernoulli(alpha)) out.add_half(r, d);
    return out;
  }
  const auto take = static_cast<std::size_t>(std::llround(alpha * static_cast<double>(candidates.size())));
  rng.shuffle(candidates);
  for (std::size_t i = 0; i < take; ++i) out.add_half(candidates[i].first, candidates[i].second);
  return out;
}

KeiInstance generate_pool(const GeneratorConfig& config) {
  return augment_half_edges(generate(config), config.alpha, config.seed,
                            {config.augment_ndds, config.bernoulli_augmentation});
}

}  // namespace kei
