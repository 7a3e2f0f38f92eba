#pragma once

// Budget sweeps over synthetic pools: for each size, alpha and replicate,
// M_h for h = 0..h_max, %Baseline and per-category match rates, written as
// CSV plus a small SVG chart.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kei/exact_solver.hpp"
#include "kei/generator.hpp"
#include "kei/weights.hpp"

namespace kei {

struct ExperimentSpec {
  std::vector<int> sizes{64};
  std::vector<double> alphas{0.2};
  int h_max = 20;
  int replicates = 10;
  int cycle_cap = 3;
  int chain_cap = 3;
  SchemeKind scheme = SchemeKind::MaxTR;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds;  // explicit replicate seeds; overrides seed/replicates
  GeneratorConfig generator;         // n_vertices, alpha and seed are set per run
  SolveLimits limits;

  /// Seeds of the replicates, in run order.
  std::vector<std::uint64_t> replicate_seeds() const;
  /// Throws std::invalid_argument on an unusable spec.
  void validate() const;
};

inline constexpr int kExperimentSpecVersion = 1;

ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const ExperimentSpec& spec);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

/// Category order used in the results: blood types O, A, B, AB, then sensitized.
inline constexpr std::array<const char*, 5> kCategories{"O", "A", "B", "AB", "sens"};

struct ResultRow {
  int size = 0;
  double alpha = 0;
  std::uint64_t seed = 0;
  int h = 0;
  std::optional<Weight> matched_weight;                // M_h
  std::optional<double> pct_baseline;                  // empty when M_0 = 0
  std::array<std::optional<double>, 5> pct_matched{};  // empty for empty categories
  int suppressants = 0;                                // half-compatible transplants used
  std::string status;                                  // optimal, feasible or error
};

/// Solves one pool for h = 0..h_max with a model built once. Rows carry the
/// given size, alpha and seed labels.
std::vector<ResultRow> sweep_instance(const KeiInstance& inst, const ExperimentSpec& spec, int size, double alpha,
                                      std::uint64_t seed);

std::string csv_header();
std::string to_csv(const ResultRow& row);

struct SummaryRow {
  int size = 0;
  double alpha = 0;
  int h = 0;
  int replicates = 0;  // replicates with a defined %Baseline
  std::optional<double> median, min, max;
};

struct CategoryRow {
  int size = 0;
  double alpha = 0;
  int h = 0;
  std::string category;
  std::optional<double> median;
};

struct Summary {
  std::vector<SummaryRow> curves;
  std::vector<CategoryRow> categories;  // at h in {0, 10, 20, 50} up to h_max
  std::vector<std::uint64_t> excluded_seeds;  // replicates with M_0 = 0 or errors
};

Summary summarize(const std::vector<ResultRow>& rows);

double median(std::vector<double> values);

void write_summary_csv(std::ostream& os, const Summary& s);
void write_categories_csv(std::ostream& os, const Summary& s);
void write_curves_svg(std::ostream& os, const Summary& s);

struct SweepOutcome {
  std::vector<ResultRow> rows;
  Summary summary;
  bool any_error = false;
};

/// Runs the sweep, appending to out_dir/results.csv as rows complete, then
/// writes summary.csv, categories.csv, curves.svg and metadata.json.
SweepOutcome run_sweep(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                       std::ostream* log = nullptr);

}  // namespace kei
