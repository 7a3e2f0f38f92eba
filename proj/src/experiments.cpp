#include "kei/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "kei/picef.hpp"

namespace kei {

std::vector<std::uint64_t> ExperimentSpec::replicate_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out;
  for (int i = 0; i < replicates; ++i) out.push_back(seed + static_cast<std::uint64_t>(i));
  return out;
}

void ExperimentSpec::validate() const {
  if (sizes.empty() || alphas.empty()) throw std::invalid_argument("sizes and alphas must be non-empty");
  for (int n : sizes)
    if (n < 0) throw std::invalid_argument("sizes must be non-negative");
  for (double a : alphas)
    if (!(a >= 0 && a <= 1)) throw std::invalid_argument("alphas must lie in [0, 1]");
  if (h_max < 0) throw std::invalid_argument("h_max must be non-negative");
  if (seeds.empty() && replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  if (cycle_cap < 0 || chain_cap < 0) throw std::invalid_argument("caps must be non-negative");
  generator.validate();
}

ExperimentSpec experiment_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw KeiError("experiment spec must be a JSON object");
  ExperimentSpec s;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "version") {
        if (value.get<int>() != kExperimentSpecVersion) throw KeiError("unsupported experiment spec version");
      } else if (key == "sizes") {
        s.sizes = value.get<std::vector<int>>();
      } else if (key == "alphas") {
        s.alphas = value.get<std::vector<double>>();
      } else if (key == "h_max") {
        s.h_max = value.get<int>();
      } else if (key == "replicates") {
        s.replicates = value.get<int>();
      } else if (key == "cycle_cap") {
        s.cycle_cap = value.get<int>();
      } else if (key == "chain_cap") {
        s.chain_cap = value.get<int>();
      } else if (key == "scheme") {
        s.scheme = scheme_from_name(value.get<std::string>());
      } else if (key == "seed") {
        s.seed = value.get<std::uint64_t>();
      } else if (key == "seeds") {
        s.seeds = value.get<std::vector<std::uint64_t>>();
      } else if (key == "generator") {
        s.generator = generator_config_from_json(value);
      } else if (key == "time_limit") {
        s.limits.time_limit_seconds = value.get<double>();
      } else if (key == "node_limit") {
        s.limits.node_limit = value.get<std::int64_t>();
      } else {
        throw KeiError("unknown experiment spec key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw KeiError(std::string("bad experiment spec: ") + e.what());
  }
  if (s.scheme == SchemeKind::Custom) throw KeiError("sweeps support the built-in schemes only");
  s.validate();
  return s;
}

nlohmann::ordered_json to_json(const ExperimentSpec& s) {
  nlohmann::ordered_json j;
  j["version"] = kExperimentSpecVersion;
  j["sizes"] = s.sizes;
  j["alphas"] = s.alphas;
  j["h_max"] = s.h_max;
  j["replicates"] = s.replicate_seeds().size();
  j["cycle_cap"] = s.cycle_cap;
  j["chain_cap"] = s.chain_cap;
  j["scheme"] = scheme_name(s.scheme);
  j["seeds"] = s.replicate_seeds();
  j["generator"] = to_json(s.generator);
  if (s.limits.time_limit_seconds) j["time_limit"] = *s.limits.time_limit_seconds;
  if (s.limits.node_limit) j["node_limit"] = *s.limits.node_limit;
  return j;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw KeiError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw KeiError("cannot parse " + path.string() + ": " + e.what());
  }
  return experiment_spec_from_json(j);
}

namespace {

int category_of(BloodType t) {
  switch (t) {
    case BloodType::O: return 0;
    case BloodType::A: return 1;
    case BloodType::B: return 2;
    case BloodType::AB: return 3;
  }
  return 0;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? fmt("%.4f", *v) : "NA"; }

}  // namespace

std::vector<ResultRow> sweep_instance(const KeiInstance& inst, const ExperimentSpec& spec, int size, double alpha,
                                      std::uint64_t seed) {
  std::vector<ResultRow> rows;
  auto label = [&](int h) {
    ResultRow r;
    r.size = size;
    r.alpha = alpha;
    r.seed = seed;
    r.h = h;
    return r;
  };
  std::array<int, 5> totals{};
  for (const auto& rec : inst.recipients) {
    if (rec.blood) ++totals[category_of(*rec.blood)];
    if (rec.sensitized) ++totals[4];
  }

  const PicefModel base = build_model(inst, WeightScheme::for_instance(spec.scheme, inst), spec.cycle_cap,
                                      spec.chain_cap, kUnlimitedBudget);
  for (int h = 0; h <= spec.h_max; ++h) {
    ResultRow row = label(h);
    const PicefModel model = base.with_budget(h);
    const SolveReport rep = solve_exact(model, spec.limits);
    const IlpSolution sol = extract_solution(model, rep.assignment);
    const Allocation alloc = solution_allocation(model, sol, inst);
    row.matched_weight = rep.objective;
    row.suppressants = sol.suppressants;
    row.status = to_string(rep.status);
    std::array<int, 5> matched{};
    for (const auto& [r, d] : alloc.assignment) {
      const auto& rec = inst.recipients[r];
      if (rec.blood) ++matched[category_of(*rec.blood)];
      if (rec.sensitized) ++matched[4];
    }
    for (int c = 0; c < 5; ++c)
      if (totals[c] > 0) row.pct_matched[c] = 100.0 * matched[c] / totals[c];
    rows.push_back(row);
  }
  const Weight m0 = *rows.front().matched_weight;
  if (m0 != 0)
    for (auto& row : rows) row.pct_baseline = 100.0 * static_cast<double>(*row.matched_weight - m0) / m0;
  return rows;
}

std::string csv_header() {
  return "size,alpha,seed,h,M_h,pct_baseline,pct_matched_O,pct_matched_A,pct_matched_B,pct_matched_AB,"
         "pct_matched_sens,status";
}

std::string to_csv(const ResultRow& r) {
  std::string s = std::to_string(r.size) + "," + fmt("%g", r.alpha) + "," + std::to_string(r.seed) + "," +
                  std::to_string(r.h) + "," + (r.matched_weight ? std::to_string(*r.matched_weight) : "NA") + "," +
                  opt(r.pct_baseline);
  for (const auto& p : r.pct_matched) s += "," + opt(p);
  return s + "," + r.status;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

Summary summarize(const std::vector<ResultRow>& rows) {
  Summary s;
  // Replicates without a usable baseline are dropped from every aggregate.
  std::map<std::tuple<int, double, std::uint64_t>, bool> usable;
  for (const auto& r : rows) {
    auto key = std::make_tuple(r.size, r.alpha, r.seed);
    const bool ok = r.status != "error" && r.pct_baseline.has_value();
    auto [it, fresh] = usable.emplace(key, ok);
    if (!fresh) it->second = it->second && ok;
  }
  for (const auto& [key, ok] : usable)
    if (!ok) s.excluded_seeds.push_back(std::get<2>(key));

  std::map<std::tuple<int, double, int>, std::vector<double>> pct;
  std::map<std::tuple<int, double, int, int>, std::vector<double>> cat;
  for (const auto& r : rows) {
    if (!usable[std::make_tuple(r.size, r.alpha, r.seed)]) continue;
    pct[{r.size, r.alpha, r.h}].push_back(*r.pct_baseline);
    if (r.h == 0 || r.h == 10 || r.h == 20 || r.h == 50)
      for (int c = 0; c < 5; ++c)
        if (r.pct_matched[c]) cat[{r.size, r.alpha, r.h, c}].push_back(*r.pct_matched[c]);
  }
  std::map<std::tuple<int, double, int>, bool> seen;
  for (const auto& r : rows) {
    auto key = std::make_tuple(r.size, r.alpha, r.h);
    if (seen[key]) continue;
    seen[key] = true;
    SummaryRow out{r.size, r.alpha, r.h, 0, {}, {}, {}};
    if (auto it = pct.find(key); it != pct.end()) {
      out.replicates = static_cast<int>(it->second.size());
      out.median = median(it->second);
      out.min = *std::min_element(it->second.begin(), it->second.end());
      out.max = *std::max_element(it->second.begin(), it->second.end());
    }
    s.curves.push_back(out);
  }
  std::sort(s.curves.begin(), s.curves.end(), [](const SummaryRow& a, const SummaryRow& b) {
    return std::tie(a.size, a.alpha, a.h) < std::tie(b.size, b.alpha, b.h);
  });
  for (const auto& row : s.curves) {
    if (!(row.h == 0 || row.h == 10 || row.h == 20 || row.h == 50)) continue;
    for (int c = 0; c < 5; ++c) {
      CategoryRow out{row.size, row.alpha, row.h, kCategories[c], {}};
      if (auto it = cat.find({row.size, row.alpha, row.h, c}); it != cat.end()) out.median = median(it->second);
      s.categories.push_back(out);
    }
  }
  return s;
}

void write_summary_csv(std::ostream& os, const Summary& s) {
  os << "size,alpha,h,replicates,median_pct_baseline,min_pct_baseline,max_pct_baseline\n";
  for (const auto& r : s.curves)
    os << r.size << ',' << fmt("%g", r.alpha) << ',' << r.h << ',' << r.replicates << ',' << opt(r.median) << ','
       << opt(r.min) << ',' << opt(r.max) << '\n';
}

void write_categories_csv(std::ostream& os, const Summary& s) {
  os << "size,alpha,h,category,median_pct_matched\n";
  for (const auto& r : s.categories)
    os << r.size << ',' << fmt("%g", r.alpha) << ',' << r.h << ',' << r.category << ',' << opt(r.median) << '\n';
}

void write_curves_svg(std::ostream& os, const Summary& s) {
  constexpr double W = 640, H = 400, left = 60, right = 160, top = 20, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;
  int h_max = 1;
  double y_max = 1;
  for (const auto& r : s.curves) {
    h_max = std::max(h_max, r.h);
    if (r.max) y_max = std::max(y_max, *r.max);
  }
  auto px = [&](double h) { return left + pw * h / h_max; };
  auto py = [&](double v) { return top + ph * (1 - v / y_max); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double h = h_max * i / 4.0, v = y_max * i / 4.0;
    os << "<text x=\"" << fmt("%.1f", px(h)) << "\" y=\"" << top + ph + 15 << "\" text-anchor=\"middle\">"
       << fmt("%g", h) << "</text>\n";
    os << "<text x=\"" << left - 5 << "\" y=\"" << fmt("%.1f", py(v) + 4) << "\" text-anchor=\"end\">"
       << fmt("%.1f", v) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">budget h</text>\n";
  os << "<text transform=\"translate(15," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">%Baseline</text>\n";

  std::map<std::pair<int, double>, std::vector<const SummaryRow*>> series;
  for (const auto& r : s.curves)
    if (r.median) series[{r.size, r.alpha}].push_back(&r);
  int idx = 0;
  for (const auto& [key, pts] : series) {
    const char* color = colors[idx % 6];
    os << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (const auto* p : pts) os << fmt("%.1f", px(p->h)) << ',' << fmt("%.1f", py(*p->max)) << ' ';
    for (auto it = pts.rbegin(); it != pts.rend(); ++it)
      os << fmt("%.1f", px((*it)->h)) << ',' << fmt("%.1f", py(*(*it)->min)) << ' ';
    os << "\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto* p : pts) os << fmt("%.1f", px(p->h)) << ',' << fmt("%.1f", py(*p->median)) << ' ';
    os << "\"/>\n";
    const double ly = top + 15 * (idx + 1);
    os << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + pw + 35 << "\" y=\"" << ly + 4 << "\">n=" << key.first
       << ", alpha=" << fmt("%g", key.second) << "</text>\n";
    ++idx;
  }
  os << "</svg>\n";
}

SweepOutcome run_sweep(const ExperimentSpec& spec, const std::filesystem::path& out_dir, std::ostream* log) {
  spec.validate();
  std::filesystem::create_directories(out_dir);
  SweepOutcome out;
  std::ofstream results(out_dir / "results.csv", std::ios::binary);
  if (!results) throw KeiError("cannot write " + (out_dir / "results.csv").string());
  results << csv_header() << '\n' << std::flush;

  for (int size : spec.sizes)
    for (double alpha : spec.alphas)
      for (std::uint64_t seed : spec.replicate_seeds()) {
        std::vector<ResultRow> rows;
        try {
          GeneratorConfig cfg = spec.generator;
          cfg.n_vertices = size;
          cfg.alpha = alpha;
          cfg.seed = seed;
          rows = sweep_instance(generate_pool(cfg), spec, size, alpha, seed);
        } catch (const std::exception& e) {
          out.any_error = true;
          if (log) *log << "replicate n=" << size << " alpha=" << alpha << " seed=" << seed << " failed: " << e.what()
                        << '\n';
          rows.clear();
          for (int h = 0; h <= spec.h_max; ++h) {
            ResultRow r;
            r.size = size;
            r.alpha = alpha;
            r.seed = seed;
            r.h = h;
            r.status = "error";
            rows.push_back(r);
          }
        }
        for (const auto& r : rows) results << to_csv(r) << '\n';
        results << std::flush;
        if (log && !rows.empty() && rows.front().matched_weight && *rows.front().matched_weight == 0)
          *log << "replicate n=" << size << " alpha=" << alpha << " seed=" << seed
               << " has M_0 = 0; %Baseline is NA and the replicate is left out of the summary\n";
        out.rows.insert(out.rows.end(), rows.begin(), rows.end());
      }

  out.summary = summarize(out.rows);
  {
    std::ofstream f(out_dir / "summary.csv", std::ios::binary);
    write_summary_csv(f, out.summary);
  }
  {
    std::ofstream f(out_dir / "categories.csv", std::ios::binary);
    write_categories_csv(f, out.summary);
  }
  {
    std::ofstream f(out_dir / "curves.svg", std::ios::binary);
    write_curves_svg(f, out.summary);
  }
  nlohmann::ordered_json meta;
  meta["spec"] = to_json(spec);
  meta["assumptions"] = {
      {"cycle_cap", spec.cycle_cap},
      {"chain_cap", spec.chain_cap},
      {"note", "cycle and chain caps are assumed; pools are synthetic and the generator defaults are not "
               "registry-derived"}};
  meta["excluded_seeds"] = out.summary.excluded_seeds;
  meta["any_error"] = out.any_error;
  std::ofstream(out_dir / "metadata.json", std::ios::binary) << meta.dump(2) << '\n';
  return out;
}

}  // namespace kei
