// Command-line front end: clearing, ILP solving, generation and sweeps.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "kei/clearing.hpp"
#include "kei/exact_solver.hpp"
#include "kei/exchange_graph.hpp"
#include "kei/experiments.hpp"
#include "kei/generator.hpp"
#include "kei/instance_io.hpp"
#include "kei/oracle.hpp"
#include "kei/picef.hpp"

using nlohmann::ordered_json;
using namespace kei;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw KeiError("cannot write " + path);
  out << text;
}

WeightScheme make_scheme(const std::string& name, const KeiInstance& inst, const std::string& weights_file) {
  const SchemeKind kind = scheme_from_name(name);
  if (kind == SchemeKind::Custom)
    return WeightScheme::custom_scheme(weights_file.empty() ? CustomGains{} : load_custom_gains(weights_file));
  if (!weights_file.empty()) throw KeiError("--weights only applies to the custom scheme");
  return WeightScheme::for_instance(kind, inst);
}

ordered_json stats_json(const AllocationStats& s) {
  return {{"compatible", s.compatible}, {"half_compatible", s.half_compatible}, {"total", s.total}};
}

// Loads and rejects instances that break the market invariants.
KeiInstance load_checked(const std::string& path) {
  KeiInstance inst = load_instance(path);
  if (const ValidationReport rep = validate_instance(inst); !rep.ok()) throw KeiError(path + ": " + rep.summary());
  return inst;
}

struct Common {
  std::string instance;
  std::string scheme = "max-tr";
  std::string weights;
  std::string out;
  bool strict_pairs = true;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--instance", c.instance, "Instance JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--scheme", c.scheme, "max-tr | max-co-bm | lex-co-tr | lex-co-neg-hc | lex-tr-neg-hc | custom");
  cmd->add_option("--weights", c.weights, "Custom scheme utilities (JSON)")->check(CLI::ExistingFile);
  cmd->add_flag("--strict-pairs,!--no-strict-pairs", c.strict_pairs,
                "Keep recipients with a compatible own donor off half-compatible kidneys (default on)");
  cmd->add_option("--out", c.out, "Output file (default stdout)");
}

int run_solve(const Common& c, std::optional<int> budget) {
  const KeiInstance inst = load_checked(c.instance);
  const WeightScheme scheme = make_scheme(c.scheme, inst, c.weights);
  const ClearingOptions opts{c.strict_pairs};
  const ClearingResult res =
      budget ? solve_h_max_kei_sbm(inst, *budget, scheme, opts) : solve_objective(inst, scheme, opts);
  ordered_json j;
  j["scheme"] = scheme_name(scheme.kind);
  if (budget) j["budget"] = *budget;
  j["objective"] = res.objective;
  j["stats"] = stats_json(res.stats);
  j["suppressants"] = res.allocation.suppressed.size();
  j["allocation"] = allocation_to_json(inst, res.allocation);
  emit(c.out, j.dump(2) + "\n");
  return 0;
}

struct IlpArgs {
  int cycle_cap = 3;
  int chain_cap = 3;
  std::optional<int> budget;
  std::optional<double> time_limit;
  std::optional<std::int64_t> node_limit;
  std::string lp;
  std::string log;
};

int run_ilp(const Common& c, const IlpArgs& a) {
  const KeiInstance inst = load_checked(c.instance);
  const WeightScheme scheme = make_scheme(c.scheme, inst, c.weights);
  const PicefModel model = build_model(inst, scheme, a.cycle_cap, a.chain_cap, a.budget.value_or(kUnlimitedBudget),
                                       PoolOptions{c.strict_pairs, true});
  if (!a.lp.empty()) {
    std::ofstream lp(a.lp, std::ios::binary);
    if (!lp) throw KeiError("cannot write " + a.lp);
    write_lp(lp, model);
  }
  const SolveReport rep = solve_exact(model, SolveLimits{a.time_limit, a.node_limit});
  if (!a.log.empty()) {
    std::ofstream log(a.log, std::ios::binary);
    if (!log) throw KeiError("cannot write " + a.log);
    log << "node,seconds,objective\n";
    for (const auto& p : rep.trajectory) log << p.node << ',' << p.seconds << ',' << p.objective << '\n';
    log << rep.nodes << ",end," << rep.objective << '\n';
  }
  const IlpSolution sol = extract_solution(model, rep.assignment);
  const Allocation alloc = solution_allocation(model, sol, inst);
  const auto& g = model.graph;

  ordered_json j;
  j["status"] = to_string(rep.status);
  j["objective"] = rep.objective;
  j["bound"] = rep.bound;
  j["nodes"] = rep.nodes;
  j["cycle_cap"] = a.cycle_cap;
  j["chain_cap"] = a.chain_cap;
  if (a.budget) j["budget"] = *a.budget;
  j["suppressants"] = sol.suppressants;
  ordered_json cycles = ordered_json::array();
  for (int ci : sol.cycles) cycles.push_back(model.cycles[ci].vertices);
  j["cycles"] = cycles;
  ordered_json chains = ordered_json::array();
  for (const auto& ch : sol.chains) {
    ordered_json chain;
    chain["ndd"] = g.donor(ch.ndd);
    ordered_json path = ordered_json::array();
    for (int e : ch.edges) path.push_back(g.edges()[e].to);
    chain["recipients"] = path;
    chains.push_back(chain);
  }
  j["chains"] = chains;
  j["stats"] = stats_json(stats(inst, alloc));
  j["allocation"] = allocation_to_json(inst, alloc);
  emit(c.out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kidney exchange clearing with immunosuppressants"};
  app.require_subcommand(1);

  Common solve_args;
  std::optional<int> solve_budget;
  auto* solve = app.add_subcommand("solve", "Clear an instance with maximum-weight perfect matchings");
  add_common(solve, solve_args);
  solve->add_option("--budget", solve_budget, "Suppressant budget (silver-bullet instances only)")
      ->check(CLI::NonNegativeNumber);

  Common ilp_args;
  IlpArgs ilp;
  auto* ilp_cmd = app.add_subcommand("ilp-solve", "Solve the cycle/chain model with the exact solver");
  add_common(ilp_cmd, ilp_args);
  ilp_cmd->add_option("--cycle-cap", ilp.cycle_cap, "Maximum cycle length")->check(CLI::NonNegativeNumber);
  ilp_cmd->add_option("--chain-cap", ilp.chain_cap, "Maximum chain length")->check(CLI::NonNegativeNumber);
  ilp_cmd->add_option("--budget", ilp.budget, "Suppressant budget (default unlimited)")
      ->check(CLI::NonNegativeNumber);
  ilp_cmd->add_option("--time-limit", ilp.time_limit, "Seconds")->check(CLI::PositiveNumber);
  ilp_cmd->add_option("--node-limit", ilp.node_limit, "Search nodes")->check(CLI::PositiveNumber);
  ilp_cmd->add_option("--lp", ilp.lp, "Also write the model in LP format");
  ilp_cmd->add_option("--log", ilp.log, "Incumbent trajectory CSV");

  std::optional<int> gen_n;
  std::optional<double> gen_alpha;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_config, gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic pool");
  gen->add_option("--n", gen_n, "Vertices (pairs plus altruistic donors)")->check(CLI::NonNegativeNumber);
  gen->add_option("--alpha", gen_alpha, "Fraction of candidate pairs made half-compatible")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--config", gen_config, "Generator config JSON")->check(CLI::ExistingFile);
  gen->add_option("--out", gen_out, "Output instance file (default stdout)");

  std::string sweep_spec, sweep_dir;
  auto* sweep = app.add_subcommand("sweep", "Run a budget sweep");
  sweep->add_option("--spec", sweep_spec, "Experiment spec JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out-dir", sweep_dir, "Output directory")->required();

  Common oracle_args;
  OracleConstraints oc;
  bool no_strong_ir = false;
  bool edge_weight = false;
  auto* oracle = app.add_subcommand("oracle", "Brute-force optimum for small instances");
  oracle->group("");  // hidden
  add_common(oracle, oracle_args);
  oracle->add_option("--budget", oc.budget, "Suppressant budget");
  oracle->add_option("--cycle-cap", oc.cycle_cap, "Maximum cycle length");
  oracle->add_option("--chain-cap", oc.chain_cap, "Maximum chain length");
  oracle->add_option("--max-recipients", oc.max_recipients, "Refuse larger instances");
  oracle->add_flag("--no-strong-ir", no_strong_ir, "Drop the donor coupling");
  oracle->add_flag("--edge-weight", edge_weight, "Rank by summed edge weight instead of the scheme tuple");

  std::string bm_instance, bm_out;
  int bm_budget = 0;
  Weight bm_target = 0;
  auto* bm = app.add_subcommand("export-bm", "Export the budgeted matching instance");
  bm->add_option("--instance", bm_instance, "Instance JSON file")->required()->check(CLI::ExistingFile);
  bm->add_option("--budget", bm_budget, "Suppressant budget")->check(CLI::NonNegativeNumber);
  bm->add_option("--target", bm_target, "Weight target t");
  bm->add_option("--out", bm_out, "Output file (default stdout)");

  Common dot_args;
  std::optional<int> dot_budget;
  auto* dot = app.add_subcommand("dot", "Write the exchange graph in Graphviz format");
  add_common(dot, dot_args);
  dot->add_option("--budget", dot_budget, "Attach the suppressant gadget with this budget");

  std::string validate_instance_path;
  auto* validate = app.add_subcommand("validate", "Check an instance and report its model class");
  validate->add_option("--instance", validate_instance_path, "Instance JSON file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(solve_args, solve_budget);
    if (*ilp_cmd) return run_ilp(ilp_args, ilp);
    if (*gen) {
      GeneratorConfig cfg = gen_config.empty() ? GeneratorConfig{} : load_generator_config(gen_config);
      if (gen_n) cfg.n_vertices = *gen_n;
      if (gen_alpha) cfg.alpha = *gen_alpha;
      if (gen_seed) cfg.seed = *gen_seed;
      emit(gen_out, instance_to_json(generate_pool(cfg)).dump(2) + "\n");
      return 0;
    }
    if (*sweep) {
      const SweepOutcome res = run_sweep(load_experiment_spec(sweep_spec), sweep_dir, &std::cerr);
      return res.any_error ? 1 : 0;
    }
    if (*oracle) {
      const KeiInstance inst = load_checked(oracle_args.instance);
      const WeightScheme scheme = make_scheme(oracle_args.scheme, inst, oracle_args.weights);
      oc.strong_ir = !no_strong_ir;
      oc.strict_pairs = oracle_args.strict_pairs;
      const OracleResult res =
          oracle_optimum(inst, scheme, oc, edge_weight ? OracleObjective::EdgeWeight : OracleObjective::Lexicographic);
      ordered_json j;
      j["objective"] = res.objective;
      j["optima"] = res.optima;
      j["feasible"] = res.feasible;
      j["stats"] = stats_json(stats(inst, res.witness));
      j["witness"] = allocation_to_json(inst, res.witness);
      emit(oracle_args.out, j.dump(2) + "\n");
      return 0;
    }
    if (*bm) {
      emit(bm_out, to_json(export_budgeted_matching(load_checked(bm_instance), bm_budget, bm_target)).dump(2) + "\n");
      return 0;
    }
    if (*dot) {
      const KeiInstance inst = load_checked(dot_args.instance);
      ExchangeGraph g = build_graph(inst, make_scheme(dot_args.scheme, inst, dot_args.weights));
      if (dot_args.strict_pairs) g = restrict_compatible_pairs(g, inst);
      if (dot_budget) g = add_suppressant_gadget(g, *dot_budget);
      std::ostringstream os;
      write_dot(os, g);
      emit(dot_args.out, os.str());
      return 0;
    }
    if (*validate) {
      const KeiInstance inst = load_instance(validate_instance_path);
      const ValidationReport rep = validate_instance(inst);
      std::cout << rep.summary() << '\n';
      if (!rep.ok()) return 1;
      std::cout << "model class: " << to_string(model_class(inst)) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
