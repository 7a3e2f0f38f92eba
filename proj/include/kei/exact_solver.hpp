#pragma once

// Exact optimisation of PicefModel instances by depth-first branch and bound
// over cycle and chain structures. The bound at a node is the smaller of
//   * a per-recipient bound: every available recipient is credited with her
//     best remaining compatible in-edge, plus the residual budget's best
//     upgrades to half-compatible in-edges, and
//   * the dual value of the LP relaxation of the remaining packing, solved by
//     a small built-in simplex (see packing_lp.hpp).
// The search stops early once the incumbent reaches the root bound.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kei/picef.hpp"

namespace kei {

enum class SolveStatus { Optimal, Feasible, Infeasible };

std::string to_string(SolveStatus s);

struct SolveLimits {
  std::optional<double> time_limit_seconds;
  std::optional<std::int64_t> node_limit;
};

struct IncumbentPoint {
  std::int64_t node = 0;
  double seconds = 0;
  Weight objective = 0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<char> assignment;  // one 0/1 entry per model variable
  Weight objective = 0;
  Weight bound = 0;  // proven upper bound on the optimum
  std::int64_t nodes = 0;
  bool proven_optimal = false;
  std::vector<IncumbentPoint> trajectory;

  Weight gap() const { return bound - objective; }
};

enum class Capability { Exact, Heuristic };

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual Capability capability() const = 0;
  virtual std::string name() const = 0;
  virtual SolveReport solve(const PicefModel& model, const SolveLimits& limits) const = 0;
};

/// A cycle or chain that can be selected as a whole.
struct Structure {
  bool is_cycle = true;
  int cycle = -1;           // index into model.cycles for cycles
  std::vector<int> edges;   // in order; chains start at their NDD
  std::vector<int> vertices;
  Weight weight = 0;
  int half_edges = 0;
  std::vector<std::uint64_t> mask;
};

/// Set-packing view of a model: only structures with positive weight are
/// kept, since dropping any other structure never lowers the objective.
struct PackingProblem {
  const PicefModel* model = nullptr;
  int num_vertices = 0;
  int words = 0;
  std::vector<Structure> structures;
};

/// Throws KeiError when the chain enumeration exceeds max_structures.
PackingProblem make_packing_problem(const PicefModel& model, std::size_t max_structures = 4'000'000);

struct SearchState {
  std::vector<std::uint64_t> available;  // pool vertices still free
  int residual_budget = 0;
  Weight value = 0;  // weight of the structures selected so far
};

SearchState root_state(const PackingProblem& p);

/// Upper bound on the weight still obtainable from `state` (excluding
/// state.value).
Weight upper_bound(const PackingProblem& p, const SearchState& state);

/// 0/1 model assignment realising a set of structures.
std::vector<char> assignment_for(const PackingProblem& p, const std::vector<int>& selected);

class BranchAndBoundSolver : public SolverBackend {
 public:
  Capability capability() const override { return Capability::Exact; }
  std::string name() const override { return "branch-and-bound"; }
  SolveReport solve(const PicefModel& model, const SolveLimits& limits) const override;
};

/// Selects structures greedily by weight per vertex; no optimality proof.
class GreedySolver : public SolverBackend {
 public:
  Capability capability() const override { return Capability::Heuristic; }
  std::string name() const override { return "greedy"; }
  SolveReport solve(const PicefModel& model, const SolveLimits& limits) const override;
};

SolveReport solve_exact(const PicefModel& model, const SolveLimits& limits = {});

}  // namespace kei
