#pragma once

// Position-indexed cycle/chain integer program with a suppressant budget.
//
// Variables are laid out as [y (chain edge, position)] [z (cycle)] [u (edge)].
// Row families:
//   pair capacity  sum_{e in in(i), k} y_ek + sum_{c ni i} z_c <= 1      (i pair)
//   chain flow     sum_{e in in(i)} y_ek - sum_{e in out(i)} y_e,k+1 >= 0 (i pair, k < L)
//   NDD capacity   sum_{e in out(i)} y_e1 <= 1                          (i NDD)
//   edge use       u_e - sum_k y_ek - sum_{c ni e} z_c = 0              (e edge)
//   budget         sum_{e half} u_e <= h
// Objective: maximize sum_e w(e) u_e.

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kei/instance.hpp"
#include "kei/pool_graph.hpp"

namespace kei {

enum class RowFamily { PairCapacity, ChainFlow, NddCapacity, EdgeUse, Budget };
enum class RowSense { LessEqual, GreaterEqual, Equal };

struct Term {
  int var = 0;
  int coef = 0;
};

struct Row {
  RowFamily family = RowFamily::PairCapacity;
  std::string name;
  std::vector<Term> terms;
  RowSense sense = RowSense::LessEqual;
  int rhs = 0;
};

struct ChainVar {
  int edge = 0;
  int position = 0;
};

inline constexpr int kUnlimitedBudget = std::numeric_limits<int>::max();

struct PicefModel {
  DirectedPoolGraph graph;
  std::vector<Cycle> cycles;
  std::vector<std::vector<int>> positions;
  int cycle_cap = 0;
  int chain_cap = 0;
  int budget = kUnlimitedBudget;

  std::vector<ChainVar> chain_vars;
  std::vector<Weight> objective;  // one coefficient per variable
  std::vector<std::string> var_names;
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int z_var(int cycle) const { return static_cast<int>(chain_vars.size()) + cycle; }
  int u_var(int edge) const { return static_cast<int>(chain_vars.size() + cycles.size()) + edge; }
  /// Index of y_{edge,position}, or -1 when the position is not in K(edge).
  int y_var(int edge, int position) const;

  /// Copy with a different budget (only the budget row changes).
  PicefModel with_budget(int h) const;

 private:
  friend PicefModel build_model(DirectedPoolGraph, std::vector<Cycle>, std::vector<std::vector<int>>, int, int, int);
  std::vector<int> y_first_;  // first chain variable of each edge
};

/// Assembles the program. `cycle_cap` and `chain_cap` are recorded for
/// solution checks; the cycle list and positions must already respect them.
PicefModel build_model(DirectedPoolGraph graph, std::vector<Cycle> cycles, std::vector<std::vector<int>> positions,
                       int cycle_cap, int chain_cap, int budget);

/// Convenience: pool graph, cycles and positions in one step.
PicefModel build_model(const KeiInstance& inst, const WeightScheme& scheme, int cycle_cap, int chain_cap, int budget,
                       PoolOptions opts = {});

/// A chain as the ordered list of its edges, starting at an NDD.
struct Chain {
  int ndd = 0;
  std::vector<int> edges;
};

struct IlpSolution {
  std::vector<int> cycles;  // indices into model.cycles
  std::vector<Chain> chains;
  Weight objective = 0;
  int suppressants = 0;
};

/// Empty when the 0/1 assignment satisfies every row, else the first
/// violated row's name.
std::optional<std::string> violated_row(const PicefModel& model, const std::vector<char>& assignment);

/// Decodes cycles and chains. Throws KeiError naming the violated row when
/// the assignment is infeasible.
IlpSolution extract_solution(const PicefModel& model, const std::vector<char>& assignment);

/// Allocation realised by a solution: each recipient on a selected structure
/// receives from the donor of her in-edge.
Allocation solution_allocation(const PicefModel& model, const IlpSolution& sol, const KeiInstance& inst);

Weight evaluate(const PicefModel& model, const std::vector<char>& assignment);

/// CPLEX LP text format.
void write_lp(std::ostream& os, const PicefModel& model);

}  // namespace kei
