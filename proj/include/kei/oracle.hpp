#pragma once

// Exhaustive reference solvers for small instances. Test and fixture use
// only; run time grows factorially with the number of recipients.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kei/instance.hpp"
#include "kei/weights.hpp"

namespace kei {

struct OracleConstraints {
  std::optional<int> budget;       // max half-compatible transplants
  std::optional<int> cycle_cap;    // max cycle length (edges) on the pool graph
  std::optional<int> chain_cap;    // max chain length (edges) from an NDD
  bool strong_ir = true;           // paired donors give only if their recipient receives
  bool strict_pairs = true;        // own-compatible recipients take only compatible kidneys
  bool allow_self_loops = true;    // a recipient may receive from her own donor
  int max_recipients = 10;
};

/// Objective tuple compared lexicographically.
using ObjectiveTuple = std::vector<Weight>;

enum class OracleObjective {
  Lexicographic,  // the scheme's tuple, e.g. (CO, TR) for lex-co-tr
  EdgeWeight,     // sum of transplant weights under the scheme, waiting ignored
};

/// Tuple of an allocation under a scheme. max-co-bm ranks by CO alone; the
/// custom scheme is the sum of gains including waiting gains.
ObjectiveTuple objective_tuple(const KeiInstance& inst, const WeightScheme& scheme, const Allocation& alloc,
                               OracleObjective mode = OracleObjective::Lexicographic);

/// Calls `visit` for every feasible allocation. Cap constraints require
/// strong_ir, since chains and cycles are only defined with the coupling.
/// Throws KeiError when the instance exceeds max_recipients.
void enumerate_allocations(const KeiInstance& inst, const OracleConstraints& c,
                           const std::function<void(const Allocation&)>& visit);

std::vector<Allocation> all_allocations(const KeiInstance& inst, const OracleConstraints& c);

struct OracleResult {
  ObjectiveTuple objective;
  Allocation witness;             // first optimum in enumeration order
  std::uint64_t optima = 0;       // number of allocations attaining it
  std::uint64_t feasible = 0;     // number of allocations visited
};

/// Schemes that forbid half-compatible transplants (max-co-bm) only see
/// allocations without them.
OracleResult oracle_optimum(const KeiInstance& inst, const WeightScheme& scheme, const OracleConstraints& c,
                            OracleObjective mode = OracleObjective::Lexicographic);

}  // namespace kei
