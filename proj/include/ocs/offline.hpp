#pragma once

#include <string>

#include "ocs/core.hpp"

namespace ocs {

struct OfflineResult {
  Schedule schedule;
  SolutionReport report;
  // "exact-lp" (simplex), "exact-dp" (value-function recursion, certified by
  // duality gap), "discretized" (grid enumeration), "vertex-enum" or
  // "local-search" (objective-worst searches; only vertex-enum is certified)
  std::string method;
};

// Global optimum of the convex program behind the instance. Picks the dense
// simplex formulation for short horizons and the exact value-function
// recursion for long ones; both agree to solver tolerance.
OfflineResult solve_offline(const Instance& inst);
OfflineResult solve_offline_lp(const Instance& inst);
OfflineResult solve_offline_dp(const Instance& inst);

// Exhaustive search over schedules with x_t in multiples of 1/grid.
// Refuses horizons above 8 or grids above 20.
OfflineResult brute_force(const Instance& inst, int grid);

// Feasible schedule that is worst for the objective (maximal cost when
// minimizing, minimal profit when maximizing). The objective is concave in
// the normalized sense, so the optimum sits at a vertex of the feasible
// polytope; small instances are enumerated exactly, large ones fall back to
// seeded multi-start local search (method "local-search", non-certified).
OfflineResult solve_worst(const Instance& inst);

}  // namespace ocs
