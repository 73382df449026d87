#pragma once

#include <functional>
#include <vector>

#include "ocs/core.hpp"

namespace ocs {

// Parameters of the alternating-batch hard family: batches of the worst
// price interleaved with singletons stepping toward the target price x.
struct AdversarialSpec {
  Direction direction = Direction::Minimize;
  double x = 0.0;  // target price in [L, U]
  int n = 1;       // resolution; the price grid step is (U - L) / n
  int m = 1;       // batch length
  double L = 0.0;
  double U = 0.0;
  double beta = 0.0;
};

// Builds the instance for the spec's target price. Unit rates throughout;
// the stream ends with a near-target batch and one final worst batch.
Instance generate(const AdversarialSpec& spec);

struct SweepRow {
  double x = 0.0;
  double alg_objective = 0.0;
  double opt_objective = 0.0;
  double ratio = 0.0;
};

using ScheduleAlgorithm = std::function<Schedule(const Instance&)>;

// Runs the algorithm across target prices on a uniform grid over [L, U] and
// reports the empirical ratio against the offline optimum per point.
std::vector<SweepRow> cr_sweep(Direction direction, double L, double U, double beta,
                               int n, int m, const ScheduleAlgorithm& algorithm,
                               int points = 50, int workers = 1);

}  // namespace ocs
