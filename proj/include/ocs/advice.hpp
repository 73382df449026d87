#pragma once

#include <vector>

#include "ocs/core.hpp"

namespace ocs {

// Black-box per-step suggestions consumed by the trust-weighted combiner.
struct AdviceVector {
  std::vector<double> x_hat;

  // Rejects advice that does not describe a feasible schedule: the entries
  // must sum to 1 (tolerance 1e-9) and respect the per-step rate limits.
  void validate(const Instance& inst) const;
};

// Trust configuration: epsilon is the tolerated consistency slack, lambda the
// derived combination weight, ratio the robust guarantee it is measured against.
struct TrustParams {
  double epsilon = 0.0;
  double lambda = 1.0;
  double ratio = 1.0;

  static TrustParams make(Direction direction, double ratio, double epsilon);
};

// Maps epsilon to the combination weight. Full trust at epsilon = 0, pure
// robust play at the direction's upper limit (ratio - 1 when minimizing).
double lambda_from_epsilon(Direction direction, double ratio, double epsilon);

// Runs the meta-algorithm: a robust engine evolves on its own decisions and
// each step plays lambda * advice + (1 - lambda) * robust.
Schedule ro_advice_run(const Instance& inst, const AdviceVector& advice,
                       const TrustParams& trust);

// Blends the offline optimum with the objective-worst feasible schedule,
// zeta = 0 giving perfect advice and zeta = 1 fully adversarial advice.
AdviceVector simulate_advice(const Instance& inst, double zeta);

struct AdviceBounds {
  double consistency = 0.0;
  double robustness = 0.0;
};

// Closed-form consistency and robustness guarantees for the given trust level.
AdviceBounds bounds_check(Direction direction, double L, double U, double beta,
                          double epsilon);

}  // namespace ocs
