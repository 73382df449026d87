#include "ocs/advice.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ocs/offline.hpp"
#include "ocs/roro.hpp"
#include "ocs/thresholds.hpp"

namespace ocs {

void AdviceVector::validate(const Instance& inst) const {
  if (static_cast<int>(x_hat.size()) != inst.horizon())
    fail("validation", "advice length does not match the horizon");
  double total = 0.0;
  for (int t = 0; t < inst.horizon(); ++t) {
    double v = x_hat[t];
    if (!std::isfinite(v)) fail("validation", "advice entry is not finite");
    double cap = std::min(inst.rates[t], 1.0);
    if (v < -1e-9 || v > cap + 1e-9)
      fail("validation", "advice entry violates the rate limit at step " + std::to_string(t));
    total += v;
  }
  if (std::abs(total - 1.0) > kTotalTol)
    fail("validation", "advice does not sum to the unit demand");
}

double lambda_from_epsilon(Direction direction, double ratio, double epsilon) {
  if (!std::isfinite(ratio) || !std::isfinite(epsilon))
    fail("parameter", "trust parameters must be finite");
  if (ratio - 1.0 <= 1e-12) {
    // degenerate guarantee: the robust play is already optimal
    if (epsilon <= 1e-12 && epsilon >= -1e-12) return 1.0;
    fail("parameter", "epsilon must be 0 when the robust ratio is 1");
  }
  if (epsilon < -1e-12 || epsilon > ratio - 1.0 + 1e-12)
    fail("parameter", "epsilon outside [0, ratio - 1]");
  double eps = std::clamp(epsilon, 0.0, ratio - 1.0);
  double lambda;
  if (direction == Direction::Minimize) {
    lambda = (ratio - 1.0 - eps) / (ratio - 1.0);
  } else {
    lambda = (ratio / (1.0 + eps) - 1.0) / (ratio - 1.0);
  }
  return std::clamp(lambda, 0.0, 1.0);
}

TrustParams TrustParams::make(Direction direction, double ratio, double epsilon) {
  TrustParams trust;
  trust.epsilon = epsilon;
  trust.ratio = ratio;
  trust.lambda = lambda_from_epsilon(direction, ratio, epsilon);
  return trust;
}

Schedule ro_advice_run(const Instance& inst, const AdviceVector& advice,
                       const TrustParams& trust) {
  inst.validate(false);
  advice.validate(inst);
  if (!(trust.lambda >= 0.0 && trust.lambda <= 1.0))
    fail("parameter", "lambda must lie in [0, 1]");

  const int T = inst.horizon();
  std::vector<double> suffix(static_cast<size_t>(T) + 1, 0.0);
  for (int t = T - 1; t >= 0; --t)
    suffix[t] = suffix[t + 1] + std::min(inst.rates[t], 1.0);

  RoroEngine engine(ThresholdParams::for_instance(inst), inst.rates);
  Schedule out;
  out.x.assign(static_cast<size_t>(T), 0.0);
  double w = 0.0;
  for (int t = 0; t < T; ++t) {
    double robust = engine.observe(inst.pricing[t]);
    double need = 1.0 - w;
    if (need <= kRateTol) continue;
    double cap = std::min(inst.rates[t], 1.0);
    double x = trust.lambda * advice.x_hat[t] + (1.0 - trust.lambda) * robust;
    // the least trade keeping the remaining caps sufficient; any feasible
    // advisor already trades at least this much, so the floor never moves
    // the combination away from a feasible plan
    double forced = std::max(0.0, need - suffix[t + 1]);
    if (x < forced) x = forced;
    if (x > cap) x = cap;
    if (x > need + 1e-12) x = need;  // dust guard; both advisors are feasible
    if (x < 0.0) x = 0.0;
    out.x[t] = x;
    w += x;
  }
  return out;
}

AdviceVector simulate_advice(const Instance& inst, double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) fail("parameter", "zeta must lie in [0, 1]");
  Schedule opt = solve_offline(inst).schedule;
  Schedule worst = solve_worst(inst).schedule;
  AdviceVector advice;
  advice.x_hat.resize(opt.x.size());
  for (size_t t = 0; t < opt.x.size(); ++t)
    advice.x_hat[t] = (1.0 - zeta) * opt.x[t] + zeta * worst.x[t];
  return advice;
}

AdviceBounds bounds_check(Direction direction, double L, double U, double beta,
                          double epsilon) {
  AdviceBounds bounds;
  bounds.consistency = 1.0 + epsilon;
  if (direction == Direction::Minimize) {
    double a = alpha(L, U, beta);
    if (epsilon < -1e-12 || epsilon > a - 1.0 + 1e-12)
      fail("parameter", "epsilon outside [0, alpha - 1]");
    double eps = std::clamp(epsilon, 0.0, a - 1.0);
    bounds.robustness = ((U + 2.0 * beta) / L * (a - 1.0 - eps) + a * eps) / (a - 1.0);
  } else {
    double o = omega(L, U, beta);
    if (epsilon < -1e-12 || epsilon > o - 1.0 + 1e-12)
      fail("parameter", "epsilon outside [0, omega - 1]");
    double eps = std::clamp(epsilon, 0.0, o - 1.0);
    double denom = eps + (L - 2.0 * beta) / U * (o - 1.0 - eps);
    if (denom <= 0.0) fail("degenerate-parameter", "robustness bound is unbounded");
    bounds.robustness = (o - 1.0) * (1.0 + eps) / denom;
  }
  return bounds;
}

}  // namespace ocs
