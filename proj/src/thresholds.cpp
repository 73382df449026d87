#include "ocs/thresholds.hpp"

#include <algorithm>
#include <cmath>

namespace ocs {

namespace {
constexpr double kInvE = 0.36787944117144233;  // 1/e
}

double lambert_w0(double x) {
  if (!std::isfinite(x)) fail("domain", "lambert_w0: non-finite argument");
  if (x < -kInvE) {
    if (x < -kInvE - 1e-12) fail("domain", "lambert_w0: argument below -1/e");
    x = -kInvE;
  }
  double w;
  if (x < -0.25) {
    // series around the branch point
    double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 3.0) {
    // the log-log seed degenerates as x -> 1+, the rational seed stays sane
    w = x * (1.0 - x + 1.5 * x * x) / (1.0 + 0.5 * x * (1.0 + x));
    if (!std::isfinite(w)) w = 0.0;
  } else {
    double l1 = std::log(x);
    double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }
  for (int it = 0; it < 100; ++it) {
    double ew = std::exp(w);
    double f = w * ew - x;
    if (std::abs(f) <= 1e-14 * std::max(1.0, std::abs(x))) break;
    double d1 = ew * (w + 1.0);
    double d2 = ew * (w + 2.0);
    double denom = d1 - 0.5 * f * d2 / d1;
    if (denom == 0.0 || !std::isfinite(denom)) break;
    double step = f / denom;
    w -= step;
    if (w < -1.0) w = -1.0;  // stay on the principal branch
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double alpha(double L, double U, double beta) {
  if (!(L > 0.0) || !(U >= L) || !std::isfinite(beta))
    fail("parameter", "price bounds must satisfy 0 < L <= U");
  if (U <= L)
    fail("degenerate-parameter", "zero price width leaves no admissible beta");
  if (beta < 0.0 || beta >= (U - L) / 2.0)
    fail("parameter", "switching coefficient outside [0, (U-L)/2)");
  double b = beta / U;
  double arg = (2.0 * b + L / U - 1.0) * std::exp(2.0 * b - 1.0);
  double ratio = 1.0 / (lambert_w0(arg) - 2.0 * b + 1.0);
  if (!std::isfinite(ratio) || ratio <= 1.0)
    fail("degenerate-parameter", "ratio computation failed");
  return ratio;
}

double omega(double L, double U, double beta) {
  if (!(L > 0.0) || !(U >= L) || !std::isfinite(beta))
    fail("parameter", "price bounds must satisfy 0 < L <= U");
  if (beta < 0.0 || beta >= L / 2.0)
    fail("parameter", "switching coefficient outside [0, L/2)");
  // the increasing family needs 2 beta < U - L; past it the coefficient
  // flips sign and the thresholds start above U
  if (beta > 0.0 && U - L <= 2.0 * beta)
    fail("parameter", "switching coefficient must stay below (U - L)/2");
  double c = beta / L;
  double arg = (U / L - 1.0 - 2.0 * c) * std::exp(-(1.0 + 2.0 * c));
  double ratio = lambert_w0(arg) + 1.0 + 2.0 * c;
  if (!std::isfinite(ratio) || ratio < 1.0 - 1e-12)
    fail("degenerate-parameter", "ratio computation failed");
  return ratio;
}

ThresholdParams ThresholdParams::make(Direction direction, double L, double U,
                                      double beta) {
  ThresholdParams p;
  p.direction = direction;
  p.L = L;
  p.U = U;
  p.beta = beta;
  if (direction == Direction::Minimize) {
    p.ratio = alpha(L, U, beta);
    p.coefficient = U / p.ratio - U + 2.0 * beta;
    if (std::abs(p.phi(1.0) - (L + beta)) > 1e-9)
      fail("degenerate-parameter", "threshold boundary identity violated");
  } else {
    p.ratio = omega(L, U, beta);
    p.coefficient = p.ratio * L - L - 2.0 * beta;
    if (std::abs(p.phi(1.0) - (U - beta)) > 1e-9)
      fail("degenerate-parameter", "threshold boundary identity violated");
  }
  return p;
}

ThresholdParams ThresholdParams::for_instance(const Instance& inst) {
  return make(inst.direction, inst.L, inst.U, inst.beta);
}

double ThresholdParams::phi(double w) const {
  if (w < -1e-9 || w > 1.0 + 1e-9) fail("domain", "phi: utilization outside [0, 1]");
  w = std::clamp(w, 0.0, 1.0);
  if (direction == Direction::Minimize)
    return U - beta + coefficient * std::exp(w / ratio);
  return L + beta + coefficient * std::exp(ratio * w);
}

double ThresholdParams::phi_integral(double a, double b) const {
  if (a > b + 1e-12 || a < -1e-9 || b > 1.0 + 1e-9)
    fail("domain", "phi_integral: bad interval");
  a = std::clamp(a, 0.0, 1.0);
  b = std::clamp(b, a, 1.0);
  if (direction == Direction::Minimize)
    return (U - beta) * (b - a) +
           ratio * coefficient * (std::exp(b / ratio) - std::exp(a / ratio));
  return (L + beta) * (b - a) +
         coefficient / ratio * (std::exp(ratio * b) - std::exp(ratio * a));
}

double ThresholdParams::phi_inverse(double y) const {
  double lo = phi_lo();
  double hi = phi_hi();
  double slack = 1e-9 * std::max(1.0, std::abs(hi));
  if (y < lo - slack || y > hi + slack)
    fail("range", "phi_inverse: value outside the threshold range");
  y = std::clamp(y, lo, hi);
  double w;
  if (direction == Direction::Minimize)
    w = ratio * std::log((y - U + beta) / coefficient);
  else
    w = std::log((y - L - beta) / coefficient) / ratio;
  return std::clamp(w, 0.0, 1.0);
}

double ThresholdParams::phi_lo() const { return std::min(phi(0.0), phi(1.0)); }

double ThresholdParams::phi_hi() const { return std::max(phi(0.0), phi(1.0)); }

}  // namespace ocs
