#pragma once

#include "ocs/core.hpp"

namespace ocs {

// Principal-branch Lambert W. Domain x >= -1/e (a hair of slack is tolerated
// and clamped); Halley iterations from a branch-aware seed.
double lambert_w0(double x);

// Optimal robust competitive ratios for switching-aware unit conversion.
// Minimize: alpha = 1 / (W((2b + L/U - 1) e^{2b-1}) - 2b + 1), b = beta/U.
// Maximize: omega = W((U/L - 1 - 2c) e^{-(1+2c)}) + 1 + 2c, c = beta/L.
double alpha(double L, double U, double beta);
double omega(double L, double U, double beta);

// Dynamic threshold family over utilization w in [0, 1]:
//   Minimize: phi(w) = U - beta + coefficient * e^{w/ratio}   (decreasing)
//   Maximize: phi(w) = L + beta + coefficient * e^{ratio * w} (increasing)
// Construction validates the boundary identity phi(1) = L + beta (Minimize)
// resp. U - beta (Maximize) to 1e-9 and hard-errors otherwise.
struct ThresholdParams {
  Direction direction = Direction::Minimize;
  double L = 0.0;
  double U = 0.0;
  double beta = 0.0;
  double ratio = 0.0;        // alpha (Minimize) or omega (Maximize)
  double coefficient = 0.0;  // exponential-term coefficient

  static ThresholdParams make(Direction direction, double L, double U, double beta);
  static ThresholdParams for_instance(const Instance& inst);

  double phi(double w) const;
  // closed-form integral of phi over [a, b]
  double phi_integral(double a, double b) const;
  // w with phi(w) = y; y must lie in the value range, endpoints clamped
  double phi_inverse(double y) const;
  // [min(phi(0), phi(1)), max(...)]: the invertible value range
  double phi_lo() const;
  double phi_hi() const;
};

}  // namespace ocs
