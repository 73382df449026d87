#pragma once

#include <utility>
#include <vector>

#include "ocs/core.hpp"

namespace ocs {

// Convex piecewise-linear function on a closed interval, stored as knots plus
// per-piece slopes and the value at the left end. Used by the exact offline
// solver to propagate value functions along the horizon.
struct PwlFn {
  std::vector<double> xs;      // k + 1 knots, strictly increasing
  std::vector<double> slopes;  // k piece slopes, nondecreasing
  double v0 = 0.0;             // value at xs.front()

  static PwlFn zero(double lo, double hi);
  static PwlFn point(double x, double v);

  double lo() const { return xs.front(); }
  double hi() const { return xs.back(); }
  double eval(double z) const;

  // this(z) += scale * g(z) - nu * z  (domain must lie within [0, 1])
  void add_scaled_pricing(const PricingFunction& g, double scale, double nu);

  // Infimal convolution with beta |.|, restricted to [nlo, nhi]:
  // out(z) = min over y in dom of this(y) + beta |z - y|.
  PwlFn conv_abs(double beta, double nlo, double nhi) const;

  // min and argmin interval of this(z) + slope_add * z over the domain
  double min_plus_linear(double slope_add) const;
  std::pair<double, double> argmin_plus_linear(double slope_add) const;

  // minimizer interval of this(y) + beta |z - y| over the domain
  std::pair<double, double> conv_argmin(double beta, double z) const;

  // merge pieces with identical slopes
  void compact();
};

}  // namespace ocs
