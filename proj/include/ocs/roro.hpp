#pragma once

#include <vector>

#include "ocs/core.hpp"
#include "ocs/thresholds.hpp"

namespace ocs {

// Mutable per-run state of the threshold-guided online algorithm.
struct RoroState {
  ThresholdParams params;
  int t = 0;
  double w = 0.0;       // utilization so far
  double x_prev = 0.0;  // previous decision
  bool in_compulsory = false;
};

// Pseudo-cost of trading x from the current state. For Minimize this is
// g(x) + beta |x - x_prev| - integral of the threshold over [w, w + x]; for
// Maximize it is the negation of g(x) - beta |x - x_prev| - that integral, so
// the smaller-pseudo-cost rule applies to both directions unchanged.
double pcost(const PricingFunction& g, const RoroState& st, double x);

struct RampResult {
  double x = 0.0;
  double pcost = 0.0;
};

// Best trade in the ramping-on interval [min(x_prev, cap), cap] where
// cap = min(rate, 1 - w). An empty interval collapses to the singleton cap.
RampResult ramp_on(const PricingFunction& g, const RoroState& st, double rate);

// Best trade in the ramping-off interval [0, min(x_prev, rate, 1 - w)].
RampResult ramp_off(const PricingFunction& g, const RoroState& st, double rate);

// One threshold-guided decision; ties go to ramping-on. Advances the state.
double roro_step(const PricingFunction& g, double rate, RoroState& st);

// Streaming runner: pricing functions are revealed one step at a time, the
// rate caps are known up front so forced trading is detected as soon as the
// remaining caps cannot cover the remaining demand.
class RoroEngine {
 public:
  RoroEngine(ThresholdParams params, std::vector<double> rates);

  double observe(const PricingFunction& g);
  const RoroState& state() const { return st_; }

 private:
  RoroState st_;
  std::vector<double> rates_;
  std::vector<double> suffix_;  // suffix_[t] = sum of capped rates from t on
};

// Full run over an instance; thresholds default to the instance parameters.
Schedule roro_run(const Instance& inst);
Schedule roro_run(const Instance& inst, const ThresholdParams& params);

// Unit-trade acceptance rule (Minimize): from the off state a price is taken
// iff c <= phi_i - beta, from the on state iff c <= phi_i + beta.
int opr_step(double price, int x_prev, double phi_i, double beta);

// opr_step applied along a price stream against a nonincreasing threshold
// family; entry i of the family gates the (i+1)-th unit.
std::vector<int> double_threshold_run(const std::vector<double>& prices,
                                      const std::vector<double>& thresholds,
                                      double beta);

// The same decisions produced by the threshold-guided framework restricted to
// x in {0, 1} with linear pseudo-cost c x + beta |x - x_prev| - phi_i x.
std::vector<int> binary_roro_run(const std::vector<double>& prices,
                                 const std::vector<double>& thresholds,
                                 double beta);

}  // namespace ocs
