#include "ocs/roro.hpp"

#include <algorithm>
#include <cmath>

#include "ocs/numeric.hpp"

namespace ocs {

namespace {

// hot-path pseudo-cost without argument checks
double pc_raw(const PricingFunction& g, const ThresholdParams& th, double w,
              double x_prev, double x) {
  double swing = th.beta * std::abs(x - x_prev);
  double integral = th.phi_integral(w, w + x);
  if (th.direction == Direction::Minimize) return g.value(x) + swing - integral;
  return -(g.value(x) - swing - integral);
}

// Minimizes the (convex) pseudo-cost over [lo, hi]. Candidates: interval ends,
// pricing breakpoints, the per-segment stationary points where the threshold
// matches the switching-adjusted slope, and a golden-section pass. For
// piecewise-linear pricing the candidate set alone is exact; the search pass
// guards states where the interval was clamped.
RampResult solve_interval(const PricingFunction& g, const ThresholdParams& th, double w,
                          double x_prev, double lo, double hi, bool ramping_on) {
  RampResult best{lo, pc_raw(g, th, w, x_prev, lo)};
  auto consider = [&](double x) {
    x = std::clamp(x, lo, hi);
    double v = pc_raw(g, th, w, x_prev, x);
    if (v < best.pcost || (v == best.pcost && x < best.x)) best = {x, v};
  };
  consider(hi);
  // switching-adjusted marginal price the threshold must meet at w + x
  double adjust = th.beta;
  if ((th.direction == Direction::Minimize) != ramping_on) adjust = -adjust;
  double start = 0.0;
  for (const auto& seg : g.segments()) {
    double target = seg.slope + adjust;
    if (target > th.phi_lo() - 1e-13 && target < th.phi_hi() + 1e-13) {
      double y = std::clamp(target, th.phi_lo(), th.phi_hi());
      consider(th.phi_inverse(y) - w);
    }
    consider(start);
    consider(seg.upto);
    start = seg.upto;
  }
  if (hi - lo > 1e-9) {
    consider(golden_section_minimize(
        [&](double x) { return pc_raw(g, th, w, x_prev, x); }, lo, hi, 1e-7));
  }
  return best;
}

}  // namespace

double pcost(const PricingFunction& g, const RoroState& st, double x) {
  if (x < -kRateTol || x > 1.0 - st.w + 1e-9)
    fail("domain", "pcost: trade exceeds remaining capacity");
  return pc_raw(g, st.params, st.w, st.x_prev, std::clamp(x, 0.0, 1.0 - st.w));
}

RampResult ramp_on(const PricingFunction& g, const RoroState& st, double rate) {
  double cap = std::max(0.0, std::min({rate, 1.0 - st.w, 1.0}));
  double lo = std::min(st.x_prev, cap);
  return solve_interval(g, st.params, st.w, st.x_prev, lo, cap, true);
}

RampResult ramp_off(const PricingFunction& g, const RoroState& st, double rate) {
  double hi = std::max(0.0, std::min({st.x_prev, rate, 1.0 - st.w}));
  return solve_interval(g, st.params, st.w, st.x_prev, 0.0, hi, false);
}

double roro_step(const PricingFunction& g, double rate, RoroState& st) {
  RampResult on = ramp_on(g, st, rate);
  RampResult off = ramp_off(g, st, rate);
  double x = on.pcost <= off.pcost ? on.x : off.x;
  st.t += 1;
  st.w = std::min(1.0, st.w + x);
  st.x_prev = x;
  return x;
}

RoroEngine::RoroEngine(ThresholdParams params, std::vector<double> rates)
    : rates_(std::move(rates)) {
  st_.params = params;
  suffix_.assign(rates_.size() + 1, 0.0);
  for (int t = static_cast<int>(rates_.size()) - 1; t >= 0; --t)
    suffix_[t] = suffix_[t + 1] + std::min(rates_[t], 1.0);
}

double RoroEngine::observe(const PricingFunction& g) {
  if (st_.t >= static_cast<int>(rates_.size()))
    fail("structural", "observe called past the end of the horizon");
  int t = st_.t;
  double need = 1.0 - st_.w;
  if (need <= kRateTol) {
    st_.t += 1;
    st_.x_prev = 0.0;
    return 0.0;
  }
  if (!st_.in_compulsory && suffix_[t + 1] < need - kRateTol) st_.in_compulsory = true;
  if (st_.in_compulsory) {
    double x = std::min({rates_[t], 1.0, need});
    st_.t += 1;
    st_.w = std::min(1.0, st_.w + x);
    st_.x_prev = x;
    return x;
  }
  return roro_step(g, rates_[t], st_);
}

Schedule roro_run(const Instance& inst) {
  return roro_run(inst, ThresholdParams::for_instance(inst));
}

Schedule roro_run(const Instance& inst, const ThresholdParams& params) {
  RoroEngine engine(params, inst.rates);
  Schedule s;
  s.x.reserve(inst.pricing.size());
  for (const auto& g : inst.pricing) s.x.push_back(engine.observe(g));
  return s;
}

int opr_step(double price, int x_prev, double phi_i, double beta) {
  double gate = x_prev == 0 ? phi_i - beta : phi_i + beta;
  return price <= gate ? 1 : 0;
}

std::vector<int> double_threshold_run(const std::vector<double>& prices,
                                      const std::vector<double>& thresholds,
                                      double beta) {
  std::vector<int> out;
  out.reserve(prices.size());
  std::size_t i = 0;
  int prev = 0;
  for (double c : prices) {
    int x = 0;
    if (i < thresholds.size()) {
      x = opr_step(c, prev, thresholds[i], beta);
      if (x == 1) ++i;
    }
    out.push_back(x);
    prev = x;
  }
  return out;
}

std::vector<int> binary_roro_run(const std::vector<double>& prices,
                                 const std::vector<double>& thresholds,
                                 double beta) {
  std::vector<int> out;
  out.reserve(prices.size());
  std::size_t i = 0;
  int prev = 0;
  for (double c : prices) {
    int x = 0;
    if (i < thresholds.size()) {
      double phi_i = thresholds[i];
      auto value = [&](int v) {
        return c * v + beta * std::abs(v - prev) - phi_i * v;
      };
      // ramping-on candidates {prev, 1}, ties toward more trading
      int x_on = value(1) <= value(prev) ? 1 : prev;
      // ramping-off candidates {0, prev}, same inner tie rule
      int x_off = prev == 1 && value(1) <= value(0) ? 1 : 0;
      x = value(x_on) <= value(x_off) ? x_on : x_off;
      if (x == 1) ++i;
    }
    out.push_back(x);
    prev = x;
  }
  return out;
}

}  // namespace ocs
