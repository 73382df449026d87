#include "ocs/core.hpp"

#include <algorithm>
#include <cmath>

namespace ocs {

std::string to_string(Direction d) {
  return d == Direction::Minimize ? "min" : "max";
}

Direction direction_from_string(const std::string& s) {
  if (s == "min" || s == "minimize") return Direction::Minimize;
  if (s == "max" || s == "maximize") return Direction::Maximize;
  fail("data", "unknown direction '" + s + "'");
}

PricingFunction::PricingFunction(std::vector<Segment> segments) : segs_(std::move(segments)) {
  if (segs_.empty()) fail("data", "pricing function needs at least one segment");
  double prev = 0.0;
  for (const auto& s : segs_) {
    if (!std::isfinite(s.upto) || !std::isfinite(s.slope))
      fail("data", "non-finite pricing segment");
    if (s.upto <= prev + 1e-15) fail("data", "pricing breakpoints must increase");
    prev = s.upto;
  }
  if (std::abs(segs_.back().upto - 1.0) > 1e-9)
    fail("data", "pricing must cover [0, 1]");
  segs_.back().upto = 1.0;
}

PricingFunction PricingFunction::linear(double slope) {
  return PricingFunction({{1.0, slope}});
}

double PricingFunction::value(double x) const {
  x = std::clamp(x, 0.0, 1.0);
  double v = 0.0;
  double start = 0.0;
  for (const auto& s : segs_) {
    double hi = std::min(x, s.upto);
    if (hi > start) v += s.slope * (hi - start);
    if (x <= s.upto) break;
    start = s.upto;
  }
  return v;
}

double PricingFunction::slope_at(double x) const {
  for (const auto& s : segs_) {
    if (x < s.upto) return s.slope;
  }
  return segs_.back().slope;
}

double PricingFunction::min_slope() const {
  double m = segs_.front().slope;
  for (const auto& s : segs_) m = std::min(m, s.slope);
  return m;
}

double PricingFunction::max_slope() const {
  double m = segs_.front().slope;
  for (const auto& s : segs_) m = std::max(m, s.slope);
  return m;
}

double Schedule::total() const {
  double t = 0.0;
  for (double v : x) t += v;
  return t;
}

void Instance::validate(bool strict_slope_range) const {
  if (!std::isfinite(L) || !std::isfinite(U) || !std::isfinite(beta))
    fail("degenerate-parameter", "non-finite instance parameters");
  if (L <= 0.0 || U <= L)
    fail("degenerate-parameter", "price bounds must satisfy 0 < L < U");
  double beta_cap = direction == Direction::Minimize ? (U - L) / 2.0 : L / 2.0;
  if (beta < 0.0 || beta >= beta_cap)
    fail("parameter", "switching coefficient outside the admissible range");
  if (pricing.empty()) fail("structural", "instance has no steps");
  if (rates.size() != pricing.size())
    fail("structural", "rates and pricing must have equal length");
  double cap_total = 0.0;
  for (double d : rates) {
    if (!std::isfinite(d) || d <= 0.0) fail("data", "rates must be positive");
    cap_total += std::min(d, 1.0);
  }
  if (cap_total < 1.0 - kTotalTol)
    fail("infeasible", "rate caps cannot cover the unit demand");
  for (const auto& g : pricing) {
    double prev = g.segments().front().slope;
    for (const auto& s : g.segments()) {
      bool ordered = direction == Direction::Minimize ? s.slope >= prev - 1e-12
                                                      : s.slope <= prev + 1e-12;
      if (!ordered)
        fail("data", direction == Direction::Minimize ? "pricing must be convex"
                                                      : "pricing must be concave");
      prev = s.slope;
      bool in_range = strict_slope_range ? s.slope >= L - 1e-9 && s.slope <= U + 1e-9
                                         : s.slope >= -1e-12 && s.slope <= U + 1e-9;
      if (!in_range) fail("data", "pricing slope outside the admissible range");
    }
  }
}

SolutionReport evaluate(const Instance& inst, const Schedule& s) {
  const int T = inst.horizon();
  if (static_cast<int>(s.x.size()) != T)
    fail("structural", "schedule length does not match the instance horizon");
  SolutionReport rep;
  double sw = 0.0;
  double prev = 0.0;
  double total = 0.0;
  bool in_bounds = true;
  for (int t = 0; t < T; ++t) {
    double x = s.x[t];
    if (!std::isfinite(x)) fail("data", "non-finite schedule entry");
    rep.trade_cost += inst.pricing[t].value(std::clamp(x, 0.0, 1.0));
    sw += std::abs(x - prev);
    prev = x;
    total += x;
    if (x < -kRateTol || x > std::min(inst.rates[t], 1.0) + kRateTol) in_bounds = false;
  }
  sw += std::abs(prev);
  rep.switch_cost = inst.beta * sw;
  rep.objective = inst.direction == Direction::Minimize
                      ? rep.trade_cost + rep.switch_cost
                      : rep.trade_cost - rep.switch_cost;
  rep.feasible = in_bounds && std::abs(total - 1.0) <= kTotalTol;
  double w = 0.0;
  double suffix = 0.0;
  for (int t = 0; t < T; ++t) suffix += std::min(inst.rates[t], 1.0);
  for (int t = 0; t < T && w < 1.0 - kRateTol; ++t) {
    suffix -= std::min(inst.rates[t], 1.0);
    if (suffix < (1.0 - w) - kRateTol) {
      rep.compulsory_start = t;
      break;
    }
    w += s.x[t];
  }
  return rep;
}

std::optional<int> compulsory_start(const Instance& inst, double w, int from) {
  const int T = inst.horizon();
  double need = 1.0 - w;
  if (need <= kRateTol) return std::nullopt;
  double suffix = 0.0;
  for (int t = from; t < T; ++t) suffix += std::min(inst.rates[t], 1.0);
  for (int t = from; t < T; ++t) {
    suffix -= std::min(inst.rates[t], 1.0);
    if (suffix < need - kRateTol) return t;
  }
  return std::nullopt;
}

void compulsory_fill(const Instance& inst, Schedule& s, int from) {
  const int T = inst.horizon();
  s.x.resize(static_cast<std::size_t>(T), 0.0);
  double w = 0.0;
  for (int t = 0; t < from; ++t) w += s.x[t];
  for (int t = from; t < T && w < 1.0 - kRateTol; ++t) {
    double x = std::min({inst.rates[t], 1.0, 1.0 - w});
    s.x[t] = x;
    w += x;
  }
  if (w < 1.0 - kTotalTol)
    fail("infeasible", "remaining capacity cannot complete the demand");
}

}  // namespace ocs
