#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ocs/core.hpp"
#include "ocs/numeric.hpp"

namespace ocs::testing {

inline Instance linear_instance(Direction direction, double beta, double L, double U,
                                std::vector<double> slopes,
                                std::vector<double> rates = {}) {
  Instance inst;
  inst.direction = direction;
  inst.beta = beta;
  inst.L = L;
  inst.U = U;
  if (rates.empty()) rates.assign(slopes.size(), 1.0);
  inst.rates = std::move(rates);
  for (double c : slopes) inst.pricing.push_back(PricingFunction::linear(c));
  return inst;
}

// random convex (Minimize) or concave (Maximize) pricing with slopes in [L, U]
inline PricingFunction random_pricing(Direction direction, double L, double U, Rng& rng) {
  int nseg = 1 + static_cast<int>(rng.bits() % 3);
  std::vector<double> slopes(static_cast<size_t>(nseg));
  for (auto& s : slopes) s = rng.uniform(L, U);
  std::sort(slopes.begin(), slopes.end());
  if (direction == Direction::Maximize) std::reverse(slopes.begin(), slopes.end());
  std::vector<Segment> segs;
  double upto = 0.0;
  for (int k = 0; k < nseg; ++k) {
    if (k + 1 == nseg) {
      upto = 1.0;
    } else {
      upto += (1.0 - upto) * rng.uniform(0.2, 0.8);
    }
    if (!segs.empty() && upto <= segs.back().upto + 1e-6) continue;
    segs.push_back({upto, slopes[static_cast<size_t>(k)]});
  }
  segs.back().upto = 1.0;
  return PricingFunction(std::move(segs));
}

inline Instance random_small_instance(Direction direction, int T, double L, double U,
                                      double beta, Rng& rng) {
  Instance inst;
  inst.direction = direction;
  inst.beta = beta;
  inst.L = L;
  inst.U = U;
  for (int t = 0; t < T; ++t) {
    inst.rates.push_back(rng.uniform(0.4, 1.2));
    inst.pricing.push_back(random_pricing(direction, L, U, rng));
  }
  inst.validate(true);
  return inst;
}

// expects fn() to throw Error with the given kind
template <typename Fn>
std::string error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  } catch (...) {
    return "<wrong exception type>";
  }
  return "<no exception>";
}

}  // namespace ocs::testing
