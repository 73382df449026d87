#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ocs/roro.hpp"
#include "support.hpp"

using namespace ocs;
using namespace ocs::testing;

namespace {
RoroState fresh_state(Direction dir, double L, double U, double beta) {
  RoroState st;
  st.params = ThresholdParams::make(dir, L, U, beta);
  return st;
}
}  // namespace

TEST_CASE("pseudo cost basics") {
  auto st = fresh_state(Direction::Minimize, 1.0, 2.0, 0.1);
  CHECK(pcost(PricingFunction::linear(1.5), st, 0.0) == doctest::Approx(0.0));
  CHECK(error_kind([&] {
          RoroState s2 = st;
          s2.w = 0.7;
          pcost(PricingFunction::linear(1.5), s2, 0.5);
        }) == "domain");
  // buying at the top threshold value with no switching is never profitable
  double v = pcost(PricingFunction::linear(2.0), st, 0.4);
  CHECK(v > 0.0);
}

TEST_CASE("ramp on reproduces the closed-form stationary point") {
  auto st = fresh_state(Direction::Minimize, 1.0, 2.0, 0.1);
  auto res = ramp_on(PricingFunction::linear(1.2), st, 1.0);
  // phi(w) = 1.2 + 0.1 at w = 0.59002365622669760619
  CHECK(res.x == doctest::Approx(0.59002365622669760619).epsilon(1e-6));

  // a price at the ceiling buys nothing
  auto at_top = ramp_on(PricingFunction::linear(2.0), st, 1.0);
  CHECK(std::abs(at_top.x) <= 1e-9);

  // the stationary point below x_prev clamps to x_prev (no switching incentive)
  RoroState mid = st;
  mid.x_prev = 0.3;
  double c = mid.params.phi(0.3) - 0.1 + 0.01;
  auto clamped = ramp_on(PricingFunction::linear(c), mid, 1.0);
  CHECK(clamped.x == doctest::Approx(0.3).epsilon(1e-7));
}

TEST_CASE("ramp off boundaries") {
  auto st = fresh_state(Direction::Minimize, 1.0, 2.0, 0.1);
  auto none = ramp_off(PricingFunction::linear(1.5), st, 1.0);
  CHECK(none.x == 0.0);  // x_prev = 0 collapses the interval

  RoroState held = st;
  held.x_prev = 0.4;
  // expensive step: drop out entirely
  auto drop = ramp_off(PricingFunction::linear(1.95), held, 1.0);
  CHECK(std::abs(drop.x) <= 1e-9);
  // cheap step: keep the full previous level
  auto keep = ramp_off(PricingFunction::linear(1.0), held, 1.0);
  CHECK(keep.x == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("single step at the floor price takes the whole cap") {
  auto st = fresh_state(Direction::Minimize, 1.0, 2.0, 0.1);
  double x = roro_step(PricingFunction::linear(1.0), 0.7, st);
  CHECK(x == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(st.w == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(st.x_prev == doctest::Approx(x));
  CHECK(st.t == 1);
}

TEST_CASE("maximize mirror takes everything at the ceiling") {
  auto st = fresh_state(Direction::Maximize, 1.0, 2.0, 0.1);
  double x = roro_step(PricingFunction::linear(2.0), 1.0, st);
  CHECK(x == doctest::Approx(1.0).epsilon(1e-9));
  double leftover = roro_step(PricingFunction::linear(2.0), 1.0, st);
  CHECK(std::abs(leftover) <= 1e-9);
}

TEST_CASE("full run on flat expensive prices defers to the compulsory tail") {
  auto inst = linear_instance(Direction::Minimize, 0.1, 1.0, 2.0,
                              {2.0, 2.0, 2.0, 2.0});
  auto s = roro_run(inst);
  auto rep = evaluate(inst, s);
  CHECK(rep.feasible);
  for (int t = 0; t < 3; ++t) CHECK(std::abs(s.x[t]) <= 1e-9);
  CHECK(s.x[3] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.objective == doctest::Approx(2.0 + 0.2).epsilon(1e-9));
}

TEST_CASE("capacity squeeze triggers forced trading before the end") {
  auto inst = linear_instance(Direction::Minimize, 0.05, 1.0, 2.0,
                              {2.0, 2.0, 2.0, 2.0, 2.0, 2.0},
                              {1.0, 0.2, 0.2, 0.2, 0.2, 0.2});
  auto s = roro_run(inst);
  auto rep = evaluate(inst, s);
  CHECK(rep.feasible);
  CHECK(std::abs(s.x[0]) <= 1e-9);
  for (int t = 1; t < 6; ++t) CHECK(s.x[t] == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("streaming engine matches the batch run") {
  Rng rng(77);
  for (int rep = 0; rep < 25; ++rep) {
    auto dir = rep % 2 == 0 ? Direction::Minimize : Direction::Maximize;
    double beta = dir == Direction::Minimize ? 0.3 : 0.2;
    auto inst = random_small_instance(dir, 2 + static_cast<int>(rng.bits() % 14),
                                      1.0, 3.0, beta, rng);
    auto batch = roro_run(inst);
    RoroEngine eng(ThresholdParams::for_instance(inst), inst.rates);
    for (int t = 0; t < inst.horizon(); ++t) {
      double x = eng.observe(inst.pricing[t]);
      CHECK(x == batch.x[t]);
    }
    CHECK(evaluate(inst, batch).feasible);
  }
}

TEST_CASE("engine rejects observations past the horizon") {
  auto inst = linear_instance(Direction::Minimize, 0.0, 1.0, 2.0, {1.5, 1.5});
  RoroEngine eng(ThresholdParams::for_instance(inst), inst.rates);
  eng.observe(inst.pricing[0]);
  eng.observe(inst.pricing[1]);
  CHECK(error_kind([&] { eng.observe(inst.pricing[1]); }) == "structural");
}

TEST_CASE("unit trade acceptance boundaries") {
  // off state: accept iff price <= gate - beta; on state gate + beta.
  // dyadic values keep the boundary arithmetic exact
  CHECK(opr_step(1.25, 0, 1.5, 0.25) == 1);
  CHECK(opr_step(1.2501, 0, 1.5, 0.25) == 0);
  CHECK(opr_step(1.75, 1, 1.5, 0.25) == 1);
  CHECK(opr_step(1.7501, 1, 1.5, 0.25) == 0);
  CHECK(opr_step(1.4, 0, 1.4, 0.0) == 1);
}

TEST_CASE("binary threshold framework equals the explicit acceptance rule") {
  Rng rng(1234);
  for (int rep = 0; rep < 500; ++rep) {
    int k = 1 + static_cast<int>(rng.bits() % 10);
    int T = 1 + static_cast<int>(rng.bits() % 40);
    double L = 1.0, U = 5.0;
    double beta = rng.uniform(0.0, 0.2 * (U - L));
    if (L + beta > U - beta) beta = 0.0;
    std::vector<double> thresholds(static_cast<size_t>(k));
    for (auto& v : thresholds) v = rng.uniform(L + beta, U - beta);
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    std::vector<double> prices(static_cast<size_t>(T));
    for (auto& p : prices) p = rng.uniform(L, U);
    auto a = double_threshold_run(prices, thresholds, beta);
    auto b = binary_roro_run(prices, thresholds, beta);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("zero switching cost reduces to the classic threshold policy") {
  // with beta = 0 the decision only depends on price vs phi(w); a run over a
  // price dip buys exactly up to the inverse threshold level
  auto inst = linear_instance(Direction::Minimize, 0.0, 1.0, 2.0,
                              {1.8, 1.3, 1.6, 1.3, 2.0});
  auto params = ThresholdParams::for_instance(inst);
  auto s = roro_run(inst);
  auto rep = evaluate(inst, s);
  CHECK(rep.feasible);
  // after the first 1.3 step the utilization reaches phi^{-1}(1.3)
  double w1 = s.x[0] + s.x[1];
  CHECK(w1 == doctest::Approx(params.phi_inverse(1.3)).epsilon(1e-7));
  // the repeat at 1.3 adds nothing, the threshold already cleared it
  CHECK(std::abs(s.x[3]) <= 1e-7);
}
