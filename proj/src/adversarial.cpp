#include "ocs/adversarial.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ocs/numeric.hpp"
#include "ocs/offline.hpp"

namespace ocs {

namespace {

void append_block(Instance& inst, double slope, int count) {
  for (int i = 0; i < count; ++i) {
    inst.rates.push_back(1.0);
    inst.pricing.push_back(PricingFunction::linear(slope));
  }
}

}  // namespace

Instance generate(const AdversarialSpec& spec) {
  if (spec.n < 1 || spec.m < 1) fail("parameter", "n and m must be at least 1");
  if (!(spec.L > 0.0) || !(spec.U >= spec.L))
    fail("parameter", "price bounds must satisfy 0 < L <= U");
  if (spec.x < spec.L - 1e-12 || spec.x > spec.U + 1e-12)
    fail("parameter", "target price outside [L, U]");

  Instance inst;
  inst.direction = spec.direction;
  inst.beta = spec.beta;
  inst.L = spec.L;
  inst.U = spec.U;

  double delta = (spec.U - spec.L) / spec.n;
  bool minimize = spec.direction == Direction::Minimize;
  double worst = minimize ? spec.U : spec.L;
  double span = minimize ? spec.U - spec.x : spec.x - spec.L;
  int k = 0;
  if (span > 1e-12 && delta > 0.0)
    k = static_cast<int>(std::ceil(span / delta - 1e-9));

  append_block(inst, worst, spec.m);
  if (k > 0) {
    double eps = delta / 2.0;
    for (int j = 1; j < k; ++j) {
      double slope = minimize ? spec.U - j * delta : spec.L + j * delta;
      append_block(inst, slope, 1);
      append_block(inst, worst, spec.m);
    }
    double near = minimize ? std::min(spec.x + eps, spec.U)
                           : std::max(spec.x - eps, spec.L);
    append_block(inst, near, spec.m);
    append_block(inst, worst, spec.m);
  }

  inst.validate(true);
  return inst;
}

std::vector<SweepRow> cr_sweep(Direction direction, double L, double U, double beta,
                               int n, int m, const ScheduleAlgorithm& algorithm,
                               int points, int workers) {
  if (points < 1) fail("parameter", "sweep needs at least one grid point");
  std::vector<SweepRow> rows(static_cast<size_t>(points));
  double step = points > 1 ? (U - L) / (points - 1) : 0.0;
  parallel_for(points, workers, [&](int i) {
    AdversarialSpec spec;
    spec.direction = direction;
    spec.x = std::min(U, L + i * step);
    spec.n = n;
    spec.m = m;
    spec.L = L;
    spec.U = U;
    spec.beta = beta;
    Instance inst = generate(spec);
    Schedule alg = algorithm(inst);
    SolutionReport alg_rep = evaluate(inst, alg);
    OfflineResult opt = solve_offline(inst);
    SweepRow row;
    row.x = spec.x;
    row.alg_objective = alg_rep.objective;
    row.opt_objective = opt.report.objective;
    row.ratio = direction == Direction::Minimize
                    ? alg_rep.objective / opt.report.objective
                    : opt.report.objective / alg_rep.objective;
    rows[static_cast<size_t>(i)] = row;
  });
  return rows;
}

}  // namespace ocs
