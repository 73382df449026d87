#include "ocs/offline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "ocs/numeric.hpp"
#include "ocs/pwl.hpp"
#include "ocs/simplex.hpp"

namespace ocs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double capped_rate(const Instance& inst, int t) { return std::min(inst.rates[t], 1.0); }

// cost scale putting both directions into minimization form
double min_scale(const Instance& inst) {
  return inst.direction == Direction::Minimize ? 1.0 : -1.0;
}

double normalized_objective(const Instance& inst, const SolutionReport& rep) {
  return inst.direction == Direction::Minimize ? rep.objective : -rep.objective;
}

// spread float dust so the schedule sums to exactly 1 within evaluator tolerance
void nudge_total(const Instance& inst, Schedule& s) {
  double diff = 1.0 - s.total();
  if (std::abs(diff) > 1e-6) fail("solver-error", "schedule far from the unit demand");
  for (int t = 0; t < inst.horizon() && std::abs(diff) > 1e-15; ++t) {
    double room = diff > 0 ? capped_rate(inst, t) - s.x[t] : s.x[t];
    double step = std::min(std::abs(diff), std::max(0.0, room));
    s.x[t] += diff > 0 ? step : -step;
    diff += diff > 0 ? -step : step;
  }
}

OfflineResult finish(const Instance& inst, Schedule s, std::string method) {
  nudge_total(inst, s);
  OfflineResult res;
  res.schedule = std::move(s);
  res.report = evaluate(inst, res.schedule);
  res.method = std::move(method);
  if (!res.report.feasible)
    fail("solver-error", "solver produced an infeasible schedule");
  return res;
}

}  // namespace

OfflineResult solve_offline_lp(const Instance& inst) {
  inst.validate(false);
  const int T = inst.horizon();
  const double scale = min_scale(inst);

  LpProblem p;
  std::vector<double> cost;
  std::vector<double> upper;
  auto add_col = [&](double c, double ub) {
    cost.push_back(c);
    upper.push_back(ub);
    return static_cast<int>(cost.size()) - 1;
  };
  // per-step allocations into pricing segments; cheapest segments fill first
  // at the optimum, so the column costs reproduce g exactly
  std::vector<std::vector<int>> ycols(T);
  for (int t = 0; t < T; ++t) {
    double start = 0.0;
    for (const auto& seg : inst.pricing[t].segments()) {
      ycols[t].push_back(add_col(scale * seg.slope, seg.upto - start));
      start = seg.upto;
    }
  }
  std::vector<int> slack(T, -1);
  for (int t = 0; t < T; ++t) {
    double cap = capped_rate(inst, t);
    if (cap < 1.0 - 1e-12) slack[t] = add_col(0.0, cap);
  }
  // switching epigraph: s_i >= |x_i - x_{i-1}| for i = 0..T with x_{-1} = x_T = 0
  std::vector<int> scol(T + 1), pcol(T + 1), qcol(T + 1);
  for (int i = 0; i <= T; ++i) {
    scol[i] = add_col(inst.beta, kInf);
    pcol[i] = add_col(0.0, kInf);
    qcol[i] = add_col(0.0, kInf);
  }

  int rows = 1 + 2 * (T + 1);
  for (int t = 0; t < T; ++t) {
    if (slack[t] >= 0) ++rows;
  }
  p.rows = rows;
  p.cols = static_cast<int>(cost.size());
  p.c = std::move(cost);
  p.upper = std::move(upper);
  p.a.assign(static_cast<size_t>(rows) * p.cols, 0.0);
  p.b.assign(rows, 0.0);

  int r = 0;
  for (int t = 0; t < T; ++t) {
    for (int j : ycols[t]) p.at(r, j) = 1.0;
  }
  p.b[r] = 1.0;
  ++r;
  for (int t = 0; t < T; ++t) {
    if (slack[t] < 0) continue;
    for (int j : ycols[t]) p.at(r, j) = 1.0;
    p.at(r, slack[t]) = 1.0;
    p.b[r] = capped_rate(inst, t);
    ++r;
  }
  for (int i = 0; i <= T; ++i) {
    if (i < T) {
      for (int j : ycols[i]) p.at(r, j) = 1.0;
    }
    if (i > 0) {
      for (int j : ycols[i - 1]) p.at(r, j) = -1.0;
    }
    p.at(r, scol[i]) = -1.0;
    p.at(r, pcol[i]) = 1.0;
    ++r;
    if (i < T) {
      for (int j : ycols[i]) p.at(r, j) = -1.0;
    }
    if (i > 0) {
      for (int j : ycols[i - 1]) p.at(r, j) = 1.0;
    }
    p.at(r, scol[i]) = -1.0;
    p.at(r, qcol[i]) = 1.0;
    ++r;
  }

  LpSolution sol = solve_lp(p);
  Schedule s;
  s.x.assign(T, 0.0);
  for (int t = 0; t < T; ++t) {
    double v = 0.0;
    for (int j : ycols[t]) v += sol.x[j];
    s.x[t] = std::clamp(v, 0.0, capped_rate(inst, t));
  }
  OfflineResult res = finish(inst, std::move(s), "exact-lp");
  if (std::abs(sol.objective - normalized_objective(inst, res.report)) >
      1e-6 * (1.0 + std::abs(sol.objective)))
    fail("solver-error", "lp objective does not match the schedule evaluation");
  return res;
}

namespace {

struct DpPass {
  std::vector<PwlFn> value;  // post-pricing value function per step
  double inner = 0.0;        // min over final decisions incl. shutdown charge
};

DpPass dp_forward(const Instance& inst, double nu, double scale) {
  DpPass pass;
  const int T = inst.horizon();
  pass.value.reserve(T);
  PwlFn f = PwlFn::point(0.0, 0.0);
  for (int t = 0; t < T; ++t) {
    f = f.conv_abs(inst.beta, 0.0, capped_rate(inst, t));
    f.add_scaled_pricing(inst.pricing[t], scale, nu);
    pass.value.push_back(f);
  }
  pass.inner = pass.value.back().min_plus_linear(inst.beta);
  return pass;
}

// high = false walks interval lows (smallest feasible total among optima),
// high = true walks the highs; monotone interval maps make both exact
std::vector<double> dp_backtrace(const Instance& inst, const DpPass& pass, bool high) {
  const int T = inst.horizon();
  std::vector<double> z(static_cast<size_t>(T));
  auto pick = [&](std::pair<double, double> iv) { return high ? iv.second : iv.first; };
  z[T - 1] = pick(pass.value[T - 1].argmin_plus_linear(inst.beta));
  for (int t = T - 1; t > 0; --t)
    z[t - 1] = pick(pass.value[t - 1].conv_argmin(inst.beta, z[t]));
  return z;
}

double vec_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

OfflineResult solve_offline_dp(const Instance& inst) {
  inst.validate(false);
  const int T = inst.horizon();
  const double scale = min_scale(inst);

  double m0 = 0.0;
  for (const auto& g : inst.pricing)
    m0 = std::max({m0, std::abs(g.min_slope()), std::abs(g.max_slope())});
  double lo = -(m0 + 2.0 * inst.beta + 1.0);
  double hi = m0 + 2.0 * inst.beta + 1.0;

  DpPass pass_lo = dp_forward(inst, lo, scale);
  std::vector<double> x_lo = dp_backtrace(inst, pass_lo, true);
  double sum_lo = vec_sum(x_lo);
  double dual_lo = pass_lo.inner + lo;
  DpPass pass_hi = dp_forward(inst, hi, scale);
  std::vector<double> x_hi = dp_backtrace(inst, pass_hi, false);
  double sum_hi = vec_sum(x_hi);
  double dual_hi = pass_hi.inner + hi;
  if (sum_lo > 1.0 + 1e-9 || sum_hi < 1.0 - 1e-9)
    fail("solver-error", "dual bracket does not straddle the demand");

  Schedule out;
  out.x.assign(static_cast<size_t>(T), 0.0);
  double dual = -kInf;
  bool done = false;
  for (int it = 0; it < 200 && !done; ++it) {
    if (hi - lo <= 1e-13 * (1.0 + std::abs(lo) + std::abs(hi))) break;
    double mid = 0.5 * (lo + hi);
    DpPass pm = dp_forward(inst, mid, scale);
    std::vector<double> zmin = dp_backtrace(inst, pm, false);
    std::vector<double> zmax = dp_backtrace(inst, pm, true);
    double smin = vec_sum(zmin);
    double smax = vec_sum(zmax);
    if (smin > 1.0) {
      hi = mid;
      x_hi = std::move(zmin);
      sum_hi = smin;
      dual_hi = pm.inner + mid;
    } else if (smax < 1.0) {
      lo = mid;
      x_lo = std::move(zmax);
      sum_lo = smax;
      dual_lo = pm.inner + mid;
    } else {
      double denom = smax - smin;
      double th = denom > 0.0 ? (1.0 - smin) / denom : 0.0;
      for (int t = 0; t < T; ++t) out.x[t] = (1.0 - th) * zmin[t] + th * zmax[t];
      dual = pm.inner + mid;
      done = true;
    }
  }
  if (!done) {
    double denom = sum_hi - sum_lo;
    double th = denom > 1e-18 ? (1.0 - sum_lo) / denom : 0.0;
    for (int t = 0; t < T; ++t) out.x[t] = (1.0 - th) * x_lo[t] + th * x_hi[t];
    dual = std::max(dual_lo, dual_hi);
  }

  OfflineResult res = finish(inst, std::move(out), "exact-dp");
  double primal = normalized_objective(inst, res.report);
  if (primal - dual > 1e-6 * (1.0 + std::abs(primal)))
    fail("solver-error", "duality gap certificate failed");
  return res;
}

OfflineResult solve_offline(const Instance& inst) {
  if (inst.horizon() <= 120) return solve_offline_lp(inst);
  return solve_offline_dp(inst);
}

OfflineResult brute_force(const Instance& inst, int grid) {
  inst.validate(false);
  const int T = inst.horizon();
  if (T > 8 || grid < 1 || grid > 20)
    fail("refusal", "enumeration bound exceeded (requires T <= 8 and grid <= 20)");
  std::vector<int> cap(T);
  std::vector<int> suffix(static_cast<size_t>(T) + 1, 0);
  for (int t = T - 1; t >= 0; --t) {
    cap[t] = static_cast<int>(std::floor(capped_rate(inst, t) * grid + 1e-9));
    suffix[t] = suffix[t + 1] + cap[t];
  }
  if (suffix[0] < grid) fail("infeasible", "grid caps cannot cover the demand");

  std::vector<int> units(static_cast<size_t>(T), 0);
  std::vector<int> best_units;
  double best = kInf;
  Schedule s;
  s.x.assign(static_cast<size_t>(T), 0.0);
  // descending unit loop makes the first optimum found the one that trades
  // earliest, which is the documented tie-break
  std::function<void(int, int)> rec = [&](int t, int rem) {
    if (rem > suffix[t]) return;
    if (t == T) {
      for (int u = 0; u < T; ++u) s.x[u] = static_cast<double>(units[u]) / grid;
      double obj = normalized_objective(inst, evaluate(inst, s));
      if (obj < best - 1e-12) {
        best = obj;
        best_units = units;
      }
      return;
    }
    for (int u = std::min(cap[t], rem); u >= 0; --u) {
      units[t] = u;
      rec(t + 1, rem - u);
    }
    units[t] = 0;
  };
  rec(0, grid);
  if (best_units.empty()) fail("solver-error", "enumeration found no feasible schedule");
  Schedule out;
  out.x.resize(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) out.x[t] = static_cast<double>(best_units[t]) / grid;
  return finish(inst, std::move(out), "discretized");
}

namespace {

Schedule worst_local_search(const Instance& inst) {
  const int T = inst.horizon();
  Rng rng(0x9e3779b97f4a7c15ull);
  std::vector<double> caps(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) caps[t] = capped_rate(inst, t);

  auto score = [&](const Schedule& s) {
    return normalized_objective(inst, evaluate(inst, s));
  };
  Schedule best;
  double best_score = -kInf;
  std::vector<int> order(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) order[t] = t;

  for (int restart = 0; restart < 48; ++restart) {
    for (int i = T - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);
    Schedule s;
    s.x.assign(static_cast<size_t>(T), 0.0);
    double sum = 0.0;
    for (int t : order) {
      if (sum >= 1.0 - 1e-15) break;
      double take = std::min(caps[t], 1.0 - sum);
      s.x[t] = take;
      sum += take;
    }
    double sc = score(s);
    for (int pass = 0; pass < 30; ++pass) {
      bool improved = false;
      int trials = std::max(64, 4 * T);
      for (int k = 0; k < trials; ++k) {
        int i = rng.uniform_int(0, T - 1);
        int j = rng.uniform_int(0, T - 1);
        if (i == j || s.x[i] <= 1e-15 || s.x[j] >= caps[j] - 1e-15) continue;
        double delta = std::min(s.x[i], caps[j] - s.x[j]);
        Schedule cand = s;
        cand.x[i] -= delta;
        cand.x[j] += delta;
        double cs = score(cand);
        if (cs > sc + 1e-12) {
          s = std::move(cand);
          sc = cs;
          improved = true;
        }
      }
      if (!improved) break;
    }
    if (sc > best_score) {
      best_score = sc;
      best = std::move(s);
    }
  }
  return best;
}

}  // namespace

OfflineResult solve_worst(const Instance& inst) {
  inst.validate(false);
  const int T = inst.horizon();
  std::vector<double> caps(static_cast<size_t>(T));
  std::vector<double> suffix(static_cast<size_t>(T) + 1, 0.0);
  for (int t = T - 1; t >= 0; --t) {
    caps[t] = capped_rate(inst, t);
    suffix[t] = suffix[t + 1] + caps[t];
  }

  long node_budget = 4000000;
  long eval_budget = 400000;
  bool aborted = false;
  std::vector<double> x(static_cast<size_t>(T), 0.0);
  Schedule tmp;
  tmp.x.assign(static_cast<size_t>(T), 0.0);
  Schedule best;
  double best_score = -kInf;

  auto leaf = [&]() {
    if (--eval_budget < 0) {
      aborted = true;
      return;
    }
    tmp.x = x;
    double sc = normalized_objective(inst, evaluate(inst, tmp));
    if (sc > best_score + 1e-12) {
      best_score = sc;
      best = tmp;
    }
  };
  // polytope vertices: at most one coordinate strictly between its bounds.
  // frac marks that coordinate wherever it sits in time; its value is pinned
  // by the demand once the cap choices are complete.
  std::function<void(int, double, int)> rec = [&](int t, double sum, int frac) {
    if (aborted || --node_budget < 0) {
      aborted = true;
      return;
    }
    double frac_room = frac >= 0 ? caps[frac] : 0.0;
    if (sum + suffix[t] + frac_room < 1.0 - 1e-12) return;
    if (t == T) {
      if (frac < 0) {
        if (std::abs(sum - 1.0) <= 1e-12) leaf();
        return;
      }
      double v = 1.0 - sum;
      if (v < -1e-12 || v > caps[frac] + 1e-12) return;
      x[frac] = std::clamp(v, 0.0, caps[frac]);
      leaf();
      x[frac] = 0.0;
      return;
    }
    if (sum + caps[t] <= 1.0 + 1e-12) {
      x[t] = caps[t];
      rec(t + 1, sum + caps[t], frac);
      x[t] = 0.0;
      if (aborted) return;
    }
    if (frac < 0) {
      rec(t + 1, sum, t);
      if (aborted) return;
    }
    rec(t + 1, sum, frac);
  };
  rec(0, 0.0, -1);

  if (aborted) return finish(inst, worst_local_search(inst), "local-search");
  if (best.x.empty()) fail("solver-error", "vertex enumeration found no feasible schedule");
  return finish(inst, std::move(best), "vertex-enum");
}

}  // namespace ocs
