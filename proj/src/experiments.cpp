#include "ocs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "ocs/advice.hpp"
#include "ocs/offline.hpp"
#include "ocs/roro.hpp"
#include "ocs/thresholds.hpp"

namespace ocs {

Instance random_instance(Direction direction, int T, double L, double U, double beta,
                         Rng& rng) {
  if (T < 2) fail("parameter", "synthetic instances need at least two steps");
  Instance inst;
  inst.direction = direction;
  inst.beta = beta;
  inst.L = L;
  inst.U = U;
  inst.rates.reserve(static_cast<size_t>(T));
  inst.pricing.reserve(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) {
    inst.rates.push_back(rng.uniform(0.3, 1.0));
    int nseg = 1 + static_cast<int>(rng.bits() % 3);
    std::vector<double> slopes(static_cast<size_t>(nseg));
    for (auto& s : slopes) s = rng.uniform(L, U);
    std::sort(slopes.begin(), slopes.end());
    if (direction == Direction::Maximize) std::reverse(slopes.begin(), slopes.end());
    std::vector<double> cuts;
    for (int k = 0; k + 1 < nseg; ++k) cuts.push_back(rng.uniform(0.05, 0.95));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Segment> segs;
    for (int k = 0; k < nseg; ++k) {
      double upto = k + 1 < nseg ? cuts[static_cast<size_t>(k)] : 1.0;
      if (!segs.empty() && upto <= segs.back().upto + 1e-6) continue;
      segs.push_back({upto, slopes[static_cast<size_t>(k)]});
    }
    segs.back().upto = 1.0;
    inst.pricing.emplace_back(std::move(segs));
  }
  inst.validate(true);
  return inst;
}

std::vector<Instance> synthetic_suite(Direction direction, int count, int T, double L,
                                      double U, double beta, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Instance> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(random_instance(direction, T, L, U, beta, rng));
  return out;
}

namespace {

double ratio_against(Direction direction, double alg, double opt) {
  if (std::abs(opt) <= 1e-12 && std::abs(alg) <= 1e-12) return 1.0;
  double den = direction == Direction::Minimize ? std::max(opt, 1e-12)
                                                : std::max(alg, 1e-12);
  double num = direction == Direction::Minimize ? alg : opt;
  return num / den;
}

}  // namespace

std::vector<AdviceSweepCell> advice_sweep(const std::vector<Instance>& instances,
                                          const std::vector<double>& zetas,
                                          const std::vector<double>& epsilons,
                                          int workers) {
  if (instances.empty()) fail("parameter", "advice sweep needs at least one instance");
  const int n = static_cast<int>(instances.size());

  struct PerInstance {
    Schedule opt;
    Schedule worst;
    double opt_objective = 0.0;
    double ratio_bound = 1.0;  // alpha or omega for this instance
  };
  std::vector<PerInstance> pre(static_cast<size_t>(n));
  parallel_for(n, workers, [&](int i) {
    const Instance& inst = instances[static_cast<size_t>(i)];
    OfflineResult opt = solve_offline(inst);
    pre[i].opt = opt.schedule;
    pre[i].opt_objective = opt.report.objective;
    pre[i].worst = solve_worst(inst).schedule;
    pre[i].ratio_bound = inst.direction == Direction::Minimize
                             ? alpha(inst.L, inst.U, inst.beta)
                             : omega(inst.L, inst.U, inst.beta);
  });

  const int cells = static_cast<int>(zetas.size() * epsilons.size());
  std::vector<std::vector<double>> ratios(static_cast<size_t>(cells),
                                          std::vector<double>(static_cast<size_t>(n), 0.0));
  parallel_for(n, workers, [&](int i) {
    const Instance& inst = instances[static_cast<size_t>(i)];
    for (size_t zi = 0; zi < zetas.size(); ++zi) {
      AdviceVector advice;
      advice.x_hat.resize(pre[i].opt.x.size());
      for (size_t t = 0; t < advice.x_hat.size(); ++t)
        advice.x_hat[t] =
            (1.0 - zetas[zi]) * pre[i].opt.x[t] + zetas[zi] * pre[i].worst.x[t];
      for (size_t ei = 0; ei < epsilons.size(); ++ei) {
        TrustParams trust =
            TrustParams::make(inst.direction, pre[i].ratio_bound, epsilons[ei]);
        Schedule sched = ro_advice_run(inst, advice, trust);
        double obj = evaluate(inst, sched).objective;
        size_t cell = zi * epsilons.size() + ei;
        ratios[cell][static_cast<size_t>(i)] =
            ratio_against(inst.direction, obj, pre[i].opt_objective);
      }
    }
  });

  std::vector<AdviceSweepCell> out;
  out.reserve(static_cast<size_t>(cells));
  for (size_t zi = 0; zi < zetas.size(); ++zi) {
    for (size_t ei = 0; ei < epsilons.size(); ++ei) {
      Aggregate agg = aggregate(ratios[zi * epsilons.size() + ei]);
      AdviceSweepCell cell;
      cell.zeta = zetas[zi];
      cell.epsilon = epsilons[ei];
      // representative lambda; instances in a suite share (L, U, beta)
      cell.lambda = lambda_from_epsilon(instances[0].direction, pre[0].ratio_bound,
                                        epsilons[ei]);
      cell.mean_ratio = agg.mean;
      cell.p95_ratio = agg.p95;
      cell.max_ratio = agg.max;
      out.push_back(cell);
    }
  }
  return out;
}

SyntheticTraces synthetic_traces(int session_count, std::uint64_t seed) {
  if (session_count < 1) fail("parameter", "need at least one session");
  Rng rng(seed);
  SyntheticTraces traces;

  int days = 30 + (session_count + 1) / 2 + 2;
  int hours = days * 24;
  traces.carbon.hours.reserve(static_cast<size_t>(hours));
  traces.carbon.intensity.reserve(static_cast<size_t>(hours));
  traces.solar.hours.reserve(static_cast<size_t>(hours));
  const double pi = 3.14159265358979323846;

  // per-day weather: overall grid mix level and a cloud-cover factor that
  // drives both the midday carbon dip and local solar output
  std::vector<double> level(static_cast<size_t>(days));
  std::vector<double> sunny(static_cast<size_t>(days));
  for (int d = 0; d < days; ++d) {
    level[d] = 340.0 + rng.uniform(-60.0, 60.0) +
               20.0 * std::sin(2.0 * pi * d / 7.0);
    sunny[d] = rng.uniform(0.3, 1.2);
  }

  for (int h = 0; h < hours; ++h) {
    int hod = h % 24;
    int day = h / 24;
    // diurnal shape: demand peak in the evening, trough before dawn, plus a
    // solar-driven dip that bottoms out in the early afternoon
    double night = 50.0 * std::cos(2.0 * pi * (hod - 18) / 24.0);
    double dip = hod >= 7 && hod <= 19 ? std::sin(pi * (hod - 7) / 12.0) : 0.0;
    double c = level[static_cast<size_t>(day)] + night -
               165.0 * sunny[static_cast<size_t>(day)] * dip +
               rng.uniform(-15.0, 15.0);
    traces.carbon.hours.push_back(h);
    traces.carbon.intensity.push_back(std::max(c, 10.0));

    double elev = -15.0, dni = 0.0, dhi = 0.0;
    if (hod > 6 && hod < 18) {
      double arc = std::sin(pi * (hod - 6) / 12.0);
      elev = 60.0 * arc;
      dni = 750.0 * arc * sunny[static_cast<size_t>(day)];
      dhi = 90.0 * (0.4 + 0.6 * sunny[static_cast<size_t>(day)]);
    }
    traces.solar.hours.push_back(h);
    traces.solar.dhi_wm2.push_back(dhi);
    traces.solar.dni_wm2.push_back(dni);
    traces.solar.elevation_deg.push_back(elev);
  }

  traces.sessions.reserve(static_cast<size_t>(session_count));
  for (int i = 0; i < session_count; ++i) {
    ChargingSession s;
    int day = 30 + i / 2;
    int start, duration;
    if (i % 2 == 0) {
      // overnight home charge: plug in near the evening peak, leave in the morning
      start = 17 + static_cast<int>(rng.bits() % 4);
      duration = 10 + static_cast<int>(rng.bits() % 5);
    } else {
      // workplace top-up: arrive mid-morning, leave in the early afternoon
      start = 8 + static_cast<int>(rng.bits() % 3);
      duration = 5 + static_cast<int>(rng.bits() % 2);
    }
    s.arrival_hour = static_cast<long long>(day) * 24 + start;
    s.departure_hour = s.arrival_hour + duration;
    if (rng.uniform() < 0.5) {
      s.demand_kwh = rng.uniform(8.0, 18.0);  // single-slot-capable demand
    } else {
      s.demand_kwh = rng.uniform(20.0, 19.0 * duration * 0.55);
    }
    s.charger_rate_kw = 19.0;
    traces.sessions.push_back(s);
  }
  return traces;
}

std::vector<EvChargeRow> evcharge_sweep(const CarbonSeries& carbon, const SolarSeries& solar,
                                        const std::vector<ChargingSession>& sessions,
                                        const std::vector<double>& dc_ratings,
                                        const std::vector<double>& betas,
                                        double advice_lambda, double advice_zeta,
                                        int workers) {
  if (sessions.empty()) fail("parameter", "no sessions to sweep");
  if (dc_ratings.empty() || betas.empty())
    fail("parameter", "dc-rating and beta grids must be nonempty");
  if (!(advice_lambda >= 0.0 && advice_lambda <= 1.0))
    fail("parameter", "lambda must lie in [0, 1]");

  const int per_session = static_cast<int>(dc_ratings.size() * betas.size());
  const int total = static_cast<int>(sessions.size()) * per_session;
  std::vector<EvChargeRow> rows(static_cast<size_t>(total));
  parallel_for(total, workers, [&](int idx) {
    int si = idx / per_session;
    int rest = idx % per_session;
    int di = rest / static_cast<int>(betas.size());
    int bi = rest % static_cast<int>(betas.size());
    EvChargeRow row;
    row.session = si;
    row.dc_rating = dc_ratings[static_cast<size_t>(di)];
    row.beta = betas[static_cast<size_t>(bi)];
    try {
      Instance inst =
          build_instance(sessions[static_cast<size_t>(si)], carbon, solar,
                         row.dc_rating, row.beta);
      OfflineResult opt = solve_offline(inst);
      row.opt_objective = opt.report.objective;
      auto score = [&](const Schedule& s) {
        return ratio_against(inst.direction, evaluate(inst, s).objective,
                             opt.report.objective);
      };
      row.roro_ratio = score(roro_run(inst));
      double bound = alpha(inst.L, inst.U, inst.beta);
      TrustParams trust;
      trust.lambda = advice_lambda;
      trust.epsilon = (bound - 1.0) * (1.0 - advice_lambda);
      trust.ratio = bound;
      row.ro_advice_ratio =
          score(ro_advice_run(inst, simulate_advice(inst, advice_zeta), trust));
      row.owt_ratio = score(owt_algorithm(inst));
      row.simple_threshold_ratio = score(simple_threshold(inst));
      row.carbon_agnostic_ratio = score(carbon_agnostic(inst));
    } catch (const Error& e) {
      fail(e.kind(), std::string(e.what()) + " (session " + std::to_string(si) + ")");
    }
    rows[static_cast<size_t>(idx)] = row;
  });
  return rows;
}

Aggregate aggregate(std::vector<double> values) {
  Aggregate agg;
  if (values.empty()) return agg;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  agg.mean = sum / static_cast<double>(values.size());
  size_t rank = static_cast<size_t>(
      std::ceil(0.95 * static_cast<double>(values.size())));
  agg.p95 = values[std::min(values.size() - 1, rank == 0 ? 0 : rank - 1)];
  agg.max = values.back();
  return agg;
}

std::string format_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_file(const std::string& path, const std::string& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("data", "cannot open " + path + " for writing");
  out << header << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i];
    }
    out << "\n";
  }
  if (!out) fail("data", "failed writing " + path);
}

}  // namespace ocs
