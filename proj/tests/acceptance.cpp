// Acceptance harness: every release criterion runs as a numbered check that
// prints exactly one [PASS]/[FAIL] line. Run all by default, one criterion
// with --only N. --cli PATH points at the command line binary for the
// determinism checks; without it criterion 12 reports a failure.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ocs/adversarial.hpp"
#include "ocs/advice.hpp"
#include "ocs/core.hpp"
#include "ocs/evcharge.hpp"
#include "ocs/experiments.hpp"
#include "ocs/numeric.hpp"
#include "ocs/offline.hpp"
#include "ocs/roro.hpp"
#include "ocs/thresholds.hpp"

using namespace ocs;

namespace {

std::string g_cli_path;
int g_workers = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------- criterion 1: Lambert W residuals ----------

Outcome criterion_lambert() {
  double worst = 0.0;
  double worst_x = 0.0;
  auto probe = [&](double x) {
    double w = lambert_w0(x);
    double resid = std::abs(w * std::exp(w) - x) / std::max(1.0, std::abs(x));
    if (resid > worst) {
      worst = resid;
      worst_x = x;
    }
  };
  double bp = -std::exp(-1.0);
  for (int i = 0; i < 300; ++i) probe(bp + 1e-9 + (0.0 - bp - 1e-9) * i / 299.0);
  for (int i = 0; i <= 700; ++i) probe(std::pow(10.0, -6.0 + 12.0 * i / 700.0));
  std::ostringstream os;
  os << "max scaled residual " << worst << " at x = " << worst_x;
  return {worst <= 1e-12, os.str()};
}

// ---------- criterion 2: threshold boundary identities ----------

Outcome criterion_boundaries() {
  Rng rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double L = rng.uniform(0.1, 10.0);
    double U = L * (1.0 + rng.uniform(0.01, 10.0));
    double bmin = rng.uniform(0.0, 0.999 * (U - L) / 2.0);
    double bmax = rng.uniform(0.0, 0.4995 * std::min(L, U - L));
    auto pmin = ThresholdParams::make(Direction::Minimize, L, U, bmin);
    auto pmax = ThresholdParams::make(Direction::Maximize, L, U, bmax);
    worst = std::max(worst, std::abs(pmin.phi(1.0) - (L + bmin)));
    worst = std::max(worst, std::abs(pmax.phi(1.0) - (U - bmax)));
  }
  std::ostringstream os;
  os << "max boundary defect " << worst << " over 50 random parameter draws";
  return {worst <= 1e-9, os.str()};
}

// ---------- criterion 3: zero switching cost reductions ----------

// independent closed-form reference for the beta = 0 threshold policy
Schedule owt_reference(const Instance& inst) {
  const int T = inst.horizon();
  double a = alpha(inst.L, inst.U, 0.0);
  double om = inst.direction == Direction::Maximize ? omega(inst.L, inst.U, 0.0) : 0.0;
  Schedule s;
  s.x.assign(static_cast<size_t>(T), 0.0);
  std::vector<double> suffix(static_cast<size_t>(T) + 1, 0.0);
  for (int t = T - 1; t >= 0; --t)
    suffix[static_cast<size_t>(t)] =
        suffix[static_cast<size_t>(t) + 1] + std::min(inst.rates[static_cast<size_t>(t)], 1.0);
  double w = 0.0;
  bool compulsory = false;
  for (int t = 0; t < T; ++t) {
    double need = 1.0 - w;
    if (need <= kRateTol) break;
    if (!compulsory && suffix[static_cast<size_t>(t) + 1] < need - kRateTol)
      compulsory = true;
    double cap = std::min({inst.rates[static_cast<size_t>(t)], 1.0, need});
    double x;
    if (compulsory) {
      x = cap;
    } else {
      double c = inst.pricing[static_cast<size_t>(t)].segments().front().slope;
      double w_target;
      if (inst.direction == Direction::Minimize) {
        // invert phi(w) = U + (U/a - U) e^{w/a}; clamping covers prices
        // outside [L, U/a]
        double arg = (inst.U - c) / (inst.U - inst.U / a);
        w_target = arg <= 0.0 ? 0.0 : std::clamp(a * std::log(arg), 0.0, 1.0);
      } else {
        // invert phi(w) = L + (om L - L) e^{om w}; clamping covers prices
        // outside [om L, U]
        double arg = (c - inst.L) / (om * inst.L - inst.L);
        w_target = arg <= 0.0 ? 0.0 : std::clamp(std::log(arg) / om, 0.0, 1.0);
      }
      x = std::clamp(w_target - w, 0.0, cap);
    }
    s.x[static_cast<size_t>(t)] = x;
    w += x;
  }
  return s;
}

Outcome criterion_zero_beta() {
  // ratio formulas collapse onto the switching-free forms
  Rng rng(77);
  double worst_ratio = 0.0;
  for (int i = 0; i < 50; ++i) {
    double L = rng.uniform(0.2, 5.0);
    double U = L * (1.0 + rng.uniform(0.05, 8.0));
    double a = alpha(L, U, 0.0);
    double a0 = 1.0 / (lambert_w0((L / U - 1.0) * std::exp(-1.0)) + 1.0);
    double om = omega(L, U, 0.0);
    double om0 = 1.0 + lambert_w0((U / L - 1.0) * std::exp(-1.0));
    worst_ratio = std::max(worst_ratio, std::abs(a - a0));
    worst_ratio = std::max(worst_ratio, std::abs(om - om0));
  }
  if (worst_ratio > 1e-10) {
    std::ostringstream os;
    os << "ratio formulas deviate by " << worst_ratio;
    return {false, os.str()};
  }

  // stepwise agreement with the independent threshold-policy reference
  double worst_step = 0.0;
  Rng rng2(78);
  for (int i = 0; i < 100; ++i) {
    auto dir = i % 2 == 0 ? Direction::Minimize : Direction::Maximize;
    Instance inst;
    inst.direction = dir;
    inst.beta = 0.0;
    inst.L = 1.0;
    inst.U = 3.0;
    int T = 50;
    for (int t = 0; t < T; ++t) {
      inst.rates.push_back(rng2.uniform(0.3, 1.0));
      inst.pricing.push_back(PricingFunction::linear(rng2.uniform(1.0, 3.0)));
    }
    inst.validate(true);
    auto ours = roro_run(inst);
    auto ref = owt_reference(inst);
    for (int t = 0; t < T; ++t)
      worst_step = std::max(worst_step, std::abs(ours.x[static_cast<size_t>(t)] -
                                                 ref.x[static_cast<size_t>(t)]));
  }
  std::ostringstream os;
  os << "ratio formulas match; max stepwise deviation " << worst_step
     << " over 100 linear-price instances";
  return {worst_step <= 1e-5, os.str()};
}

// ---------- criterion 4: pseudo cost convexity ----------

Outcome criterion_pseudo_convexity() {
  Rng rng(4004);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    auto dir = i % 2 == 0 ? Direction::Minimize : Direction::Maximize;
    double L = rng.uniform(0.5, 2.0);
    double U = L * (1.0 + rng.uniform(0.1, 3.0));
    double beta = dir == Direction::Minimize
                      ? rng.uniform(0.0, 0.49 * (U - L))
                      : rng.uniform(0.0, 0.49 * std::min(L, U - L));
    RoroState st;
    st.params = ThresholdParams::make(dir, L, U, beta);
    st.w = rng.uniform(0.0, 0.9);
    st.x_prev = rng.uniform(0.0, 1.0);
    PricingFunction g = [&] {
      int nseg = 1 + static_cast<int>(rng.bits() % 3);
      std::vector<double> sl(static_cast<size_t>(nseg));
      for (auto& s : sl) s = rng.uniform(L, U);
      std::sort(sl.begin(), sl.end());
      if (dir == Direction::Maximize) std::reverse(sl.begin(), sl.end());
      std::vector<Segment> segs;
      for (int k = 0; k < nseg; ++k)
        segs.push_back({(k + 1) / static_cast<double>(nseg), sl[static_cast<size_t>(k)]});
      return PricingFunction(segs);
    }();
    double span = 1.0 - st.w;
    double h = span / 101.0;  // probes stay strictly inside the pcost domain
    for (int k = 1; k < 100; ++k) {
      double x = k * h;
      double d2 = pcost(g, st, x + h) - 2.0 * pcost(g, st, x) + pcost(g, st, x - h);
      worst = std::min(worst, d2);  // most negative second difference
    }
  }
  std::ostringstream os;
  os << "most negative second difference " << worst << " across 200 states";
  return {worst >= -1e-8, os.str()};
}

// ---------- criterion 5: exact solver vs grid enumeration ----------

Outcome criterion_offline_vs_grid() {
  Rng rng(5005);
  double worst_gap = 0.0;
  double worst_under = 0.0;
  for (int i = 0; i < 200; ++i) {
    auto dir = i % 2 == 0 ? Direction::Minimize : Direction::Maximize;
    int T = 1 + static_cast<int>(rng.bits() % 5);
    Instance inst;
    inst.direction = dir;
    inst.L = 1.0;
    inst.U = 2.0;
    inst.beta = dir == Direction::Minimize ? rng.uniform(0.0, 0.45) : rng.uniform(0.0, 0.45);
    for (int t = 0; t < T; ++t) {
      inst.rates.push_back(1.0);
      int nseg = 1 + static_cast<int>(rng.bits() % 3);
      std::vector<double> sl(static_cast<size_t>(nseg));
      for (auto& s : sl) s = rng.uniform(1.0, 2.0);
      std::sort(sl.begin(), sl.end());
      if (dir == Direction::Maximize) std::reverse(sl.begin(), sl.end());
      std::vector<Segment> segs;
      for (int k = 0; k < nseg; ++k)
        segs.push_back({(k + 1) / static_cast<double>(nseg), sl[static_cast<size_t>(k)]});
      inst.pricing.emplace_back(segs);
    }
    inst.validate(true);
    auto exact = solve_offline(inst);
    auto grid = brute_force(inst, 10);
    double sign = dir == Direction::Minimize ? 1.0 : -1.0;
    double gap = sign * (grid.report.objective - exact.report.objective);
    worst_under = std::min(worst_under, gap);
    worst_gap = std::max(worst_gap, gap - (inst.U + 2.0 * inst.beta) / 10.0);
  }

  // identical slopes: closed-form optimum c + 2 beta / T
  double worst_uniform = 0.0;
  for (int T = 1; T <= 8; ++T) {
    Instance inst;
    inst.direction = Direction::Minimize;
    inst.L = 1.0;
    inst.U = 2.0;
    inst.beta = 0.2;
    for (int t = 0; t < T; ++t) {
      inst.rates.push_back(1.0);
      inst.pricing.push_back(PricingFunction::linear(1.5));
    }
    auto res = solve_offline(inst);
    worst_uniform = std::max(
        worst_uniform, std::abs(res.report.objective - (1.5 + 0.4 / T)));
  }
  std::ostringstream os;
  os << "grid never beats exact by more than " << -worst_under
     << ", max slack over bound " << worst_gap << ", uniform defect "
     << worst_uniform;
  return {worst_under >= -1e-9 && worst_gap <= 1e-9 && worst_uniform <= 1e-9,
          os.str()};
}

// ---------- criteria 6 and 7: adversarial sweeps ----------

struct SweepStats {
  double max_ratio = 0.0;
  // ratio minus (guarantee + end correction); negative means the corrected
  // bound holds with room to spare
  double max_corrected_gap = -std::numeric_limits<double>::infinity();
  double x_at_max = 0.0;
};

SweepStats run_sweep(Direction dir, double L, double U, double beta) {
  auto algorithm = [](const Instance& inst) { return roro_run(inst); };
  auto rows = cr_sweep(dir, L, U, beta, 200, 20, algorithm, 50, g_workers);
  double guarantee = dir == Direction::Minimize ? alpha(L, U, beta) : omega(L, U, beta);
  SweepStats st;
  for (const auto& row : rows) {
    if (row.ratio > st.max_ratio) {
      st.max_ratio = row.ratio;
      st.x_at_max = row.x;
    }
    double corrected =
        dir == Direction::Minimize
            ? guarantee + 2.0 * beta / row.opt_objective
            : guarantee + 2.0 * beta * guarantee / row.alg_objective;
    st.max_corrected_gap = std::max(st.max_corrected_gap, row.ratio - corrected);
  }
  return st;
}

const std::vector<std::array<double, 3>>& sweep_settings() {
  static const std::vector<std::array<double, 3>> settings = {
      {1.0, 2.0, 0.1}, {1.0, 5.0, 0.25}, {10.0, 40.0, 2.0}};
  return settings;
}

Outcome criterion_sweep_upper() {
  std::ostringstream os;
  bool pass = true;
  for (const auto& [L, U, beta] : sweep_settings()) {
    for (auto dir : {Direction::Minimize, Direction::Maximize}) {
      double guarantee =
          dir == Direction::Minimize ? alpha(L, U, beta) : omega(L, U, beta);
      auto st = run_sweep(dir, L, U, beta);
      bool ok = st.max_ratio <= guarantee + 1e-3;
      pass = pass && ok;
      os << (dir == Direction::Minimize ? "min" : "max") << "(" << L << "," << U
         << "," << beta << "): max ratio " << st.max_ratio << " vs bound "
         << guarantee << " at x = " << st.x_at_max
         << " (gap to end-correction-aware bound " << st.max_corrected_gap
         << "); ";
    }
  }
  return {pass, os.str()};
}

Outcome criterion_sweep_lower() {
  std::ostringstream os;
  bool pass = true;
  for (const auto& [L, U, beta] : sweep_settings()) {
    for (auto dir : {Direction::Minimize, Direction::Maximize}) {
      double guarantee =
          dir == Direction::Minimize ? alpha(L, U, beta) : omega(L, U, beta);
      auto st = run_sweep(dir, L, U, beta);
      bool ok = st.max_ratio >= 0.95 * guarantee;
      pass = pass && ok;
      os << (dir == Direction::Minimize ? "min" : "max") << "(" << L << "," << U
         << "," << beta << "): max ratio " << st.max_ratio << " vs 0.95*"
         << guarantee << "; ";
    }
  }
  return {pass, os.str()};
}

// ---------- criterion 8: unit-trade equivalence ----------

Outcome criterion_unit_trade() {
  Rng rng(8008);
  long long mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    double L = rng.uniform(0.5, 2.0);
    double U = L * (1.0 + rng.uniform(0.1, 4.0));
    double beta = rng.uniform(0.0, 0.2 * (U - L));
    if (L + beta > U - beta) beta = 0.0;
    int k = 1 + static_cast<int>(rng.bits() % 10);
    std::vector<double> thresholds(static_cast<size_t>(k));
    for (auto& v : thresholds) v = rng.uniform(L + beta, U - beta);
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    int T = 1 + static_cast<int>(rng.bits() % 40);
    std::vector<double> prices(static_cast<size_t>(T));
    for (auto& p : prices) p = rng.uniform(L, U);
    auto a = double_threshold_run(prices, thresholds, beta);
    auto b = binary_roro_run(prices, thresholds, beta);
    if (a != b) ++mismatches;
  }
  std::ostringstream os;
  os << mismatches << " mismatches over 10000 random streams";
  return {mismatches == 0, os.str()};
}

// ---------- criterion 9: advice suite ----------

Outcome criterion_advice_suite() {
  const double L = 1.0, U = 2.0, beta = 0.05;
  double a = alpha(L, U, beta);
  auto instances = synthetic_suite(Direction::Minimize, 100, 24, L, U, beta, 424242);
  std::vector<double> zetas = {0.0, 1.0};
  std::vector<double> epsilons = {0.0, 0.25 * (a - 1.0), 0.5 * (a - 1.0), a - 1.0};
  auto cells = advice_sweep(instances, zetas, epsilons, g_workers);

  bool pass = true;
  std::ostringstream os;
  for (const auto& cell : cells) {
    if (cell.zeta == 0.0) {
      double bound = 1.0 + cell.epsilon + 0.01;
      if (cell.max_ratio > bound) {
        pass = false;
        os << "consistency breach: eps " << cell.epsilon << " max ratio "
           << cell.max_ratio << " > " << bound << "; ";
      }
    } else {
      double bound =
          bounds_check(Direction::Minimize, L, U, beta, cell.epsilon).robustness + 0.01;
      if (cell.max_ratio > bound) {
        pass = false;
        os << "robustness breach: eps " << cell.epsilon << " max ratio "
           << cell.max_ratio << " > " << bound << "; ";
      }
    }
    // full distrust collapses both guarantees onto the robust ratio
    if (std::abs(cell.epsilon - (a - 1.0)) < 1e-12 && cell.max_ratio > a + 0.01) {
      pass = false;
      os << "robust collapse breach at zeta " << cell.zeta << ": " << cell.max_ratio
         << " > " << a + 0.01 << "; ";
    }
  }
  if (pass) os << "all " << cells.size() << " cells inside their guarantees";
  return {pass, os.str()};
}

// ---------- criterion 10: solar reference values ----------

Outcome criterion_solar() {
  SolarSeries ss;
  ss.hours = {0, 1, 2};
  ss.dhi_wm2 = {100.0, 1000.0, 0.0};
  ss.dni_wm2 = {800.0, 0.0, 500.0};
  ss.elevation_deg = {30.0, 45.0, -10.0};
  double v0 = solar_generation(ss, 15.0, 0);
  double v1 = solar_generation(ss, 15.0, 1);
  double v2 = solar_generation(ss, 15.0, 2);
  bool pass = std::abs(v0 - 6.1275) <= 1e-9 && std::abs(v1 - 12.255) <= 1e-9 &&
              v2 == 0.0;
  std::ostringstream os;
  os << "15 kW array: " << v0 << " / " << v1 << " kW, night " << v2;
  return {pass, os.str()};
}

// ---------- criterion 11: charging study orderings ----------

Outcome criterion_charging_study() {
  auto traces = synthetic_traces(120, 20262026);
  if (traces.sessions.size() < 100)
    return {false, "fewer than 100 usable sessions generated"};
  std::vector<double> dcs = {0.0};
  std::vector<double> betas = {0.0, 10.0, 40.0};
  auto rows = evcharge_sweep(traces.carbon, traces.solar, traces.sessions, dcs,
                             betas, 0.5, 0.0, g_workers);
  std::map<double, std::vector<const EvChargeRow*>> by_beta;
  for (const auto& row : rows) by_beta[row.beta].push_back(&row);

  auto mean_of = [](const std::vector<const EvChargeRow*>& rs,
                    double EvChargeRow::*field) {
    double acc = 0.0;
    for (const auto* r : rs) acc += r->*field;
    return acc / static_cast<double>(rs.size());
  };

  std::ostringstream os;
  bool pass = true;

  double adv10 = mean_of(by_beta[10.0], &EvChargeRow::ro_advice_ratio);
  double roro10 = mean_of(by_beta[10.0], &EvChargeRow::roro_ratio);
  double st10 = mean_of(by_beta[10.0], &EvChargeRow::simple_threshold_ratio);
  double ca10 = mean_of(by_beta[10.0], &EvChargeRow::carbon_agnostic_ratio);
  os << "at switching weight 10: advice " << adv10 << ", robust " << roro10
     << ", threshold " << st10 << ", agnostic " << ca10 << "; ";
  if (!(adv10 <= roro10 + 1e-9 && roro10 <= st10 + 1e-9 && roro10 <= ca10 + 1e-9)) {
    pass = false;
    os << "ordering violated; ";
  }

  double roro0 = mean_of(by_beta[0.0], &EvChargeRow::roro_ratio);
  double roro40 = mean_of(by_beta[40.0], &EvChargeRow::roro_ratio);
  double owt0 = mean_of(by_beta[0.0], &EvChargeRow::owt_ratio);
  double owt40 = mean_of(by_beta[40.0], &EvChargeRow::owt_ratio);
  os << "degradation: switching-aware " << roro40 - roro0 << " vs oblivious "
     << owt40 - owt0;
  if (!(roro40 - roro0 < owt40 - owt0)) {
    pass = false;
    os << "; switching-aware degraded at least as much as the oblivious baseline";
  }
  return {pass, os.str()};
}

// ---------- criterion 12: CLI determinism ----------

int run_cli(const std::string& args, const std::string& out_path) {
  std::string cmd = g_cli_path + " " + args + " > " + out_path + " 2> " +
                    out_path + ".err";
  return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_cli_determinism() {
  if (g_cli_path.empty())
    return {false, "no --cli path provided"};
  std::string dir;
  {
    char tmpl[] = "/tmp/ocs-acceptance-XXXXXX";
    char* got = mkdtemp(tmpl);
    if (!got) return {false, "cannot create a scratch directory"};
    dir = got;
  }
  auto path = [&](const std::string& name) { return dir + "/" + name; };

  // identical manifests; runs differ only in worker count and output path
  {
    std::ofstream cfg(path("cr.json"));
    cfg << "{\"direction\": \"min\", \"L\": 1.0, \"U\": 2.0, \"beta\": 0.1,\n"
        << " \"n\": 30, \"m\": 5, \"points\": 9, \"algorithm\": \"roro\"}\n";
  }
  {
    std::ofstream cfg(path("adv.json"));
    cfg << "{\"direction\": \"min\", \"count\": 6, \"T\": 10, \"L\": 1.0,\n"
        << " \"U\": 2.0, \"beta\": 0.05, \"seed\": 31415,\n"
        << " \"zeta_grid\": [0.0, 1.0], \"epsilon\": [0.0, 0.2]}\n";
  }

  struct Pair {
    std::string a, b;
    std::string what;
  };
  std::vector<Pair> pairs;

  if (run_cli("cr-sweep --config " + path("cr.json") + " --workers 1 --out " + path("cr_a.csv"),
              path("cr_a.log")) != 0)
    return {false, "cr-sweep run failed: " + slurp(path("cr_a.log") + ".err")};
  if (run_cli("cr-sweep --config " + path("cr.json") + " --workers 4 --out " + path("cr_b.csv"),
              path("cr_b.log")) != 0)
    return {false, "cr-sweep rerun failed"};
  pairs.push_back({path("cr_a.csv"), path("cr_b.csv"), "cr-sweep csv"});

  if (run_cli("advice-sweep --config " + path("adv.json") + " --workers 1 --out " +
                  path("adv_a.csv"),
              path("adv_a.log")) != 0)
    return {false, "advice-sweep run failed: " + slurp(path("adv_a.log") + ".err")};
  if (run_cli("advice-sweep --config " + path("adv.json") + " --workers 3 --out " +
                  path("adv_b.csv"),
              path("adv_b.log")) != 0)
    return {false, "advice-sweep rerun failed"};
  pairs.push_back({path("adv_a.csv"), path("adv_b.csv"), "advice-sweep csv"});

  // the summary embeds the csv path, so both runs share one --out and the
  // csv bytes are captured between them
  std::string ev_args =
      " --synthetic 6 --seed 7 --dc-rating 0,12 --beta 0,10 --lambda 0.5 --zeta 0";
  if (run_cli("evcharge" + ev_args + " --workers 1 --out " + path("ev.csv"),
              path("ev_a.json")) != 0)
    return {false, "evcharge run failed: " + slurp(path("ev_a.json") + ".err")};
  std::string ev_csv_first = slurp(path("ev.csv"));
  if (run_cli("evcharge" + ev_args + " --workers 4 --out " + path("ev.csv"),
              path("ev_b.json")) != 0)
    return {false, "evcharge rerun failed"};
  std::string ev_csv_second = slurp(path("ev.csv"));
  if (ev_csv_first.empty()) return {false, "evcharge csv output is empty"};
  if (ev_csv_first != ev_csv_second)
    return {false, "evcharge csv differs between identical runs"};
  pairs.push_back({path("ev_a.json"), path("ev_b.json"), "evcharge summary"});

  for (const auto& p : pairs) {
    std::string a = slurp(p.a);
    std::string b = slurp(p.b);
    if (a.empty()) return {false, p.what + " output is empty"};
    if (a != b) return {false, p.what + " differs between identical runs"};
  }
  std::ostringstream os;
  os << pairs.size() + 1 << " output pairs byte-identical across reruns";
  return {true, os.str()};
}

struct Criterion {
  int id;
  const char* label;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    if (arg == "--cli" && i + 1 < argc) g_cli_path = argv[++i];
    if (arg == "--workers" && i + 1 < argc) g_workers = std::atoi(argv[++i]);
  }

  std::vector<Criterion> criteria = {
      {1, "lambert w residual", criterion_lambert},
      {2, "threshold boundary identities", criterion_boundaries},
      {3, "zero switching reductions", criterion_zero_beta},
      {4, "pseudo cost convexity", criterion_pseudo_convexity},
      {5, "exact offline vs grid enumeration", criterion_offline_vs_grid},
      {6, "hard stream ratio upper bound", criterion_sweep_upper},
      {7, "hard stream ratio attainment", criterion_sweep_lower},
      {8, "unit trade equivalence", criterion_unit_trade},
      {9, "advice consistency and robustness", criterion_advice_suite},
      {10, "solar generation references", criterion_solar},
      {11, "charging study orderings", criterion_charging_study},
      {12, "cli byte determinism", criterion_cli_determinism},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    if (only != 0 && crit.id != only) continue;
    Outcome out;
    try {
      out = crit.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d: %s (%s)\n", out.pass ? "PASS" : "FAIL",
                crit.id, crit.label, out.detail.c_str());
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
