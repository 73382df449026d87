#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ocs/adversarial.hpp"
#include "ocs/advice.hpp"
#include "ocs/evcharge.hpp"
#include "ocs/experiments.hpp"
#include "ocs/json_io.hpp"
#include "ocs/offline.hpp"
#include "ocs/roro.hpp"
#include "ocs/thresholds.hpp"

namespace {

using nlohmann::json;

json maybe_config(const std::string& path) {
  if (path.empty()) return json::object();
  json j = ocs::load_json_file(path);
  if (!j.is_object()) ocs::fail("structural", "config manifest must be a JSON object");
  return j;
}

void apply(const json& c, const char* key, double& v) {
  if (c.contains(key)) v = c.at(key).get<double>();
}
void apply(const json& c, const char* key, int& v) {
  if (c.contains(key)) v = c.at(key).get<int>();
}
void apply(const json& c, const char* key, long long& v) {
  if (c.contains(key)) v = c.at(key).get<long long>();
}
void apply(const json& c, const char* key, std::string& v) {
  if (c.contains(key)) v = c.at(key).get<std::string>();
}
void apply(const json& c, const char* key, std::vector<double>& v) {
  if (c.contains(key)) v = c.at(key).get<std::vector<double>>();
}

double ratio_of(ocs::Direction direction, double alg, double opt) {
  if (std::abs(opt) <= 1e-12 && std::abs(alg) <= 1e-12) return 1.0;
  return direction == ocs::Direction::Minimize ? alg / std::max(opt, 1e-12)
                                               : opt / std::max(alg, 1e-12);
}

void emit_json(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) ocs::fail("data", "cannot open " + out_path + " for writing");
  out << j.dump(2) << "\n";
}

void emit_csv(const std::string& out_path, const std::string& header,
              const std::vector<std::vector<std::string>>& rows) {
  if (out_path.empty()) {
    std::cout << header << "\n";
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << row[i];
      }
      std::cout << "\n";
    }
    return;
  }
  ocs::write_csv_file(out_path, header, rows);
}

struct SolveArgs {
  std::string config, instance, algorithm = "roro", advice, out;
  double epsilon = 0.0;
  double lambda = -1.0;  // <0 means derive from epsilon
};

void run_solve(SolveArgs a) {
  json c = maybe_config(a.config);
  apply(c, "instance", a.instance);
  apply(c, "algorithm", a.algorithm);
  apply(c, "advice", a.advice);
  apply(c, "epsilon", a.epsilon);
  apply(c, "lambda", a.lambda);
  apply(c, "out", a.out);
  if (a.instance.empty()) ocs::fail("parameter", "solve requires --instance");

  ocs::Instance inst = ocs::load_instance(a.instance);
  ocs::Schedule sched;
  if (a.algorithm == "roro") {
    sched = ocs::roro_run(inst);
  } else if (a.algorithm == "owt") {
    sched = ocs::owt_algorithm(inst);
  } else if (a.algorithm == "simple-threshold") {
    sched = ocs::simple_threshold(inst);
  } else if (a.algorithm == "carbon-agnostic") {
    sched = ocs::carbon_agnostic(inst);
  } else if (a.algorithm == "ro-advice") {
    if (a.advice.empty())
      ocs::fail("missing-advice", "ro-advice requires --advice with an x_hat file");
    ocs::AdviceVector advice = ocs::advice_from_json(ocs::load_json_file(a.advice));
    double bound = inst.direction == ocs::Direction::Minimize
                       ? ocs::alpha(inst.L, inst.U, inst.beta)
                       : ocs::omega(inst.L, inst.U, inst.beta);
    ocs::TrustParams trust;
    if (a.lambda >= 0.0) {
      trust.lambda = a.lambda;
      trust.epsilon = (bound - 1.0) * (1.0 - a.lambda);
      trust.ratio = bound;
    } else {
      trust = ocs::TrustParams::make(inst.direction, bound, a.epsilon);
    }
    sched = ocs::ro_advice_run(inst, advice, trust);
  } else {
    ocs::fail("unknown-algorithm", "no algorithm named '" + a.algorithm + "'");
  }

  ocs::SolutionReport rep = ocs::evaluate(inst, sched);
  ocs::OfflineResult opt = ocs::solve_offline(inst);
  json out{{"algorithm", a.algorithm},
           {"schedule", ocs::schedule_to_json(sched)},
           {"report", ocs::report_to_json(rep)},
           {"opt_objective", opt.report.objective},
           {"opt_method", opt.method},
           {"ratio", ratio_of(inst.direction, rep.objective, opt.report.objective)}};
  emit_json(out, a.out);
}

struct OfflineArgs {
  std::string config, instance, oracle = "auto", out;
  int grid = 10;
};

void run_offline(OfflineArgs a) {
  json c = maybe_config(a.config);
  apply(c, "instance", a.instance);
  apply(c, "oracle", a.oracle);
  apply(c, "grid", a.grid);
  apply(c, "out", a.out);
  if (a.instance.empty()) ocs::fail("parameter", "offline requires --instance");

  ocs::Instance inst = ocs::load_instance(a.instance);
  ocs::OfflineResult res;
  if (a.oracle == "auto") {
    res = ocs::solve_offline(inst);
  } else if (a.oracle == "lp") {
    res = ocs::solve_offline_lp(inst);
  } else if (a.oracle == "dp") {
    res = ocs::solve_offline_dp(inst);
  } else if (a.oracle == "brute") {
    res = ocs::brute_force(inst, a.grid);
  } else if (a.oracle == "worst") {
    res = ocs::solve_worst(inst);
  } else {
    ocs::fail("unknown-algorithm", "no oracle named '" + a.oracle + "'");
  }
  json out{{"method", res.method},
           {"schedule", ocs::schedule_to_json(res.schedule)},
           {"report", ocs::report_to_json(res.report)}};
  emit_json(out, a.out);
}

struct CrSweepArgs {
  std::string config, direction = "min", algorithm = "roro", out;
  double L = 1.0, U = 2.0, beta = 0.0;
  int n = 200, m = 20, points = 50, workers = 1;
};

void run_cr_sweep(CrSweepArgs a) {
  json c = maybe_config(a.config);
  apply(c, "direction", a.direction);
  apply(c, "algorithm", a.algorithm);
  apply(c, "L", a.L);
  apply(c, "U", a.U);
  apply(c, "beta", a.beta);
  apply(c, "n", a.n);
  apply(c, "m", a.m);
  apply(c, "points", a.points);
  apply(c, "workers", a.workers);
  apply(c, "out", a.out);

  ocs::Direction dir = ocs::direction_from_string(a.direction);
  ocs::ScheduleAlgorithm algorithm;
  if (a.algorithm == "roro") {
    algorithm = [](const ocs::Instance& inst) { return ocs::roro_run(inst); };
  } else if (a.algorithm == "owt") {
    algorithm = [](const ocs::Instance& inst) { return ocs::owt_algorithm(inst); };
  } else {
    ocs::fail("unknown-algorithm", "no algorithm named '" + a.algorithm + "'");
  }
  double bound = dir == ocs::Direction::Minimize ? ocs::alpha(a.L, a.U, a.beta)
                                                 : ocs::omega(a.L, a.U, a.beta);
  auto rows = ocs::cr_sweep(dir, a.L, a.U, a.beta, a.n, a.m, algorithm, a.points,
                            a.workers);
  std::vector<std::vector<std::string>> csv;
  csv.reserve(rows.size());
  for (const auto& r : rows) {
    csv.push_back({ocs::format_double(r.x), ocs::format_double(r.alg_objective),
                   ocs::format_double(r.opt_objective), ocs::format_double(r.ratio),
                   ocs::format_double(bound)});
  }
  emit_csv(a.out, "x,alg_objective,opt_objective,ratio,bound", csv);
}

struct AdviceSweepArgs {
  std::string config, direction = "min", out;
  int count = 100, T = 24, workers = 1;
  double L = 1.0, U = 2.0, beta = 0.05;
  long long seed = -1;
  std::vector<double> zeta_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> epsilon;
};

void run_advice_sweep(AdviceSweepArgs a) {
  json c = maybe_config(a.config);
  apply(c, "direction", a.direction);
  apply(c, "count", a.count);
  apply(c, "T", a.T);
  apply(c, "L", a.L);
  apply(c, "U", a.U);
  apply(c, "beta", a.beta);
  apply(c, "seed", a.seed);
  apply(c, "workers", a.workers);
  apply(c, "zeta_grid", a.zeta_grid);
  apply(c, "epsilon", a.epsilon);
  apply(c, "out", a.out);
  if (a.seed < 0) ocs::fail("parameter", "advice-sweep requires a nonnegative --seed");

  ocs::Direction dir = ocs::direction_from_string(a.direction);
  double bound = dir == ocs::Direction::Minimize ? ocs::alpha(a.L, a.U, a.beta)
                                                 : ocs::omega(a.L, a.U, a.beta);
  if (a.epsilon.empty())
    a.epsilon = {0.0, 0.25 * (bound - 1.0), 0.5 * (bound - 1.0), bound - 1.0};
  std::sort(a.zeta_grid.begin(), a.zeta_grid.end());
  std::sort(a.epsilon.begin(), a.epsilon.end());

  auto instances = ocs::synthetic_suite(dir, a.count, a.T, a.L, a.U, a.beta,
                                        static_cast<std::uint64_t>(a.seed));
  auto cells = ocs::advice_sweep(instances, a.zeta_grid, a.epsilon, a.workers);
  std::vector<std::vector<std::string>> csv;
  csv.reserve(cells.size());
  for (const auto& cell : cells) {
    csv.push_back({ocs::format_double(cell.zeta), ocs::format_double(cell.epsilon),
                   ocs::format_double(cell.lambda), ocs::format_double(cell.mean_ratio),
                   ocs::format_double(cell.p95_ratio),
                   ocs::format_double(cell.max_ratio)});
  }
  emit_csv(a.out, "zeta,epsilon,lambda,mean_ratio,p95_ratio,max_ratio", csv);
}

struct EvChargeArgs {
  std::string config, carbon, solar, sessions, out;
  int synthetic = 0, workers = 1;
  long long seed = -1;
  double lambda = 0.5, zeta = 0.0;
  std::vector<double> dc_rating{0.0};
  std::vector<double> beta{10.0};
};

void run_evcharge(EvChargeArgs a) {
  json c = maybe_config(a.config);
  apply(c, "carbon", a.carbon);
  apply(c, "solar", a.solar);
  apply(c, "sessions", a.sessions);
  apply(c, "synthetic", a.synthetic);
  apply(c, "seed", a.seed);
  apply(c, "workers", a.workers);
  apply(c, "lambda", a.lambda);
  apply(c, "zeta", a.zeta);
  apply(c, "dc_rating", a.dc_rating);
  apply(c, "beta", a.beta);
  apply(c, "out", a.out);
  if (a.out.empty()) ocs::fail("parameter", "evcharge requires --out for the CSV");

  ocs::CarbonSeries carbon;
  ocs::SolarSeries solar;
  std::vector<ocs::ChargingSession> sessions;
  if (a.synthetic > 0) {
    if (a.seed < 0)
      ocs::fail("parameter", "synthetic traces require a nonnegative --seed");
    ocs::SyntheticTraces traces =
        ocs::synthetic_traces(a.synthetic, static_cast<std::uint64_t>(a.seed));
    carbon = std::move(traces.carbon);
    solar = std::move(traces.solar);
    sessions = std::move(traces.sessions);
  } else {
    if (a.carbon.empty() || a.sessions.empty())
      ocs::fail("parameter", "evcharge requires --carbon and --sessions (or --synthetic)");
    carbon = ocs::load_carbon_csv(a.carbon);
    if (!a.solar.empty()) solar = ocs::load_solar_csv(a.solar);
    sessions = ocs::load_sessions_csv(a.sessions);
    bool wants_solar = false;
    for (double dc : a.dc_rating) wants_solar = wants_solar || dc > 0.0;
    if (wants_solar && a.solar.empty())
      ocs::fail("parameter", "nonzero --dc-rating requires --solar");
  }

  std::sort(a.dc_rating.begin(), a.dc_rating.end());
  std::sort(a.beta.begin(), a.beta.end());
  auto rows = ocs::evcharge_sweep(carbon, solar, sessions, a.dc_rating, a.beta,
                                  a.lambda, a.zeta, a.workers);

  std::vector<std::vector<std::string>> csv;
  csv.reserve(rows.size());
  for (const auto& r : rows) {
    csv.push_back({std::to_string(r.session), ocs::format_double(r.dc_rating),
                   ocs::format_double(r.beta), ocs::format_double(r.opt_objective),
                   ocs::format_double(r.roro_ratio),
                   ocs::format_double(r.ro_advice_ratio), ocs::format_double(r.owt_ratio),
                   ocs::format_double(r.simple_threshold_ratio),
                   ocs::format_double(r.carbon_agnostic_ratio)});
  }
  emit_csv(a.out,
           "session,dc_rating,beta,opt_objective,roro_ratio,ro_advice_ratio,owt_ratio,"
           "simple_threshold_ratio,carbon_agnostic_ratio",
           csv);

  json cells = json::array();
  for (double dc : a.dc_rating) {
    for (double beta : a.beta) {
      std::vector<double> roro, advice_r, owt, thr, agnostic;
      for (const auto& r : rows) {
        if (r.dc_rating != dc || r.beta != beta) continue;
        roro.push_back(r.roro_ratio);
        advice_r.push_back(r.ro_advice_ratio);
        owt.push_back(r.owt_ratio);
        thr.push_back(r.simple_threshold_ratio);
        agnostic.push_back(r.carbon_agnostic_ratio);
      }
      auto pack = [](const ocs::Aggregate& agg) {
        return json{{"mean", agg.mean}, {"p95", agg.p95}, {"max", agg.max}};
      };
      cells.push_back({{"dc_rating", dc},
                       {"beta", beta},
                       {"roro", pack(ocs::aggregate(roro))},
                       {"ro_advice", pack(ocs::aggregate(advice_r))},
                       {"owt", pack(ocs::aggregate(owt))},
                       {"simple_threshold", pack(ocs::aggregate(thr))},
                       {"carbon_agnostic", pack(ocs::aggregate(agnostic))}});
    }
  }
  json summary{{"sessions", sessions.size()},
               {"lambda", a.lambda},
               {"zeta", a.zeta},
               {"csv", a.out},
               {"cells", std::move(cells)}};
  std::cout << summary.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online conversion with switching costs: algorithms and experiments"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run an online algorithm on an instance file");
  solve->add_option("--config", solve_args.config, "JSON manifest overriding flags");
  solve->add_option("--instance", solve_args.instance, "Instance JSON file");
  solve->add_option("--algorithm", solve_args.algorithm,
                    "roro | owt | simple-threshold | carbon-agnostic | ro-advice");
  solve->add_option("--advice", solve_args.advice, "Advice JSON (x_hat) for ro-advice");
  solve->add_option("--epsilon", solve_args.epsilon, "Consistency slack for ro-advice");
  solve->add_option("--lambda", solve_args.lambda, "Direct trust weight (overrides epsilon)");
  solve->add_option("--out", solve_args.out, "Result JSON path (stdout when omitted)");

  OfflineArgs offline_args;
  auto* offline = app.add_subcommand("offline", "Solve the offline problem for an instance");
  offline->add_option("--config", offline_args.config, "JSON manifest overriding flags");
  offline->add_option("--instance", offline_args.instance, "Instance JSON file");
  offline->add_option("--oracle", offline_args.oracle, "auto | lp | dp | brute | worst");
  offline->add_option("--grid", offline_args.grid, "Brute-force discretization level");
  offline->add_option("--out", offline_args.out, "Result JSON path (stdout when omitted)");

  CrSweepArgs cr_args;
  auto* cr = app.add_subcommand("cr-sweep", "Empirical competitive ratio over the hard family");
  cr->add_option("--config", cr_args.config, "JSON manifest overriding flags");
  cr->add_option("--direction", cr_args.direction, "min | max");
  cr->add_option("--algorithm", cr_args.algorithm, "roro | owt");
  cr->add_option("--L", cr_args.L, "Price lower bound");
  cr->add_option("--U", cr_args.U, "Price upper bound");
  cr->add_option("--beta", cr_args.beta, "Switching coefficient");
  cr->add_option("--n", cr_args.n, "Price-grid resolution of the family");
  cr->add_option("--m", cr_args.m, "Batch length of the family");
  cr->add_option("--points", cr_args.points, "Number of target prices to sweep");
  cr->add_option("--workers", cr_args.workers, "Worker threads");
  cr->add_option("--out", cr_args.out, "CSV path (stdout when omitted)");

  AdviceSweepArgs adv_args;
  auto* adv = app.add_subcommand("advice-sweep", "Trust/advice-quality grid on synthetic instances");
  adv->add_option("--config", adv_args.config, "JSON manifest overriding flags");
  adv->add_option("--direction", adv_args.direction, "min | max");
  adv->add_option("--count", adv_args.count, "Number of synthetic instances");
  adv->add_option("--T", adv_args.T, "Steps per instance");
  adv->add_option("--L", adv_args.L, "Price lower bound");
  adv->add_option("--U", adv_args.U, "Price upper bound");
  adv->add_option("--beta", adv_args.beta, "Switching coefficient");
  adv->add_option("--seed", adv_args.seed, "Instance generator seed (required)");
  adv->add_option("--workers", adv_args.workers, "Worker threads");
  adv->add_option("--zeta-grid", adv_args.zeta_grid, "Advice corruption levels")
      ->delimiter(',');
  adv->add_option("--epsilon", adv_args.epsilon, "Trust levels (defaults from the bound)")
      ->delimiter(',');
  adv->add_option("--out", adv_args.out, "CSV path (stdout when omitted)");

  EvChargeArgs ev_args;
  auto* ev = app.add_subcommand("evcharge", "Carbon-aware charging case study");
  ev->add_option("--config", ev_args.config, "JSON manifest overriding flags");
  ev->add_option("--carbon", ev_args.carbon, "carbon.csv path");
  ev->add_option("--solar", ev_args.solar, "solar.csv path");
  ev->add_option("--sessions", ev_args.sessions, "sessions.csv path");
  ev->add_option("--synthetic", ev_args.synthetic, "Generate this many synthetic sessions");
  ev->add_option("--seed", ev_args.seed, "Trace generator seed (required for synthetic)");
  ev->add_option("--workers", ev_args.workers, "Worker threads");
  ev->add_option("--lambda", ev_args.lambda, "Trust weight for the combined algorithm");
  ev->add_option("--zeta", ev_args.zeta, "Advice corruption level");
  ev->add_option("--dc-rating", ev_args.dc_rating, "Solar DC ratings (kW)")->delimiter(',');
  ev->add_option("--beta", ev_args.beta, "Switching coefficients (trace units)")
      ->delimiter(',');
  ev->add_option("--out", ev_args.out, "Per-session CSV path (required)");

  try {
    app.parse(argc, argv);
    if (*solve) run_solve(solve_args);
    if (*offline) run_offline(offline_args);
    if (*cr) run_cr_sweep(cr_args);
    if (*adv) run_advice_sweep(adv_args);
    if (*ev) run_evcharge(ev_args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    nlohmann::json err{{"error", "parameter"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const ocs::Error& e) {
    nlohmann::json err{{"error", e.kind()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
