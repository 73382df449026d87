#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ocs/core.hpp"
#include "ocs/evcharge.hpp"
#include "ocs/numeric.hpp"

namespace ocs {

// Random conversion instance with piecewise-linear pricing: 1-3 segments per
// step with slopes drawn from [L, U], per-step rates in [0.3, 1].
Instance random_instance(Direction direction, int T, double L, double U, double beta,
                         Rng& rng);

std::vector<Instance> synthetic_suite(Direction direction, int count, int T, double L,
                                      double U, double beta, std::uint64_t seed);

struct AdviceSweepCell {
  double zeta = 0.0;
  double epsilon = 0.0;
  double lambda = 0.0;
  double mean_ratio = 0.0;
  double p95_ratio = 0.0;
  double max_ratio = 0.0;
};

// Cross product of advice-quality and trust levels over a fixed instance set;
// each cell aggregates the empirical ratio against the offline optimum.
std::vector<AdviceSweepCell> advice_sweep(const std::vector<Instance>& instances,
                                          const std::vector<double>& zetas,
                                          const std::vector<double>& epsilons,
                                          int workers = 1);

struct SyntheticTraces {
  CarbonSeries carbon;
  SolarSeries solar;
  std::vector<ChargingSession> sessions;
};

// Sinusoidal diurnal carbon trace (wide enough for switching-cost sweeps up
// to 40 trace units), a matching clear-sky solar trace, and charging sessions
// with mixed demands. Deterministic in the seed.
SyntheticTraces synthetic_traces(int session_count, std::uint64_t seed);

struct EvChargeRow {
  int session = 0;
  double dc_rating = 0.0;
  double beta = 0.0;
  double opt_objective = 0.0;
  double roro_ratio = 0.0;
  double ro_advice_ratio = 0.0;
  double owt_ratio = 0.0;
  double simple_threshold_ratio = 0.0;
  double carbon_agnostic_ratio = 0.0;
};

// Per-session ratios for every algorithm across the dc-rating and beta grids.
// Advice for the combined algorithm is simulated at the given zeta; trust is
// parameterized by lambda with the induced epsilon.
std::vector<EvChargeRow> evcharge_sweep(const CarbonSeries& carbon, const SolarSeries& solar,
                                        const std::vector<ChargingSession>& sessions,
                                        const std::vector<double>& dc_ratings,
                                        const std::vector<double>& betas,
                                        double advice_lambda, double advice_zeta,
                                        int workers = 1);

struct Aggregate {
  double mean = 0.0;
  double p95 = 0.0;  // nearest-rank 95th percentile
  double max = 0.0;
};

Aggregate aggregate(std::vector<double> values);

// Shortest decimal round-trip formatting used for all CSV numbers.
std::string format_double(double v);

void write_csv_file(const std::string& path, const std::string& header,
                    const std::vector<std::vector<std::string>>& rows);

}  // namespace ocs
