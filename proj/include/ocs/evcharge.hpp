#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ocs/core.hpp"

namespace ocs {

// Hourly grid carbon intensity in gCO2eq per kWh.
struct CarbonSeries {
  std::vector<long long> hours;  // epoch hours, strictly increasing
  std::vector<double> intensity;

  // index of the entry for the given epoch hour, -1 when absent
  int index_of(long long hour) const;
};

// Hourly solar irradiance inputs for the tilted-array generation model.
struct SolarSeries {
  std::vector<long long> hours;
  std::vector<double> dhi_wm2;
  std::vector<double> dni_wm2;
  std::vector<double> elevation_deg;

  int index_of(long long hour) const;
};

struct ChargingSession {
  long long arrival_hour = 0;    // epoch hour, first usable slot
  long long departure_hour = 0;  // epoch hour, one past the last slot
  double demand_kwh = 0.0;
  double charger_rate_kw = 19.0;

  int horizon() const { return static_cast<int>(departure_hour - arrival_hour); }
};

// Parses "YYYY-MM-DD HH:MM[:SS]" (T or space separator, optional trailing Z)
// to epoch seconds. Malformed input raises a data error.
long long parse_timestamp(const std::string& text);

CarbonSeries parse_carbon_csv(std::istream& in);
CarbonSeries load_carbon_csv(const std::string& path);
SolarSeries parse_solar_csv(std::istream& in);
SolarSeries load_solar_csv(const std::string& path);

// Sessions are truncated to the whole hours inside [arrival, departure];
// sessions spanning fewer than 5 such hours are dropped.
std::vector<ChargingSession> parse_sessions_csv(std::istream& in);
std::vector<ChargingSession> load_sessions_csv(const std::string& path);

// Array output in kW at series index t: ground irradiance is
// dni * sin(elevation) + dhi, scaled by the rating, 95% inverter
// efficiency and 14% system losses.
double solar_generation(const SolarSeries& series, double dc_rating_kw, int t);

// Builds the conversion instance for one session: price bounds from the
// trailing 30 days of intensities, per-slot rates from the charger, and
// pricing with a zero-cost segment covering the local solar yield.
Instance build_instance(const ChargingSession& session, const CarbonSeries& carbon,
                        const SolarSeries& solar, double dc_rating_kw, double beta);

// Charges at the maximum rate from arrival until the demand is met.
Schedule carbon_agnostic(const Instance& inst);

// Charges at the maximum rate whenever the slot's grid intensity is at most
// sqrt(U * L), with a compulsory fill near departure.
Schedule simple_threshold(const Instance& inst);

// Switching-oblivious baseline: the threshold algorithm with beta = 0 in its
// decisions while the evaluation still charges the true beta.
Schedule owt_algorithm(const Instance& inst);

}  // namespace ocs
