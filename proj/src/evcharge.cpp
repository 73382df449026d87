#include "ocs/evcharge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "ocs/roro.hpp"
#include "ocs/thresholds.hpp"

namespace ocs {

namespace {

constexpr double kPi = 3.14159265358979323846;

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    size_t b = field.find_first_not_of(" \t\r");
    size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back(std::string());
  return out;
}

[[noreturn]] void bad_row(const char* file_kind, int line_no, const std::string& why) {
  fail("data", std::string(file_kind) + " row at line " + std::to_string(line_no) +
                   " rejected: " + why);
}

double parse_number(const std::string& s, bool& ok) {
  ok = false;
  if (s.empty()) return 0.0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return 0.0;
  ok = true;
  return v;
}

bool looks_like_header(const std::vector<std::string>& fields) {
  if (fields.empty() || fields[0].empty()) return false;
  char c = fields[0][0];
  return (c < '0' || c > '9');
}

int series_index(const std::vector<long long>& hours, long long hour) {
  auto it = std::lower_bound(hours.begin(), hours.end(), hour);
  if (it == hours.end() || *it != hour) return -1;
  return static_cast<int>(it - hours.begin());
}

long long days_from_civil(long long y, unsigned m, unsigned d) {
  y -= m <= 2;
  long long era = (y >= 0 ? y : y - 399) / 400;
  unsigned yoe = static_cast<unsigned>(y - era * 400);
  unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

bool try_parse_timestamp(const std::string& text, long long& epoch_sec) {
  std::string s = text;
  if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.pop_back();
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
  char sep = 0;
  int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &se);
  if (n == 6) {
    se = 0;
  } else if (n != 7) {
    return false;
  }
  if (sep != 'T' && sep != ' ') return false;
  if (mo < 1 || mo > 12 || d < 1 || d > 31) return false;
  if (h < 0 || h > 23 || mi < 0 || mi > 59 || se < 0 || se > 60) return false;
  epoch_sec = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400ll +
              h * 3600ll + mi * 60ll + se;
  return true;
}

}  // namespace

long long parse_timestamp(const std::string& text) {
  long long sec = 0;
  if (!try_parse_timestamp(text, sec))
    fail("data", "unparseable timestamp: " + text);
  return sec;
}

int CarbonSeries::index_of(long long hour) const { return series_index(hours, hour); }
int SolarSeries::index_of(long long hour) const { return series_index(hours, hour); }

CarbonSeries parse_carbon_csv(std::istream& in) {
  CarbonSeries series;
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (first && looks_like_header(fields)) {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 2) bad_row("carbon", line_no, "expected 2 columns");
    long long sec = 0;
    if (!try_parse_timestamp(fields[0], sec)) bad_row("carbon", line_no, "bad timestamp");
    bool ok = false;
    double v = parse_number(fields[1], ok);
    if (!ok || v <= 0.0) bad_row("carbon", line_no, "intensity must be a positive number");
    long long hour = floor_div(sec, 3600);
    if (!series.hours.empty() && hour <= series.hours.back())
      bad_row("carbon", line_no, "timestamps must be strictly increasing");
    series.hours.push_back(hour);
    series.intensity.push_back(v);
  }
  return series;
}

SolarSeries parse_solar_csv(std::istream& in) {
  SolarSeries series;
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (first && looks_like_header(fields)) {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 4) bad_row("solar", line_no, "expected 4 columns");
    long long sec = 0;
    if (!try_parse_timestamp(fields[0], sec)) bad_row("solar", line_no, "bad timestamp");
    bool ok1 = false, ok2 = false, ok3 = false;
    double dhi = parse_number(fields[1], ok1);
    double dni = parse_number(fields[2], ok2);
    double elev = parse_number(fields[3], ok3);
    if (!ok1 || !ok2 || dhi < 0.0 || dni < 0.0)
      bad_row("solar", line_no, "irradiance must be nonnegative");
    if (!ok3 || elev < -90.0 || elev > 90.0)
      bad_row("solar", line_no, "elevation must lie in [-90, 90]");
    long long hour = floor_div(sec, 3600);
    if (!series.hours.empty() && hour <= series.hours.back())
      bad_row("solar", line_no, "timestamps must be strictly increasing");
    series.hours.push_back(hour);
    series.dhi_wm2.push_back(dhi);
    series.dni_wm2.push_back(dni);
    series.elevation_deg.push_back(elev);
  }
  return series;
}

std::vector<ChargingSession> parse_sessions_csv(std::istream& in) {
  std::vector<ChargingSession> sessions;
  std::string line;
  int line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (first && looks_like_header(fields)) {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 3 && fields.size() != 4)
      bad_row("sessions", line_no, "expected 3 or 4 columns");
    long long arr_sec = 0, dep_sec = 0;
    if (!try_parse_timestamp(fields[0], arr_sec)) bad_row("sessions", line_no, "bad arrival");
    if (!try_parse_timestamp(fields[1], dep_sec)) bad_row("sessions", line_no, "bad departure");
    if (dep_sec <= arr_sec) bad_row("sessions", line_no, "departure must follow arrival");
    bool ok = false;
    double demand = parse_number(fields[2], ok);
    if (!ok || demand <= 0.0) bad_row("sessions", line_no, "demand must be positive");
    ChargingSession s;
    s.arrival_hour = ceil_div(arr_sec, 3600);  // whole hours inside the session
    s.departure_hour = floor_div(dep_sec, 3600);
    s.demand_kwh = demand;
    if (fields.size() == 4) {
      bool ok_rate = false;
      double rate = parse_number(fields[3], ok_rate);
      if (!ok_rate || rate <= 0.0) bad_row("sessions", line_no, "charger rate must be positive");
      s.charger_rate_kw = rate;
    }
    if (s.horizon() < 5) continue;  // short sessions are out of scope
    sessions.push_back(s);
  }
  return sessions;
}

namespace {

template <typename Series, typename Parser>
Series load_csv(const std::string& path, Parser parser) {
  std::ifstream in(path);
  if (!in) fail("data", "cannot open " + path);
  return parser(in);
}

}  // namespace

CarbonSeries load_carbon_csv(const std::string& path) {
  return load_csv<CarbonSeries>(path, [](std::istream& in) { return parse_carbon_csv(in); });
}

SolarSeries load_solar_csv(const std::string& path) {
  return load_csv<SolarSeries>(path, [](std::istream& in) { return parse_solar_csv(in); });
}

std::vector<ChargingSession> load_sessions_csv(const std::string& path) {
  return load_csv<std::vector<ChargingSession>>(
      path, [](std::istream& in) { return parse_sessions_csv(in); });
}

double solar_generation(const SolarSeries& series, double dc_rating_kw, int t) {
  if (t < 0 || t >= static_cast<int>(series.hours.size()))
    fail("range", "solar series index out of range");
  if (dc_rating_kw < 0.0) fail("parameter", "dc rating must be nonnegative");
  // below the horizon the direct beam vanishes; diffuse light still counts
  double direct = series.dni_wm2[t] *
                  std::max(0.0, std::sin(series.elevation_deg[t] * kPi / 180.0));
  double gti = direct + series.dhi_wm2[t];
  if (gti < 0.0) gti = 0.0;
  return dc_rating_kw * (gti / 1000.0) * 0.95 * (1.0 - 0.14);
}

Instance build_instance(const ChargingSession& session, const CarbonSeries& carbon,
                        const SolarSeries& solar, double dc_rating_kw, double beta) {
  const int T = session.horizon();
  if (T <= 0) fail("structural", "session has no whole-hour slots");
  if (session.demand_kwh <= 0.0) fail("data", "session demand must be positive");

  // price bounds from the trailing 30 days before arrival
  const long long window = 720;
  int w_begin = carbon.index_of(session.arrival_hour - window);
  int w_end = carbon.index_of(session.arrival_hour - 1);
  if (w_begin < 0 || w_end < 0 || w_end - w_begin != window - 1)
    fail("data", "carbon trace does not cover the 30 days before arrival");
  double lo = carbon.intensity[w_begin];
  double hi = lo;
  for (int i = w_begin; i <= w_end; ++i) {
    lo = std::min(lo, carbon.intensity[i]);
    hi = std::max(hi, carbon.intensity[i]);
  }
  if (hi <= lo) fail("degenerate-parameter", "flat carbon month gives U <= L");

  int c_begin = carbon.index_of(session.arrival_hour);
  int c_end = carbon.index_of(session.departure_hour - 1);
  if (c_begin < 0 || c_end < 0 || c_end - c_begin != T - 1)
    fail("data", "carbon trace does not cover the session");
  int s_begin = -1;
  if (dc_rating_kw > 0.0) {
    s_begin = solar.index_of(session.arrival_hour);
    int s_end = solar.index_of(session.departure_hour - 1);
    if (s_begin < 0 || s_end < 0 || s_end - s_begin != T - 1)
      fail("data", "solar trace does not cover the session");
  }

  Instance inst;
  inst.direction = Direction::Minimize;
  inst.beta = beta;
  inst.L = lo;
  inst.U = hi;
  inst.demand_kwh = session.demand_kwh;
  double rate = std::min(1.0, session.charger_rate_kw / session.demand_kwh);
  inst.rates.assign(static_cast<size_t>(T), rate);
  inst.pricing.reserve(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) {
    // session hours can stray outside the trailing-window estimate; the model
    // promises prices within [L, U], so excursions are clamped to the bounds
    double c = std::clamp(carbon.intensity[c_begin + t], lo, hi);
    double solar_kwh =
        dc_rating_kw > 0.0 ? solar_generation(solar, dc_rating_kw, s_begin + t) : 0.0;
    double breakpoint = solar_kwh / session.demand_kwh;
    std::vector<Segment> segs;
    if (breakpoint >= 1.0 - 1e-12) {
      segs.push_back({1.0, 0.0});
    } else if (breakpoint <= 1e-12) {
      segs.push_back({1.0, c});
    } else {
      segs.push_back({breakpoint, 0.0});
      segs.push_back({1.0, c});
    }
    inst.pricing.emplace_back(std::move(segs));
  }
  inst.validate(false);
  return inst;
}

Schedule carbon_agnostic(const Instance& inst) {
  inst.validate(false);
  Schedule s;
  s.x.assign(static_cast<size_t>(inst.horizon()), 0.0);
  double w = 0.0;
  for (int t = 0; t < inst.horizon() && w < 1.0 - kRateTol; ++t) {
    double x = std::min({inst.rates[t], 1.0, 1.0 - w});
    s.x[t] = x;
    w += x;
  }
  return s;
}

Schedule simple_threshold(const Instance& inst) {
  inst.validate(false);
  const int T = inst.horizon();
  double threshold = std::sqrt(inst.U * inst.L);
  std::vector<double> suffix(static_cast<size_t>(T) + 1, 0.0);
  for (int t = T - 1; t >= 0; --t)
    suffix[t] = suffix[t + 1] + std::min(inst.rates[t], 1.0);

  Schedule s;
  s.x.assign(static_cast<size_t>(T), 0.0);
  double w = 0.0;
  bool compulsory = false;
  for (int t = 0; t < T; ++t) {
    double need = 1.0 - w;
    if (need <= kRateTol) break;
    if (!compulsory && suffix[t + 1] < need - kRateTol) compulsory = true;
    double cap = std::min(inst.rates[t], 1.0);
    double x = 0.0;
    if (compulsory || inst.pricing[t].max_slope() <= threshold + 1e-12)
      x = std::min(cap, need);
    s.x[t] = x;
    w += x;
  }
  return s;
}

Schedule owt_algorithm(const Instance& inst) {
  inst.validate(false);
  return roro_run(inst, ThresholdParams::make(inst.direction, inst.L, inst.U, 0.0));
}

}  // namespace ocs
