#include "ocs/json_io.hpp"

#include <fstream>

namespace ocs {

using nlohmann::json;

namespace {

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    fail("structural", std::string("missing or non-numeric field '") + key + "'");
  return j[key].get<double>();
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json pricing = json::array();
  for (const auto& g : inst.pricing) {
    json segs = json::array();
    for (const auto& s : g.segments()) segs.push_back({s.upto, s.slope});
    pricing.push_back(std::move(segs));
  }
  json j{{"direction", to_string(inst.direction)},
         {"T", inst.horizon()},
         {"beta", inst.beta},
         {"L", inst.L},
         {"U", inst.U},
         {"rates", inst.rates},
         {"pricing", std::move(pricing)}};
  if (inst.demand_kwh > 0.0) j["demand_kwh"] = inst.demand_kwh;
  return j;
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) fail("structural", "instance document must be an object");
  Instance inst;
  if (!j.contains("direction") || !j["direction"].is_string())
    fail("structural", "missing or non-string field 'direction'");
  inst.direction = direction_from_string(j["direction"].get<std::string>());
  inst.beta = require_number(j, "beta");
  inst.L = require_number(j, "L");
  inst.U = require_number(j, "U");
  if (!j.contains("rates") || !j["rates"].is_array())
    fail("structural", "missing or non-array field 'rates'");
  for (const auto& v : j["rates"]) {
    if (!v.is_number()) fail("structural", "rates entries must be numbers");
    inst.rates.push_back(v.get<double>());
  }
  if (!j.contains("pricing") || !j["pricing"].is_array())
    fail("structural", "missing or non-array field 'pricing'");
  for (const auto& fn : j["pricing"]) {
    if (!fn.is_array()) fail("structural", "each pricing entry must be an array of segments");
    std::vector<Segment> segs;
    for (const auto& seg : fn) {
      if (!seg.is_array() || seg.size() != 2 || !seg[0].is_number() || !seg[1].is_number())
        fail("structural", "pricing segments must be [x, slope] pairs");
      segs.push_back({seg[0].get<double>(), seg[1].get<double>()});
    }
    inst.pricing.emplace_back(std::move(segs));
  }
  if (j.contains("T")) {
    if (!j["T"].is_number_integer())
      fail("structural", "field 'T' must be an integer");
    if (j["T"].get<int>() != inst.horizon())
      fail("structural", "field 'T' disagrees with the pricing length");
  }
  if (j.contains("demand_kwh")) inst.demand_kwh = require_number(j, "demand_kwh");
  return inst;
}

json schedule_to_json(const Schedule& s) { return json(s.x); }

Schedule schedule_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("x")) fail("structural", "schedule object needs field 'x'");
    arr = &j["x"];
  }
  if (!arr->is_array()) fail("structural", "schedule must be an array of fractions");
  Schedule s;
  for (const auto& v : *arr) {
    if (!v.is_number()) fail("structural", "schedule entries must be numbers");
    s.x.push_back(v.get<double>());
  }
  return s;
}

json report_to_json(const SolutionReport& rep) {
  json j{{"trade_cost", rep.trade_cost},
         {"switch_cost", rep.switch_cost},
         {"objective", rep.objective},
         {"feasible", rep.feasible}};
  if (rep.compulsory_start)
    j["compulsory_start"] = *rep.compulsory_start;
  else
    j["compulsory_start"] = nullptr;
  return j;
}

AdviceVector advice_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("x_hat")) fail("structural", "advice object needs field 'x_hat'");
    arr = &j["x_hat"];
  }
  if (!arr->is_array()) fail("structural", "advice must be an array of fractions");
  AdviceVector advice;
  for (const auto& v : *arr) {
    if (!v.is_number()) fail("structural", "advice entries must be numbers");
    advice.x_hat.push_back(v.get<double>());
  }
  return advice;
}

json advice_to_json(const AdviceVector& advice) { return json(advice.x_hat); }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("data", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail("data", "invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

Instance load_instance(const std::string& path) {
  return instance_from_json(load_json_file(path));
}

}  // namespace ocs
