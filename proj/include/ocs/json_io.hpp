#pragma once

#include <string>

#include "json.hpp"
#include "ocs/advice.hpp"
#include "ocs/core.hpp"

namespace ocs {

// Document layout: {direction, T, beta, L, U, rates: [...],
// pricing: [[[x, slope], ...], ...]}; demand_kwh optional.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SolutionReport& rep);

// Accepts either a bare array of fractions or {"x_hat": [...]}.
AdviceVector advice_from_json(const nlohmann::json& j);
nlohmann::json advice_to_json(const AdviceVector& advice);

nlohmann::json load_json_file(const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace ocs
