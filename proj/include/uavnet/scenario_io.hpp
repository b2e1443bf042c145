#pragma once

#include <string>

#include "json.hpp"
#include "uavnet/scenario.hpp"

namespace uavnet {

// Scenario documents have four required sections (users, ground_links,
// demand, params) and an optional free-form `meta` object. Unknown keys
// anywhere else are rejected.
Scenario scenario_from_json(const nlohmann::json& document);
nlohmann::json scenario_to_json(const Scenario& scenario);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);
std::string serialize_scenario(const Scenario& scenario);

}  // namespace uavnet
