#pragma once

#include <string>

#include "json.hpp"
#include "uavnet/milp.hpp"
#include "uavnet/placement.hpp"

namespace uavnet {

// Plan file: uavs, association, merge_log, clustering, connectivity, meta.
nlohmann::json plan_to_json(const Plan& plan, const nlohmann::json& meta);

// Reads the placement back and checks it against the scenario.
Placement placement_from_json(const nlohmann::json& document, const Scenario& scenario);

// Routing file: flows, supported, power, activation (UAV edges only), graph
// shape, objective, bound, status, meta.
nlohmann::json routing_to_json(const RoutingSolution& solution, const NetworkGraph& graph, const nlohmann::json& meta);

RoutingSolution routing_from_json(const nlohmann::json& document);

}  // namespace uavnet
