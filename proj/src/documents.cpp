#include "uavnet/documents.hpp"

#include <cmath>
#include <set>

#include "uavnet/error.hpp"

namespace uavnet {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::validation, path + ": " + what);
}

const json& field(const json& object, const std::string& key, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  if (!object.contains(key)) fail(path, "missing key '" + key + "'");
  return object.at(key);
}

void only_keys(const json& object, const std::set<std::string>& allowed, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : object.items()) {
    if (!allowed.count(key)) fail(path, "unknown key '" + key + "'");
  }
}

double number(const json& object, const std::string& key, const std::string& path) {
  const json& v = field(object, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

int integer(const json& object, const std::string& key, const std::string& path) {
  const json& v = field(object, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

const json& array(const json& object, const std::string& key, const std::string& path) {
  const json& v = field(object, key, path);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

MipStatus parse_status(const std::string& name) {
  for (MipStatus s : {MipStatus::optimal, MipStatus::feasible_gap, MipStatus::infeasible, MipStatus::unknown}) {
    if (name == mip_status_name(s)) return s;
  }
  fail("status", "unknown status '" + name + "'");
}

}  // namespace

json plan_to_json(const Plan& plan, const json& meta) {
  const Placement& p = plan.final_placement();
  json uavs = json::array();
  for (int l = 0; l < p.uav_count(); ++l) {
    uavs.push_back({{"x", p.uav_positions[static_cast<std::size_t>(l)].x},
                    {"y", p.uav_positions[static_cast<std::size_t>(l)].y},
                    {"h", p.altitude},
                    {"is_relay", static_cast<bool>(p.is_relay[static_cast<std::size_t>(l)])}});
  }
  json association = json::object();
  for (std::size_t n = 0; n < p.association.size(); ++n) {
    if (p.association[n] >= 0) association[std::to_string(n)] = p.association[n];
  }
  json merges = json::array();
  for (const MergeRecord& m : plan.merged.merge_log) {
    merges.push_back({{"kept", m.kept}, {"removed", m.removed}, {"x", m.position.x}, {"y", m.position.y}});
  }
  json centroids = json::array();
  for (const Point2& c : plan.clustering.centroids) centroids.push_back({{"x", c.x}, {"y", c.y}});
  json clustering = {{"k", plan.clustering.k},
                     {"centroids", centroids},
                     {"assignment", plan.clustering.assignment},
                     {"objective", plan.clustering.objective},
                     {"iterations", plan.clustering.iterations}};
  json connectivity = {{"components_before", plan.connected.components_before},
                       {"relay_lower_bound", plan.connected.relay_lower_bound},
                       {"relays_added", plan.connected.relays_added}};
  return {{"uavs", uavs},         {"association", association}, {"merge_log", merges},
          {"clustering", clustering}, {"connectivity", connectivity}, {"meta", meta}};
}

Placement placement_from_json(const json& doc, const Scenario& scenario) {
  only_keys(doc, {"uavs", "association", "merge_log", "clustering", "connectivity", "meta"}, "plan");
  Placement p;
  p.altitude = scenario.params.altitude;
  const json& uavs = array(doc, "uavs", "plan");
  for (std::size_t l = 0; l < uavs.size(); ++l) {
    const std::string path = "uavs[" + std::to_string(l) + "]";
    only_keys(uavs[l], {"x", "y", "h", "is_relay"}, path);
    p.uav_positions.push_back({number(uavs[l], "x", path), number(uavs[l], "y", path)});
    if (std::abs(number(uavs[l], "h", path) - scenario.params.altitude) > 5e-7) {
      fail(path + ".h", "altitude differs from the scenario's h");
    }
    const json& relay = field(uavs[l], "is_relay", path);
    if (!relay.is_boolean()) fail(path + ".is_relay", "expected a boolean");
    p.is_relay.push_back(relay.get<bool>());
  }
  p.association.assign(scenario.users.size(), -1);
  const json& assoc = field(doc, "association", "plan");
  if (!assoc.is_object()) fail("association", "expected an object");
  for (const auto& [key, value] : assoc.items()) {
    std::size_t used = 0;
    int user = -1;
    try {
      user = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || user < 0 || user >= scenario.user_count()) fail("association." + key, "unknown ground user");
    if (!value.is_number_integer()) fail("association." + key, "expected a UAV index");
    p.association[static_cast<std::size_t>(user)] = value.get<int>();
  }
  validate_placement(p, scenario);
  return p;
}

json routing_to_json(const RoutingSolution& s, const NetworkGraph& graph, const json& meta) {
  json flows = json::array();
  for (const FlowEntry& f : s.flows) flows.push_back({{"q", f.q}, {"edge", f.edge}, {"kbps", f.kbps}});
  json supported = json::array();
  for (std::size_t q = 0; q < s.supported.size(); ++q) supported.push_back({{"q", q}, {"kbps", s.supported[q]}});
  json power = json::array();
  for (std::size_t l = 0; l < s.uav_power.size(); ++l) power.push_back({{"uav", l}, {"watts", s.uav_power[l]}});
  json activation = json::array();
  for (int e = 0; e < graph.edge_count(); ++e) {
    if (graph.edges[static_cast<std::size_t>(e)].kind == LinkKind::ground) continue;
    activation.push_back({{"edge", e}, {"on", s.activation[static_cast<std::size_t>(e)]}});
  }
  json shape = {{"nodes", graph.node_count()}, {"edges", graph.edge_count()}, {"uavs", graph.uav_count}};
  return {{"flows", flows},
          {"supported", supported},
          {"power", power},
          {"activation", activation},
          {"graph", shape},
          {"objective", finite_or_null(s.objective)},
          {"bound", finite_or_null(s.bound)},
          {"status", mip_status_name(s.status)},
          {"meta", meta}};
}

RoutingSolution routing_from_json(const json& doc) {
  only_keys(doc, {"flows", "supported", "power", "activation", "graph", "objective", "bound", "status", "meta"}, "routing");
  RoutingSolution s;
  const json& shape = field(doc, "graph", "routing");
  const int edges = integer(shape, "edges", "graph");
  const int uavs = integer(shape, "uavs", "graph");
  if (edges < 0 || uavs < 0) fail("graph", "negative size");

  const json& supported = array(doc, "supported", "routing");
  for (std::size_t i = 0; i < supported.size(); ++i) {
    const std::string path = "supported[" + std::to_string(i) + "]";
    only_keys(supported[i], {"q", "kbps"}, path);
    if (integer(supported[i], "q", path) != static_cast<int>(i)) fail(path + ".q", "entries must be in commodity order");
    s.supported.push_back(number(supported[i], "kbps", path));
  }
  const json& flows = array(doc, "flows", "routing");
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const std::string path = "flows[" + std::to_string(i) + "]";
    only_keys(flows[i], {"q", "edge", "kbps"}, path);
    s.flows.push_back({integer(flows[i], "q", path), integer(flows[i], "edge", path), number(flows[i], "kbps", path)});
  }
  const json& power = array(doc, "power", "routing");
  if (static_cast<int>(power.size()) != uavs) fail("power", "expected one entry per UAV");
  for (std::size_t i = 0; i < power.size(); ++i) {
    const std::string path = "power[" + std::to_string(i) + "]";
    only_keys(power[i], {"uav", "watts"}, path);
    if (integer(power[i], "uav", path) != static_cast<int>(i)) fail(path + ".uav", "entries must be in UAV order");
    s.uav_power.push_back(number(power[i], "watts", path));
  }
  // Edges not listed in `activation` are ground edges, always on.
  s.activation.assign(static_cast<std::size_t>(edges), 1);
  const json& activation = array(doc, "activation", "routing");
  for (std::size_t i = 0; i < activation.size(); ++i) {
    const std::string path = "activation[" + std::to_string(i) + "]";
    only_keys(activation[i], {"edge", "on"}, path);
    const int e = integer(activation[i], "edge", path);
    if (e < 0 || e >= edges) fail(path + ".edge", "edge index out of range");
    s.activation[static_cast<std::size_t>(e)] = integer(activation[i], "on", path);
  }
  const json& objective = field(doc, "objective", "routing");
  const json& bound = field(doc, "bound", "routing");
  s.objective = objective.is_number() ? objective.get<double>() : NAN;
  s.bound = bound.is_number() ? bound.get<double>() : NAN;
  const json& status = field(doc, "status", "routing");
  if (!status.is_string()) fail("status", "expected a string");
  s.status = parse_status(status.get<std::string>());
  return s;
}

}  // namespace uavnet
