#include "uavnet/scenario_io.hpp"

#include <set>
#include <string>

#include "uavnet/canonical_json.hpp"
#include "uavnet/error.hpp"

namespace uavnet {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::validation, path + ": " + what);
}

void require_keys(const json& object, const std::string& path, const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
  if (!object.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : object.items()) {
    if (!allowed.count(key)) fail(path, "unknown key '" + key + "'");
  }
  for (const std::string& key : required) {
    if (!object.contains(key)) fail(path, "missing key '" + key + "'");
  }
}

int get_int(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail(path, "expected an integer");
  return value.get<int>();
}

double get_number(const json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  return value.get<double>();
}

const json& get_array(const json& doc, const char* key) {
  const json& value = doc.at(key);
  if (!value.is_array()) fail(key, "expected an array");
  return value;
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  require_keys(doc, "scenario", {"users", "ground_links", "demand", "params", "meta"},
               {"users", "ground_links", "demand", "params"});
  Scenario s;

  const json& users = get_array(doc, "users");
  for (std::size_t i = 0; i < users.size(); ++i) {
    const std::string path = "users[" + std::to_string(i) + "]";
    require_keys(users[i], path, {"id", "x", "y"}, {"id", "x", "y"});
    GroundUser u;
    u.id = get_int(users[i]["id"], path + ".id");
    u.position = {get_number(users[i]["x"], path + ".x"), get_number(users[i]["y"], path + ".y")};
    s.users.push_back(u);
  }

  const json& links = get_array(doc, "ground_links");
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string path = "ground_links[" + std::to_string(i) + "]";
    if (!links[i].is_array() || links[i].size() != 2) fail(path, "expected a pair [i, j]");
    s.ground_links.emplace_back(get_int(links[i][0], path), get_int(links[i][1], path));
  }

  const json& demand = get_array(doc, "demand");
  for (std::size_t i = 0; i < demand.size(); ++i) {
    const std::string path = "demand[" + std::to_string(i) + "]";
    require_keys(demand[i], path, {"src", "dst", "kbps"}, {"src", "dst", "kbps"});
    s.demand.push_back({get_int(demand[i]["src"], path + ".src"), get_int(demand[i]["dst"], path + ".dst"),
                        get_number(demand[i]["kbps"], path + ".kbps")});
  }

  apply_json(s.params, doc.at("params"), "params");
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) fail("meta", "expected an object");
    s.meta = doc["meta"];
  }
  normalize_and_validate(s);
  return s;
}

json scenario_to_json(const Scenario& s) {
  json users = json::array();
  for (const GroundUser& u : s.users) {
    users.push_back({{"id", u.id}, {"x", u.position.x}, {"y", u.position.y}});
  }
  json links = json::array();
  for (const auto& [a, b] : s.ground_links) links.push_back(json::array({a, b}));
  json demand = json::array();
  for (const Demand& d : s.demand) {
    demand.push_back({{"src", d.src}, {"dst", d.dst}, {"kbps", d.kbps}});
  }
  json doc = {{"users", users}, {"ground_links", links}, {"demand", demand}, {"params", to_json(s.params)}};
  if (!s.meta.is_null()) doc["meta"] = s.meta;
  return doc;
}

std::string serialize_scenario(const Scenario& scenario) {
  return canonical_dump(scenario_to_json(scenario));
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(parse_json_text(read_text_file(path), path));
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  write_text_file(path, serialize_scenario(scenario));
}

}  // namespace uavnet
