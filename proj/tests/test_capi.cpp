// Exercises the shared library through its C header only.
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "uavnet/uavnet.h"

namespace {

std::string temp_path(const std::string& name) { return std::string(UAVNET_BINARY_DIR) + "/capi_" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string keys_of(const char* consumer) {
  char* raw = nullptr;
  REQUIRE(uavnet_config_keys(consumer, &raw) == UAVNET_OK);
  std::string out = raw;
  uavnet_string_free(raw);
  return out;
}

uavnet_scenario* generate(int seed) {
  uavnet_config* c = uavnet_config_create();
  REQUIRE(uavnet_config_set(c, "seed", std::to_string(seed).c_str()) == UAVNET_OK);
  uavnet_scenario* s = nullptr;
  REQUIRE(uavnet_generate(c, &s) == UAVNET_OK);
  uavnet_config_destroy(c);
  return s;
}

}  // namespace

TEST_CASE("status names and argument errors") {
  CHECK(std::strcmp(uavnet_status_name(UAVNET_OK), "OK") == 0);
  CHECK(std::strcmp(uavnet_status_name(UAVNET_E_VERIFY_FAILED), "E_VERIFY_FAILED") == 0);
  CHECK(uavnet_scenario_load(nullptr, nullptr) == UAVNET_E_INVALID_ARGUMENT);
  CHECK(std::strlen(uavnet_last_error()) > 0);
  uavnet_scenario* s = nullptr;
  CHECK(uavnet_scenario_load("/nonexistent/file.json", &s) == UAVNET_E_IO);
  CHECK(s == nullptr);
  CHECK(uavnet_scenario_user_count(nullptr) == -1);
}

TEST_CASE("config keys are validated per consumer") {
  CHECK(keys_of("route") == "rel_gap,node_limit");
  CHECK(keys_of("params").find("C_max") != std::string::npos);
  char* raw = nullptr;
  CHECK(uavnet_config_keys("nonsense", &raw) == UAVNET_E_INVALID_ARGUMENT);

  uavnet_config* c = uavnet_config_create();
  REQUIRE(uavnet_config_set(c, "da_t0", "5") == UAVNET_OK);
  uavnet_scenario* s = nullptr;
  CHECK(uavnet_generate(c, &s) == UAVNET_E_INVALID_ARGUMENT);
  CHECK(std::string(uavnet_last_error()).find("da_t0") != std::string::npos);
  uavnet_config_destroy(c);
}

TEST_CASE("config values are last-wins") {
  uavnet_config* c = uavnet_config_create();
  REQUIRE(uavnet_config_set(c, "users", "9") == UAVNET_OK);
  REQUIRE(uavnet_config_set(c, "users", "12") == UAVNET_OK);
  REQUIRE(uavnet_config_set(c, "clusters", "3") == UAVNET_OK);
  REQUIRE(uavnet_config_set(c, "od_pairs", "4") == UAVNET_OK);
  uavnet_scenario* s = nullptr;
  REQUIRE(uavnet_generate(c, &s) == UAVNET_OK);
  CHECK(uavnet_scenario_user_count(s) == 12);
  CHECK(uavnet_scenario_demand_count(s) == 4);
  uavnet_scenario_destroy(s);
  uavnet_config_destroy(c);
}

TEST_CASE("domain errors map to their codes") {
  uavnet_config* c = uavnet_config_create();
  REQUIRE(uavnet_config_set(c, "users_per_cluster", "2") == UAVNET_OK);
  REQUIRE(uavnet_config_set(c, "od_pairs", "5") == UAVNET_OK);
  uavnet_scenario* s = nullptr;
  CHECK(uavnet_generate(c, &s) == UAVNET_E_INFEASIBLE_SPEC);
  REQUIRE(uavnet_config_set(c, "od_pairs", "1") == UAVNET_OK);
  REQUIRE(uavnet_config_set(c, "R_a2g", "50") == UAVNET_OK);
  CHECK(uavnet_generate(c, &s) == UAVNET_E_VALIDATION);
  uavnet_config_destroy(c);

  const std::string bad = temp_path("bad.json");
  std::ofstream(bad) << "{\"users\": [";
  CHECK(uavnet_scenario_load(bad.c_str(), &s) == UAVNET_E_PARSE);
}

TEST_CASE("full chain through files") {
  uavnet_scenario* s = generate(7);
  const std::string scenario_path = temp_path("s.json");
  REQUIRE(uavnet_scenario_save(s, scenario_path.c_str()) == UAVNET_OK);
  uavnet_scenario* loaded = nullptr;
  REQUIRE(uavnet_scenario_load(scenario_path.c_str(), &loaded) == UAVNET_OK);
  const std::string again = temp_path("s2.json");
  REQUIRE(uavnet_scenario_save(loaded, again.c_str()) == UAVNET_OK);
  CHECK(slurp(scenario_path) == slurp(again));

  uavnet_plan* plan = nullptr;
  REQUIRE(uavnet_plan_create(loaded, nullptr, &plan) == UAVNET_OK);
  CHECK(uavnet_plan_uav_count(plan) >= 3);
  const std::string plan_path = temp_path("p.json");
  REQUIRE(uavnet_plan_save(plan, plan_path.c_str(), "{\"note\": \"x\"}") == UAVNET_OK);
  CHECK(slurp(plan_path).find("\"note\": \"x\"") != std::string::npos);
  uavnet_plan* plan_loaded = nullptr;
  REQUIRE(uavnet_plan_load(loaded, plan_path.c_str(), &plan_loaded) == UAVNET_OK);
  CHECK(uavnet_plan_uav_count(plan_loaded) == uavnet_plan_uav_count(plan));
  CHECK(uavnet_plan_relay_count(plan_loaded) == uavnet_plan_relay_count(plan));

  uavnet_routing* routing = nullptr;
  REQUIRE(uavnet_route(loaded, plan_loaded, nullptr, &routing) == UAVNET_OK);
  const std::string routing_path = temp_path("r.json");
  REQUIRE(uavnet_routing_save(routing, routing_path.c_str(), nullptr) == UAVNET_OK);
  double eta = -1, power = -1;
  REQUIRE(uavnet_eval(loaded, routing, &eta, &power) == UAVNET_OK);
  CHECK(eta <= 0.05);
  CHECK(power > 0.0);

  const std::string lp_path = temp_path("m.lp");
  REQUIRE(uavnet_export_lp(loaded, plan_loaded, lp_path.c_str()) == UAVNET_OK);
  char* report = nullptr;
  CHECK(uavnet_verify_files(lp_path.c_str(), routing_path.c_str(), 1e-6, &report) == UAVNET_OK);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"passed\": true") != std::string::npos);
  uavnet_string_free(report);

  // A ground-only routing is feasible for the same LP, only not optimal.
  uavnet_routing* ground = nullptr;
  REQUIRE(uavnet_route(loaded, nullptr, nullptr, &ground) == UAVNET_OK);
  const std::string ground_path = temp_path("g.json");
  REQUIRE(uavnet_routing_save(ground, ground_path.c_str(), nullptr) == UAVNET_OK);
  CHECK(uavnet_verify_files(lp_path.c_str(), ground_path.c_str(), 1e-6, &report) == UAVNET_OK);
  uavnet_string_free(report);

  // Inflating one flow breaks conservation at both ends of its edge.
  std::string text = slurp(routing_path);
  const std::size_t at = text.find("\"kbps\": ");
  REQUIRE(at != std::string::npos);
  text.replace(at, text.find(',', at) - at, "\"kbps\": 99999.000000");
  const std::string corrupt_path = temp_path("corrupt.json");
  std::ofstream(corrupt_path, std::ios::binary) << text;
  CHECK(uavnet_verify_files(lp_path.c_str(), corrupt_path.c_str(), 1e-6, &report) == UAVNET_E_VERIFY_FAILED);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"passed\": false") != std::string::npos);
  CHECK(std::string(uavnet_last_error()).find("conservation") != std::string::npos);
  uavnet_string_free(report);

  uavnet_routing_destroy(ground);
  uavnet_routing_destroy(routing);
  uavnet_plan_destroy(plan_loaded);
  uavnet_plan_destroy(plan);
  uavnet_scenario_destroy(loaded);
  uavnet_scenario_destroy(s);
}

TEST_CASE("parameter overrides apply to a loaded scenario") {
  uavnet_scenario* s = generate(3);
  uavnet_config* c = uavnet_config_create();
  REQUIRE(uavnet_config_set(c, "lambda", "0.5") == UAVNET_OK);
  REQUIRE(uavnet_scenario_apply_params(s, c) == UAVNET_OK);
  char* params = nullptr;
  REQUIRE(uavnet_scenario_params_json(s, &params) == UAVNET_OK);
  CHECK(std::string(params).find("\"lambda\":0.5") != std::string::npos);
  uavnet_string_free(params);
  REQUIRE(uavnet_config_set(c, "lambda", "-1") == UAVNET_OK);
  CHECK(uavnet_scenario_apply_params(s, c) == UAVNET_E_VALIDATION);
  uavnet_config_destroy(c);
  uavnet_scenario_destroy(s);
}

TEST_CASE("small sweep writes deterministic tables") {
  uavnet_config* c = uavnet_config_create();
  REQUIRE(uavnet_config_set(c, "users_per_cluster", "3,3") == UAVNET_OK);
  REQUIRE(uavnet_config_set(c, "seeds", "1-2") == UAVNET_OK);
  REQUIRE(uavnet_config_set(c, "od_range", "2,4") == UAVNET_OK);
  REQUIRE(uavnet_config_set(c, "modes", "no-uav,uav-lambda0") == UAVNET_OK);
  const std::string a = temp_path("a.csv"), b = temp_path("b.csv"), j = temp_path("a.json");
  REQUIRE(uavnet_sweep(c, a.c_str(), j.c_str(), nullptr) == UAVNET_OK);
  REQUIRE(uavnet_sweep(c, b.c_str(), nullptr, nullptr) == UAVNET_OK);
  CHECK(slurp(a) == slurp(b));
  const std::string csv = slurp(a);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 8 + 4);
  CHECK(slurp(j).find("\"od_range\"") != std::string::npos);
  REQUIRE(uavnet_config_set(c, "modes", "bogus") == UAVNET_OK);
  CHECK(uavnet_sweep(c, a.c_str(), nullptr, nullptr) == UAVNET_E_INVALID_ARGUMENT);
  uavnet_config_destroy(c);
}
