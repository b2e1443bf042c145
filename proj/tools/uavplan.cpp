// uavplan: command-line front end. Links only the C API in uavnet.h.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uavnet/uavnet.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

int g_verbosity = 1;  // 0 quiet, 1 info, 2 debug

struct CliFailure {
  int exit_code;
  std::string code;
  std::string message;
};

void log_info(const std::string& line) {
  if (g_verbosity >= 1) std::fprintf(stderr, "info: %s\n", line.c_str());
}

void log_warning(const std::string& line) {
  if (g_verbosity >= 1) std::fprintf(stderr, "warning: %s\n", line.c_str());
}

// Invalid arguments are usage errors; everything else the library reports is a domain error.
void check(uavnet_status status) {
  if (status == UAVNET_OK) return;
  const int exit_code = status == UAVNET_E_INVALID_ARGUMENT ? kExitUsage : kExitDomain;
  throw CliFailure{exit_code, uavnet_status_name(status), uavnet_last_error()};
}

[[noreturn]] void usage_error(const std::string& message) {
  throw CliFailure{kExitUsage, "E_USAGE", message};
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using ConfigPtr = std::unique_ptr<uavnet_config, Deleter<uavnet_config, uavnet_config_destroy>>;
using ScenarioPtr = std::unique_ptr<uavnet_scenario, Deleter<uavnet_scenario, uavnet_scenario_destroy>>;
using PlanPtr = std::unique_ptr<uavnet_plan, Deleter<uavnet_plan, uavnet_plan_destroy>>;
using RoutingPtr = std::unique_ptr<uavnet_routing, Deleter<uavnet_routing, uavnet_routing_destroy>>;

std::string take_string(char* raw) {
  std::string out = raw ? raw : "";
  uavnet_string_free(raw);
  return out;
}

std::vector<std::string> consumer_keys(const char* consumer) {
  char* raw = nullptr;
  check(uavnet_config_keys(consumer, &raw));
  std::vector<std::string> keys;
  std::stringstream in(take_string(raw));
  for (std::string key; std::getline(in, key, ',');) keys.push_back(key);
  return keys;
}

std::set<std::string> all_known_keys() {
  std::set<std::string> keys;
  for (const char* consumer : {"generate", "plan", "route", "sweep"}) {
    for (const std::string& k : consumer_keys(consumer)) keys.insert(k);
  }
  return keys;
}

// Config file values are JSON scalars or arrays; arrays become comma lists.
std::string config_value_text(const std::string& key, const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number() || value.is_boolean()) return value.dump();
  if (value.is_array()) {
    std::string out;
    for (const json& item : value) out += (out.empty() ? "" : ",") + config_value_text(key, item);
    return out;
  }
  usage_error("config key '" + key + "' must be a number, string, or array");
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliFailure{kExitDomain, "E_IO", "cannot open config file '" + path + "'"};
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw CliFailure{kExitDomain, "E_PARSE", "config file '" + path + "': " + e.what()};
  }
  if (!doc.is_object()) throw CliFailure{kExitDomain, "E_PARSE", "config file '" + path + "' must hold a JSON object"};
  const std::set<std::string> known = all_known_keys();
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw CliFailure{kExitDomain, "E_VALIDATION", "config file '" + path + "': unknown key '" + key + "'"};
    out[key] = config_value_text(key, value);
  }
  return out;
}

// One subcommand's `--key value` overrides, registered from the library's key list.
struct KeyOptions {
  std::vector<std::string> keys;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app, const std::vector<std::string>& consumer) {
    for (const std::string& key : consumer) {
      if (options.count(key)) continue;
      keys.push_back(key);
      options[key] = app->add_option("--" + key, values[key], "override '" + key + "'")->take_last();
    }
  }

  // Flags given on the command line, last occurrence winning.
  std::map<std::string, std::string> given() const {
    std::map<std::string, std::string> out;
    for (const std::string& key : keys) {
      const CLI::Option* opt = options.at(key);
      if (opt->count() == 0) continue;
      if (opt->count() > 1) {
        log_warning("--" + key + " given " + std::to_string(opt->count()) + " times; using last value '" +
                    values.at(key) + "'");
      }
      out[key] = values.at(key);
    }
    return out;
  }
};

struct Invocation {
  std::vector<std::string> argv;
  std::string config_path;
  std::map<std::string, std::string> config_values;
};

json command_meta(const Invocation& inv) {
  json meta = {{"command", inv.argv}, {"tool_version", uavnet_version()}};
  if (!inv.config_values.empty()) meta["config"] = inv.config_values;
  return meta;
}

// Builds a config holding `keys` from the config file, then flags on top.
ConfigPtr make_config(const std::vector<std::string>& keys, const std::map<std::string, std::string>& file_values,
                      const std::map<std::string, std::string>& flags) {
  ConfigPtr config(uavnet_config_create());
  if (!config) throw CliFailure{kExitDomain, "E_INTERNAL", "out of memory"};
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : file_values) {
    if (allowed.count(k)) check(uavnet_config_set(config.get(), k.c_str(), v.c_str()));
  }
  for (const auto& [k, v] : flags) {
    if (allowed.count(k)) check(uavnet_config_set(config.get(), k.c_str(), v.c_str()));
  }
  return config;
}

std::vector<std::string> param_keys() { return consumer_keys("params"); }

void log_params(const uavnet_scenario* scenario) {
  char* raw = nullptr;
  check(uavnet_scenario_params_json(scenario, &raw));
  log_info("resolved params " + take_string(raw));
}

void log_resolved(const char* what, const std::vector<std::string>& keys, const std::map<std::string, std::string>& file,
                  const std::map<std::string, std::string>& flags) {
  json resolved = json::object();
  for (const std::string& k : keys) {
    if (flags.count(k)) {
      resolved[k] = flags.at(k);
    } else if (file.count(k)) {
      resolved[k] = file.at(k);
    }
  }
  log_info(std::string("resolved ") + what + " overrides " + resolved.dump() + " (others default)");
}

// Loads a scenario and applies parameter flags on top of the file's own parameters.
ScenarioPtr load_scenario_with_flags(const std::string& path, const std::map<std::string, std::string>& flags) {
  uavnet_scenario* raw = nullptr;
  check(uavnet_scenario_load(path.c_str(), &raw));
  ScenarioPtr scenario(raw);
  ConfigPtr params = make_config(param_keys(), {}, flags);
  check(uavnet_scenario_apply_params(scenario.get(), params.get()));
  log_params(scenario.get());
  return scenario;
}

int run_generate(const Invocation& inv, const KeyOptions& keys, const std::string& out) {
  const auto flags = keys.given();
  const std::vector<std::string> consumer = consumer_keys("generate");
  log_resolved("generator", consumer, inv.config_values, flags);
  ConfigPtr config = make_config(consumer, inv.config_values, flags);
  uavnet_scenario* raw = nullptr;
  check(uavnet_generate(config.get(), &raw));
  ScenarioPtr scenario(raw);
  log_params(scenario.get());
  check(uavnet_scenario_set_meta(scenario.get(), command_meta(inv).dump().c_str()));
  check(uavnet_scenario_save(scenario.get(), out.c_str()));
  log_info("wrote scenario with " + std::to_string(uavnet_scenario_user_count(scenario.get())) + " users and " +
           std::to_string(uavnet_scenario_demand_count(scenario.get())) + " OD pairs to " + out);
  return kExitOk;
}

int run_plan(const Invocation& inv, const KeyOptions& keys, const std::string& scenario_path, const std::string& out) {
  const auto flags = keys.given();
  ScenarioPtr scenario = load_scenario_with_flags(scenario_path, flags);
  const std::vector<std::string> consumer = consumer_keys("plan");
  log_resolved("planner", consumer, inv.config_values, flags);
  ConfigPtr config = make_config(consumer, inv.config_values, flags);
  uavnet_plan* raw = nullptr;
  check(uavnet_plan_create(scenario.get(), config.get(), &raw));
  PlanPtr plan(raw);
  check(uavnet_plan_save(plan.get(), out.c_str(), command_meta(inv).dump().c_str()));
  log_info("wrote plan with " + std::to_string(uavnet_plan_uav_count(plan.get())) + " UAVs (" +
           std::to_string(uavnet_plan_relay_count(plan.get())) + " relays) to " + out);
  return kExitOk;
}

int run_route(const Invocation& inv, const KeyOptions& keys, const std::string& scenario_path,
              const std::string& plan_path, const std::string& out, const std::string& lp_out) {
  const auto flags = keys.given();
  ScenarioPtr scenario = load_scenario_with_flags(scenario_path, flags);
  PlanPtr plan;
  if (!plan_path.empty()) {
    uavnet_plan* raw = nullptr;
    check(uavnet_plan_load(scenario.get(), plan_path.c_str(), &raw));
    plan.reset(raw);
  } else {
    log_info("no plan given; routing over ground links only");
  }
  const std::vector<std::string> consumer = consumer_keys("route");
  log_resolved("solver", consumer, inv.config_values, flags);
  ConfigPtr config = make_config(consumer, inv.config_values, flags);
  if (!lp_out.empty()) {
    check(uavnet_export_lp(scenario.get(), plan.get(), lp_out.c_str()));
    log_info("wrote LP export to " + lp_out);
  }
  uavnet_routing* raw = nullptr;
  check(uavnet_route(scenario.get(), plan.get(), config.get(), &raw));
  RoutingPtr routing(raw);
  check(uavnet_routing_save(routing.get(), out.c_str(), command_meta(inv).dump().c_str()));
  double eta = 0.0;
  double power = 0.0;
  check(uavnet_eval(scenario.get(), routing.get(), &eta, &power));
  char line[160];
  std::snprintf(line, sizeof line, "wrote routing to %s (eta=%.6f total_power_w=%.6f)", out.c_str(), eta, power);
  log_info(line);
  return kExitOk;
}

int run_eval(const std::string& scenario_path, const std::string& routing_path) {
  uavnet_scenario* raw_s = nullptr;
  check(uavnet_scenario_load(scenario_path.c_str(), &raw_s));
  ScenarioPtr scenario(raw_s);
  uavnet_routing* raw_r = nullptr;
  check(uavnet_routing_load(routing_path.c_str(), &raw_r));
  RoutingPtr routing(raw_r);
  double eta = 0.0;
  double power = 0.0;
  check(uavnet_eval(scenario.get(), routing.get(), &eta, &power));
  std::printf("eta=%.6f\ntotal_power_w=%.6f\n", eta, power);
  return kExitOk;
}

int run_sweep(const Invocation& inv, const KeyOptions& keys, const std::string& csv_out, const std::string& json_out) {
  const auto flags = keys.given();
  const std::vector<std::string> consumer = consumer_keys("sweep");
  log_resolved("sweep", consumer, inv.config_values, flags);
  ConfigPtr config = make_config(consumer, inv.config_values, flags);
  check(uavnet_sweep(config.get(), csv_out.c_str(), json_out.empty() ? nullptr : json_out.c_str(),
                     command_meta(inv).dump().c_str()));
  log_info("wrote sweep table to " + csv_out + (json_out.empty() ? "" : " and " + json_out));
  return kExitOk;
}

int run_verify(const std::string& lp_path, const std::string& routing_path, double tol, const std::string& out) {
  char* raw = nullptr;
  const uavnet_status status = uavnet_verify_files(lp_path.c_str(), routing_path.c_str(), tol, &raw);
  const std::string report = take_string(raw);
  if (!report.empty()) {
    if (out.empty()) {
      std::printf("%s", report.c_str());
    } else {
      std::ofstream file(out, std::ios::binary);
      file << report;
      if (!file) throw CliFailure{kExitDomain, "E_IO", "cannot write '" + out + "'"};
    }
  }
  check(status);
  log_info("verification passed");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Invocation inv;
  for (int i = 1; i < argc; ++i) inv.argv.emplace_back(argv[i]);

  CLI::App app{"UAV deployment planning and energy-aware routing toolkit"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.footer(
      "Parameter precedence: --key flags > scenario file > config file > defaults.\n"
      "The config file is a JSON object of key/value pairs, read from --config or $UAVPLAN_CONFIG.\n"
      "Exit status: 0 success, 1 domain error, 2 usage error.");
  bool quiet = false;
  bool verbose = false;
  app.add_flag("-q,--quiet", quiet, "Only print errors");
  app.add_flag("-v,--verbose", verbose, "Print debug diagnostics");
  app.add_option("--config", inv.config_path, "JSON config file (default: $UAVPLAN_CONFIG)");

  std::string out;
  std::string in_a;
  std::string in_b;
  std::string lp_out;
  std::string json_out;
  double tol = 1e-6;

  // Key lists are fixed by the library; a failure here is an internal error.
  std::vector<std::string> generate_keys, plan_keys, route_keys, sweep_keys, params;
  try {
    generate_keys = consumer_keys("generate");
    plan_keys = consumer_keys("plan");
    route_keys = consumer_keys("route");
    sweep_keys = consumer_keys("sweep");
    params = consumer_keys("params");
  } catch (const CliFailure& f) {
    std::fprintf(stderr, "error: %s: %s\n", f.code.c_str(), f.message.c_str());
    return kExitDomain;
  }

  CLI::App* generate = app.add_subcommand("generate", "Generate a clustered scenario");
  generate->add_option("-o,--output", out, "Scenario file to write")->required();
  KeyOptions generate_opts;
  generate_opts.attach(generate, generate_keys);

  CLI::App* plan = app.add_subcommand("plan", "Cluster, place, merge, and connect UAVs");
  plan->add_option("scenario", in_a, "Scenario file")->required();
  plan->add_option("-o,--output", out, "Plan file to write")->required();
  KeyOptions plan_opts;
  plan_opts.attach(plan, params);
  plan_opts.attach(plan, plan_keys);

  CLI::App* route = app.add_subcommand("route", "Solve the routing MILP");
  route->add_option("scenario", in_a, "Scenario file")->required();
  route->add_option("plan", in_b, "Plan file (omit to route over ground links only)");
  route->add_option("-o,--output", out, "Routing file to write")->required();
  route->add_option("--lp", lp_out, "Also write the MILP in LP format");
  KeyOptions route_opts;
  route_opts.attach(route, params);
  route_opts.attach(route, route_keys);

  CLI::App* eval = app.add_subcommand("eval", "Print eta and total UAV power of a routing");
  eval->add_option("scenario", in_a, "Scenario file")->required();
  eval->add_option("routing", in_b, "Routing file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "Run the experiment sweep");
  sweep->add_option("-o,--output", out, "CSV table to write")->required();
  sweep->add_option("--json", json_out, "Also write the JSON table");
  KeyOptions sweep_opts;
  sweep_opts.attach(sweep, sweep_keys);

  CLI::App* verify = app.add_subcommand("verify", "Check a routing file against an LP export");
  verify->add_option("lp", in_a, "LP file written by route --lp")->required();
  verify->add_option("routing", in_b, "Routing file")->required();
  verify->add_option("--tol", tol, "Relative tolerance")->check(CLI::PositiveNumber);
  verify->add_option("-o,--output", out, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: E_USAGE: %s\n", e.what());
    std::fprintf(stderr, "run with --help for usage\n");
    return kExitUsage;
  }
  g_verbosity = quiet ? 0 : (verbose ? 2 : 1);

  try {
    if (inv.config_path.empty()) {
      if (const char* env = std::getenv("UAVPLAN_CONFIG"); env && *env) inv.config_path = env;
    }
    if (!inv.config_path.empty()) {
      inv.config_values = load_config_file(inv.config_path);
      log_info("loaded config " + inv.config_path);
    }
    if (generate->parsed()) return run_generate(inv, generate_opts, out);
    if (plan->parsed()) return run_plan(inv, plan_opts, in_a, out);
    if (route->parsed()) return run_route(inv, route_opts, in_a, in_b, out, lp_out);
    if (eval->parsed()) return run_eval(in_a, in_b);
    if (sweep->parsed()) return run_sweep(inv, sweep_opts, out, json_out);
    if (verify->parsed()) return run_verify(in_a, in_b, tol, out);
  } catch (const CliFailure& f) {
    std::fprintf(stderr, "error: %s: %s\n", f.code.c_str(), f.message.c_str());
    return f.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: E_INTERNAL: %s\n", e.what());
    return kExitDomain;
  }
  return kExitUsage;
}
