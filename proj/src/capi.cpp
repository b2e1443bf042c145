#include "uavnet/uavnet.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <new>
#include <optional>
#include <string>

#include "uavnet/canonical_json.hpp"
#include "uavnet/documents.hpp"
#include "uavnet/error.hpp"
#include "uavnet/experiments.hpp"
#include "uavnet/generator.hpp"
#include "uavnet/lp_format.hpp"
#include "uavnet/scenario_io.hpp"

using nlohmann::json;
using uavnet::Error;
using uavnet::ErrorCode;

struct uavnet_config {
  std::map<std::string, std::string> values;
};

struct uavnet_scenario {
  uavnet::Scenario scenario;
};

struct uavnet_plan {
  std::optional<uavnet::Plan> plan;  // absent for loaded plans
  uavnet::Placement placement;
  json document;
};

struct uavnet_routing {
  uavnet::RoutingSolution solution;
  json document;
};

namespace {

thread_local std::string g_last_error;

uavnet_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return UAVNET_E_INVALID_ARGUMENT;
    case ErrorCode::io: return UAVNET_E_IO;
    case ErrorCode::parse: return UAVNET_E_PARSE;
    case ErrorCode::validation: return UAVNET_E_VALIDATION;
    case ErrorCode::infeasible_spec: return UAVNET_E_INFEASIBLE_SPEC;
    case ErrorCode::not_coverable: return UAVNET_E_NOT_COVERABLE;
    case ErrorCode::relay_budget: return UAVNET_E_RELAY_BUDGET;
    case ErrorCode::solver: return UAVNET_E_SOLVER;
    case ErrorCode::verify_failed: return UAVNET_E_VERIFY_FAILED;
    case ErrorCode::internal: return UAVNET_E_INTERNAL;
  }
  return UAVNET_E_INTERNAL;
}

template <typename F>
uavnet_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return UAVNET_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return UAVNET_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return UAVNET_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const std::vector<std::string> kGeneratorKeys{"clusters",     "users",      "users_per_cluster", "spread", "spacing",
                                              "ground_range", "demand_min", "demand_max",        "od_pairs"};
const std::vector<std::string> kScheduleKeys{"da_t0", "da_alpha", "da_t_min", "da_iters", "da_max_relays"};
const std::vector<std::string> kBranchKeys{"rel_gap", "node_limit"};
const std::vector<std::string> kSweepKeys{"seeds", "od_range", "modes", "energy_lambda", "threads", "timing"};

std::vector<std::string> keys_for(const std::string& consumer) {
  std::vector<std::string> out;
  auto add = [&](const std::vector<std::string>& keys) { out.insert(out.end(), keys.begin(), keys.end()); };
  if (consumer == "params") {
    add(uavnet::param_keys());
  } else if (consumer == "generate") {
    add(kGeneratorKeys);
    add(uavnet::param_keys());
  } else if (consumer == "plan") {
    add(kScheduleKeys);
  } else if (consumer == "route") {
    add(kBranchKeys);
  } else if (consumer == "sweep") {
    add(kGeneratorKeys);
    add(uavnet::param_keys());
    add(kScheduleKeys);
    add(kBranchKeys);
    add(kSweepKeys);
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown config consumer '" + consumer + "'");
  }
  return out;
}

void check_keys(const uavnet_config* config, const std::string& consumer) {
  if (!config) return;
  const std::vector<std::string> allowed = keys_for(consumer);
  for (const auto& [key, _] : config->values) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::invalid_argument, "unknown key '" + key + "' for " + consumer);
    }
  }
}

std::optional<std::string> lookup(const uavnet_config* config, const std::string& key) {
  if (!config) return std::nullopt;
  auto it = config->values.find(key);
  if (it == config->values.end()) return std::nullopt;
  return it->second;
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::invalid_argument, "key '" + key + "': cannot parse '" + text + "' as a number");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::invalid_argument, "key '" + key + "': cannot parse '" + text + "' as an integer");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t stop = text.find(sep, start);
    out.push_back(text.substr(start, stop - start));
    if (stop == std::string::npos) break;
    start = stop + 1;
  }
  return out;
}

std::vector<long long> integer_list(const std::string& key, const std::string& text) {
  std::vector<long long> out;
  for (const std::string& part : split(text, ',')) {
    const std::size_t dash = part.find('-', 1);
    if (dash != std::string::npos) {
      const long long lo = to_integer(key, part.substr(0, dash));
      const long long hi = to_integer(key, part.substr(dash + 1));
      if (hi < lo || hi - lo > 100000) throw Error(ErrorCode::invalid_argument, "key '" + key + "': bad range '" + part + "'");
      for (long long v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(to_integer(key, part));
    }
  }
  return out;
}

void apply_params(uavnet::Params& params, const uavnet_config* config) {
  if (!config) return;
  for (const std::string& key : uavnet::param_keys()) {
    if (auto v = lookup(config, key)) uavnet::apply_override(params, key, *v);
  }
  uavnet::validate(params);
}

uavnet::GenSpec gen_spec_from(const uavnet_config* config) {
  uavnet::GenSpec spec;
  apply_params(spec.params, config);
  spec.seed = spec.params.seed;
  const auto clusters = lookup(config, "clusters");
  const auto users = lookup(config, "users");
  const auto per_cluster = lookup(config, "users_per_cluster");
  if (per_cluster) {
    if (clusters || users) {
      throw Error(ErrorCode::invalid_argument, "users_per_cluster excludes clusters and users");
    }
    spec.users_per_cluster.clear();
    for (long long n : integer_list("users_per_cluster", *per_cluster)) spec.users_per_cluster.push_back(static_cast<int>(n));
  } else if (clusters || users) {
    const long long c = clusters ? to_integer("clusters", *clusters) : static_cast<long long>(spec.users_per_cluster.size());
    const long long n = users ? to_integer("users", *users) : 40;
    if (c <= 0 || n <= 0 || c > 1000 || n > 100000) throw Error(ErrorCode::invalid_argument, "clusters and users must be positive");
    spec.users_per_cluster = uavnet::split_users(static_cast<int>(n), static_cast<int>(c));
  }
  if (auto v = lookup(config, "spread")) spec.spread = to_double("spread", *v);
  if (auto v = lookup(config, "spacing")) spec.spacing = to_double("spacing", *v);
  if (auto v = lookup(config, "ground_range")) spec.ground_range = to_double("ground_range", *v);
  if (auto v = lookup(config, "demand_min")) spec.demand_min = to_double("demand_min", *v);
  if (auto v = lookup(config, "demand_max")) spec.demand_max = to_double("demand_max", *v);
  if (auto v = lookup(config, "od_pairs")) spec.od_pairs = static_cast<int>(to_integer("od_pairs", *v));
  return spec;
}

json gen_spec_json(const uavnet::GenSpec& spec) {
  return {{"users_per_cluster", spec.users_per_cluster}, {"spread", spec.spread},     {"spacing", spec.spacing},
          {"ground_range", spec.ground_range},           {"demand_min", spec.demand_min}, {"demand_max", spec.demand_max},
          {"od_pairs", spec.od_pairs},                    {"seed", spec.seed}};
}

uavnet::DaSchedule schedule_from(const uavnet_config* config) {
  uavnet::DaSchedule s;
  if (auto v = lookup(config, "da_t0")) s.initial_temperature = to_double("da_t0", *v);
  if (auto v = lookup(config, "da_alpha")) s.cooling = to_double("da_alpha", *v);
  if (auto v = lookup(config, "da_t_min")) s.min_temperature = to_double("da_t_min", *v);
  if (auto v = lookup(config, "da_iters")) s.iters_per_temperature = static_cast<int>(to_integer("da_iters", *v));
  if (auto v = lookup(config, "da_max_relays")) s.max_relays = static_cast<int>(to_integer("da_max_relays", *v));
  return s;
}

json schedule_json(const uavnet::DaSchedule& s) {
  return {{"T0", s.initial_temperature},
          {"alpha", s.cooling},
          {"T_min", s.min_temperature},
          {"iters_per_T", s.iters_per_temperature},
          {"max_relays", s.max_relays}};
}

uavnet::BranchOptions branch_from(const uavnet_config* config) {
  uavnet::BranchOptions o;
  if (auto v = lookup(config, "rel_gap")) o.rel_gap = to_double("rel_gap", *v);
  if (auto v = lookup(config, "node_limit")) o.node_limit = to_integer("node_limit", *v);
  if (o.rel_gap < 0.0 || o.node_limit <= 0) throw Error(ErrorCode::invalid_argument, "rel_gap must be >= 0 and node_limit > 0");
  return o;
}

json parse_meta(const char* meta_json) {
  if (!meta_json || !*meta_json) return json::object();
  json m = uavnet::parse_json_text(meta_json, "meta");
  if (!m.is_object()) throw Error(ErrorCode::invalid_argument, "meta must be a JSON object");
  return m;
}

void merge_into(json& target, const json& extra) {
  for (const auto& [key, value] : extra.items()) target[key] = value;
}

uavnet::NetworkGraph graph_for(const uavnet_scenario* s, const uavnet_plan* plan) {
  std::optional<uavnet::Placement> placement;
  if (plan) placement = plan->placement;
  return uavnet::build_graph(s->scenario, placement);
}

}  // namespace

extern "C" {

const char* uavnet_version(void) { return "1.0.0"; }

const char* uavnet_status_name(uavnet_status status) {
  switch (status) {
    case UAVNET_OK: return "OK";
    case UAVNET_E_INVALID_ARGUMENT: return "E_INVALID_ARGUMENT";
    case UAVNET_E_IO: return "E_IO";
    case UAVNET_E_PARSE: return "E_PARSE";
    case UAVNET_E_VALIDATION: return "E_VALIDATION";
    case UAVNET_E_INFEASIBLE_SPEC: return "E_INFEASIBLE_SPEC";
    case UAVNET_E_NOT_COVERABLE: return "E_NOT_COVERABLE";
    case UAVNET_E_RELAY_BUDGET: return "E_RELAY_BUDGET";
    case UAVNET_E_SOLVER: return "E_SOLVER";
    case UAVNET_E_VERIFY_FAILED: return "E_VERIFY_FAILED";
    case UAVNET_E_INTERNAL: return "E_INTERNAL";
  }
  return "E_UNKNOWN";
}

const char* uavnet_last_error(void) { return g_last_error.c_str(); }

void uavnet_string_free(char* text) { std::free(text); }

uavnet_config* uavnet_config_create(void) { return new (std::nothrow) uavnet_config(); }

void uavnet_config_destroy(uavnet_config* config) { delete config; }

uavnet_status uavnet_config_set(uavnet_config* config, const char* key, const char* value) {
  return guard([&] {
    require(config && key && value, "uavnet_config_set: null argument");
    require(*key != '\0', "uavnet_config_set: empty key");
    config->values[key] = value;
  });
}

uavnet_status uavnet_config_keys(const char* consumer, char** keys) {
  return guard([&] {
    require(consumer && keys, "uavnet_config_keys: null argument");
    std::string joined;
    for (const std::string& k : keys_for(consumer)) joined += (joined.empty() ? "" : ",") + k;
    *keys = copy_string(joined);
  });
}

uavnet_status uavnet_generate(const uavnet_config* config, uavnet_scenario** out) {
  return guard([&] {
    require(out != nullptr, "uavnet_generate: null output");
    *out = nullptr;
    check_keys(config, "generate");
    const uavnet::GenSpec spec = gen_spec_from(config);
    auto handle = std::make_unique<uavnet_scenario>();
    handle->scenario = uavnet::generate_scenario(spec);
    handle->scenario.meta = {{"generator", gen_spec_json(spec)}};
    *out = handle.release();
  });
}

uavnet_status uavnet_scenario_load(const char* path, uavnet_scenario** out) {
  return guard([&] {
    require(path && out, "uavnet_scenario_load: null argument");
    *out = nullptr;
    auto handle = std::make_unique<uavnet_scenario>();
    handle->scenario = uavnet::load_scenario(path);
    *out = handle.release();
  });
}

uavnet_status uavnet_scenario_save(const uavnet_scenario* scenario, const char* path) {
  return guard([&] {
    require(scenario && path, "uavnet_scenario_save: null argument");
    uavnet::save_scenario(scenario->scenario, path);
  });
}

void uavnet_scenario_destroy(uavnet_scenario* scenario) { delete scenario; }

uavnet_status uavnet_scenario_apply_params(uavnet_scenario* scenario, const uavnet_config* params) {
  return guard([&] {
    require(scenario != nullptr, "uavnet_scenario_apply_params: null scenario");
    check_keys(params, "params");
    uavnet::Params p = scenario->scenario.params;
    apply_params(p, params);
    scenario->scenario.params = p;
  });
}

uavnet_status uavnet_scenario_params_json(const uavnet_scenario* scenario, char** out) {
  return guard([&] {
    require(scenario && out, "uavnet_scenario_params_json: null argument");
    *out = copy_string(to_json(scenario->scenario.params).dump());
  });
}

uavnet_status uavnet_scenario_set_meta(uavnet_scenario* scenario, const char* meta_json) {
  return guard([&] {
    require(scenario != nullptr, "uavnet_scenario_set_meta: null scenario");
    json meta = scenario->scenario.meta.is_object() ? scenario->scenario.meta : json::object();
    merge_into(meta, parse_meta(meta_json));
    scenario->scenario.meta = meta;
  });
}

int uavnet_scenario_user_count(const uavnet_scenario* scenario) {
  return scenario ? scenario->scenario.user_count() : -1;
}

int uavnet_scenario_demand_count(const uavnet_scenario* scenario) {
  return scenario ? static_cast<int>(scenario->scenario.demand.size()) : -1;
}

uavnet_status uavnet_plan_create(const uavnet_scenario* scenario, const uavnet_config* config, uavnet_plan** out) {
  return guard([&] {
    require(scenario && out, "uavnet_plan_create: null argument");
    *out = nullptr;
    check_keys(config, "plan");
    auto handle = std::make_unique<uavnet_plan>();
    handle->plan = uavnet::plan_deployment(scenario->scenario, schedule_from(config));
    handle->placement = handle->plan->final_placement();
    const uavnet::Params& p = scenario->scenario.params;
    json meta = {{"k", handle->plan->clustering.k},
                 {"seeds", {{"scenario", p.seed}}},
                 {"schedule", schedule_json(handle->plan->connected.schedule)},
                 {"params", to_json(p)}};
    handle->document = uavnet::plan_to_json(*handle->plan, meta);
    *out = handle.release();
  });
}

uavnet_status uavnet_plan_load(const uavnet_scenario* scenario, const char* path, uavnet_plan** out) {
  return guard([&] {
    require(scenario && path && out, "uavnet_plan_load: null argument");
    *out = nullptr;
    auto handle = std::make_unique<uavnet_plan>();
    handle->document = uavnet::parse_json_text(uavnet::read_text_file(path), path);
    handle->placement = uavnet::placement_from_json(handle->document, scenario->scenario);
    *out = handle.release();
  });
}

uavnet_status uavnet_plan_save(const uavnet_plan* plan, const char* path, const char* meta_json) {
  return guard([&] {
    require(plan && path, "uavnet_plan_save: null argument");
    json doc = plan->document;
    if (!doc["meta"].is_object()) doc["meta"] = json::object();
    merge_into(doc["meta"], parse_meta(meta_json));
    uavnet::write_text_file(path, uavnet::canonical_dump(doc));
  });
}

void uavnet_plan_destroy(uavnet_plan* plan) { delete plan; }

int uavnet_plan_uav_count(const uavnet_plan* plan) { return plan ? plan->placement.uav_count() : -1; }

int uavnet_plan_relay_count(const uavnet_plan* plan) { return plan ? plan->placement.relay_count() : -1; }

uavnet_status uavnet_route(const uavnet_scenario* scenario, const uavnet_plan* plan, const uavnet_config* config,
                           uavnet_routing** out) {
  return guard([&] {
    require(scenario && out, "uavnet_route: null argument");
    *out = nullptr;
    check_keys(config, "route");
    const uavnet::BranchOptions options = branch_from(config);
    const uavnet::NetworkGraph graph = graph_for(scenario, plan);
    const auto commodities = uavnet::commodities_of(scenario->scenario);
    auto handle = std::make_unique<uavnet_routing>();
    handle->solution = uavnet::route(graph, commodities, scenario->scenario.params, options);
    json meta = {{"params", to_json(scenario->scenario.params)},
                 {"rel_gap", options.rel_gap},
                 {"node_limit", options.node_limit},
                 {"bb_nodes", handle->solution.nodes},
                 {"uav_count", graph.uav_count},
                 {"total_power_w", handle->solution.total_power()}};
    if (!commodities.empty()) meta["eta"] = uavnet::unsupported_fraction(handle->solution, commodities);
    handle->document = uavnet::routing_to_json(handle->solution, graph, meta);
    *out = handle.release();
  });
}

uavnet_status uavnet_routing_load(const char* path, uavnet_routing** out) {
  return guard([&] {
    require(path && out, "uavnet_routing_load: null argument");
    *out = nullptr;
    auto handle = std::make_unique<uavnet_routing>();
    handle->document = uavnet::parse_json_text(uavnet::read_text_file(path), path);
    handle->solution = uavnet::routing_from_json(handle->document);
    *out = handle.release();
  });
}

uavnet_status uavnet_routing_save(const uavnet_routing* routing, const char* path, const char* meta_json) {
  return guard([&] {
    require(routing && path, "uavnet_routing_save: null argument");
    json doc = routing->document;
    if (!doc["meta"].is_object()) doc["meta"] = json::object();
    merge_into(doc["meta"], parse_meta(meta_json));
    uavnet::write_text_file(path, uavnet::canonical_dump(doc));
  });
}

void uavnet_routing_destroy(uavnet_routing* routing) { delete routing; }

uavnet_status uavnet_export_lp(const uavnet_scenario* scenario, const uavnet_plan* plan, const char* path) {
  return guard([&] {
    require(scenario && path, "uavnet_export_lp: null argument");
    const uavnet::MilpInstance m =
        uavnet::build_milp(graph_for(scenario, plan), uavnet::commodities_of(scenario->scenario), scenario->scenario.params);
    uavnet::write_text_file(path, uavnet::write_lp(m));
  });
}

uavnet_status uavnet_eval(const uavnet_scenario* scenario, const uavnet_routing* routing, double* eta,
                          double* total_power_w) {
  return guard([&] {
    require(scenario && routing && eta && total_power_w, "uavnet_eval: null argument");
    const auto commodities = uavnet::commodities_of(scenario->scenario);
    if (routing->solution.supported.size() != commodities.size()) {
      throw Error(ErrorCode::validation, "routing has " + std::to_string(routing->solution.supported.size()) +
                                             " commodities but the scenario has " + std::to_string(commodities.size()));
    }
    for (std::size_t q = 0; q < commodities.size(); ++q) {
      if (routing->solution.supported[q] > commodities[q].demand + 1e-6 * std::max(1.0, commodities[q].demand)) {
        throw Error(ErrorCode::validation, "supported[" + std::to_string(q) + "] exceeds its demand");
      }
    }
    *eta = uavnet::unsupported_fraction(routing->solution, commodities);
    *total_power_w = routing->solution.total_power();
  });
}

uavnet_status uavnet_verify_files(const char* lp_path, const char* routing_path, double tol, char** report_json) {
  return guard([&] {
    require(lp_path && routing_path && report_json, "uavnet_verify_files: null argument");
    *report_json = nullptr;
    require(tol > 0.0, "uavnet_verify_files: tol must be > 0");
    const uavnet::LpFile file = uavnet::parse_lp(uavnet::read_text_file(lp_path));
    const json doc = uavnet::parse_json_text(uavnet::read_text_file(routing_path), routing_path);
    const uavnet::RoutingSolution s = uavnet::routing_from_json(doc);
    const uavnet::VerificationReport report =
        uavnet::verify_assignment(file, uavnet::routing_assignment(s, file), tol, &s.objective);
    json families = json::array();
    std::string failed;
    for (const uavnet::FamilyReport& f : report.families) {
      bool bad = false;
      for (const uavnet::Violation& v : report.violations) bad = bad || v.family == f.family;
      families.push_back({{"family", f.family}, {"checked", f.checked}, {"max_violation", f.max_violation}, {"passed", !bad}});
      if (bad) failed += (failed.empty() ? "" : ",") + f.family;
    }
    json violations = json::array();
    for (std::size_t i = 0; i < report.violations.size() && i < 50; ++i) {
      const uavnet::Violation& v = report.violations[i];
      violations.push_back({{"family", v.family}, {"where", v.where}, {"amount", v.amount}, {"allowance", v.allowance}});
    }
    const json out = {{"passed", report.passed},
                      {"tol", tol},
                      {"families", families},
                      {"violations", violations},
                      {"violation_count", report.violations.size()},
                      {"recomputed_objective", report.recomputed_objective}};
    *report_json = copy_string(uavnet::canonical_dump(out));
    if (!report.passed) throw Error(ErrorCode::verify_failed, "violated families: " + failed);
  });
}

uavnet_status uavnet_sweep(const uavnet_config* config, const char* csv_path, const char* json_path,
                           const char* meta_json) {
  return guard([&] {
    require(csv_path != nullptr, "uavnet_sweep: null csv path");
    check_keys(config, "sweep");
    uavnet::SweepSpec spec;
    spec.family = gen_spec_from(config);
    spec.seeds.clear();
    const std::string seeds = lookup(config, "seeds").value_or("1-10");
    for (long long s : integer_list("seeds", seeds)) {
      if (s < 0) throw Error(ErrorCode::invalid_argument, "seeds must be non-negative");
      spec.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    if (auto v = lookup(config, "od_range")) {
      spec.od_range.clear();
      for (long long n : integer_list("od_range", *v)) spec.od_range.push_back(static_cast<int>(n));
    }
    if (auto v = lookup(config, "modes")) {
      spec.modes.clear();
      for (const std::string& m : split(*v, ',')) spec.modes.push_back(uavnet::parse_mode(m));
    }
    if (auto v = lookup(config, "energy_lambda")) spec.options.energy_lambda = to_double("energy_lambda", *v);
    if (spec.options.energy_lambda < 0.0) throw Error(ErrorCode::invalid_argument, "energy_lambda must be >= 0");
    if (auto v = lookup(config, "threads")) spec.threads = static_cast<int>(to_integer("threads", *v));
    if (auto v = lookup(config, "timing")) spec.options.timing = to_integer("timing", *v) != 0;
    spec.options.schedule = schedule_from(config);
    spec.options.branch = branch_from(config);
    const uavnet::SweepTable table = uavnet::sweep(spec);
    uavnet::write_text_file(csv_path, uavnet::sweep_csv(table));
    if (json_path) {
      json seeds_json = json::array();
      for (auto s : spec.seeds) seeds_json.push_back(s);
      std::vector<std::string> modes;
      for (uavnet::Mode m : spec.modes) modes.emplace_back(uavnet::mode_name(m));
      json meta = {{"family", gen_spec_json(spec.family)},
                   {"params", to_json(spec.family.params)},
                   {"seeds", seeds_json},
                   {"od_range", spec.od_range},
                   {"modes", modes},
                   {"energy_lambda", spec.options.energy_lambda},
                   {"schedule", schedule_json(spec.options.schedule)},
                   {"rel_gap", spec.options.branch.rel_gap},
                   {"node_limit", spec.options.branch.node_limit}};
      merge_into(meta, parse_meta(meta_json));
      uavnet::write_text_file(json_path, uavnet::canonical_dump(uavnet::sweep_json(table, meta)));
    }
  });
}

}  // extern "C"
