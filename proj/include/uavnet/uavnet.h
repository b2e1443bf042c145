#ifndef UAVNET_H
#define UAVNET_H

/* C interface of the UAV deployment and routing toolkit. Every function
 * returns a status; on failure uavnet_last_error() describes it (per thread).
 * Handles are opaque and owned by the caller. */

#include <stddef.h>

#if defined(_WIN32)
#define UAVNET_API __declspec(dllexport)
#else
#define UAVNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uavnet_status {
  UAVNET_OK = 0,
  UAVNET_E_INVALID_ARGUMENT = 1,
  UAVNET_E_IO = 2,
  UAVNET_E_PARSE = 3,
  UAVNET_E_VALIDATION = 4,
  UAVNET_E_INFEASIBLE_SPEC = 5,
  UAVNET_E_NOT_COVERABLE = 6,
  UAVNET_E_RELAY_BUDGET = 7,
  UAVNET_E_SOLVER = 8,
  UAVNET_E_VERIFY_FAILED = 9,
  UAVNET_E_INTERNAL = 10
} uavnet_status;

typedef struct uavnet_config uavnet_config;
typedef struct uavnet_scenario uavnet_scenario;
typedef struct uavnet_plan uavnet_plan;
typedef struct uavnet_routing uavnet_routing;

UAVNET_API const char* uavnet_version(void);
/* Stable machine-readable name such as "E_PARSE"; "OK" for success. */
UAVNET_API const char* uavnet_status_name(uavnet_status status);
UAVNET_API const char* uavnet_last_error(void);
UAVNET_API void uavnet_string_free(char* text);

/* Key/value settings; setting a key again replaces its value. Keys are
 * checked by the function that consumes the config. */
UAVNET_API uavnet_config* uavnet_config_create(void);
UAVNET_API void uavnet_config_destroy(uavnet_config* config);
UAVNET_API uavnet_status uavnet_config_set(uavnet_config* config, const char* key, const char* value);
/* Comma-separated list of the keys accepted by `consumer`: "params",
 * "generate", "plan", "route" or "sweep". */
UAVNET_API uavnet_status uavnet_config_keys(const char* consumer, char** keys);

/* Generator keys plus parameter keys; see uavnet_config_keys("generate"). */
UAVNET_API uavnet_status uavnet_generate(const uavnet_config* config, uavnet_scenario** out);
UAVNET_API uavnet_status uavnet_scenario_load(const char* path, uavnet_scenario** out);
UAVNET_API uavnet_status uavnet_scenario_save(const uavnet_scenario* scenario, const char* path);
UAVNET_API void uavnet_scenario_destroy(uavnet_scenario* scenario);
/* Applies parameter keys (h, C_max, R_a2g, ..., lambda, seed) in place. */
UAVNET_API uavnet_status uavnet_scenario_apply_params(uavnet_scenario* scenario, const uavnet_config* params);
/* Resolved parameters as a JSON object. */
UAVNET_API uavnet_status uavnet_scenario_params_json(const uavnet_scenario* scenario, char** json);
/* Replaces the scenario's meta object with the given JSON object text. */
UAVNET_API uavnet_status uavnet_scenario_set_meta(uavnet_scenario* scenario, const char* json);
UAVNET_API int uavnet_scenario_user_count(const uavnet_scenario* scenario);
UAVNET_API int uavnet_scenario_demand_count(const uavnet_scenario* scenario);

/* Clustering, merging and relay insertion. `config` (may be NULL) holds
 * schedule keys da_t0, da_alpha, da_t_min, da_iters, da_max_relays. */
UAVNET_API uavnet_status uavnet_plan_create(const uavnet_scenario* scenario, const uavnet_config* config,
                                            uavnet_plan** out);
UAVNET_API uavnet_status uavnet_plan_load(const uavnet_scenario* scenario, const char* path, uavnet_plan** out);
/* `meta_json` (may be NULL) is merged into the file's meta object. */
UAVNET_API uavnet_status uavnet_plan_save(const uavnet_plan* plan, const char* path, const char* meta_json);
UAVNET_API void uavnet_plan_destroy(uavnet_plan* plan);
UAVNET_API int uavnet_plan_uav_count(const uavnet_plan* plan);
UAVNET_API int uavnet_plan_relay_count(const uavnet_plan* plan);

/* Routes the scenario's demand over the ground graph plus the plan's UAVs
 * (plan may be NULL). `config` (may be NULL) holds rel_gap and node_limit. */
UAVNET_API uavnet_status uavnet_route(const uavnet_scenario* scenario, const uavnet_plan* plan,
                                      const uavnet_config* config, uavnet_routing** out);
UAVNET_API uavnet_status uavnet_routing_load(const char* path, uavnet_routing** out);
UAVNET_API uavnet_status uavnet_routing_save(const uavnet_routing* routing, const char* path, const char* meta_json);
UAVNET_API void uavnet_routing_destroy(uavnet_routing* routing);

/* Writes the routing MILP in LP text format. */
UAVNET_API uavnet_status uavnet_export_lp(const uavnet_scenario* scenario, const uavnet_plan* plan, const char* path);

/* Unsupported fraction and total UAV power of a routing for a scenario. */
UAVNET_API uavnet_status uavnet_eval(const uavnet_scenario* scenario, const uavnet_routing* routing, double* eta,
                                     double* total_power_w);

/* Checks a routing file against an exported LP file. Returns
 * UAVNET_E_VERIFY_FAILED when any row, bound or the objective is violated;
 * the JSON report (caller frees) is produced in both cases. */
UAVNET_API uavnet_status uavnet_verify_files(const char* lp_path, const char* routing_path, double tol,
                                             char** report_json);

/* Runs the experiment sweep; json_path may be NULL. */
UAVNET_API uavnet_status uavnet_sweep(const uavnet_config* config, const char* csv_path, const char* json_path,
                                      const char* meta_json);

#ifdef __cplusplus
}
#endif

#endif
