#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace uavnet {

// Planning and routing parameters. Distances in meters, rates in Kbps,
// power in watts.
struct Params {
  double altitude = 100.0;          // h
  double uav_capacity = 10000.0;    // C_max
  double range_a2g = 300.0;         // 3D GU <-> UAV
  double range_a2a = 500.0;         // horizontal UAV <-> UAV
  double cap_ground = 2000.0;
  double cap_a2g = 5000.0;
  double cap_a2a = 20000.0;
  double power_static = 5.0;        // P0
  double power_per_kbps = 0.001;    // kappa
  double energy_weight = 0.0;       // lambda
  std::uint64_t seed = 1;

  friend bool operator==(const Params&, const Params&) = default;
};

// Throws Error(validation) naming the offending key.
void validate(const Params& params);

// Keys as they appear in files and on the command line.
const std::vector<std::string>& param_keys();

// Sets one parameter from its textual value. Unknown keys and unparsable
// values throw Error(invalid_argument).
void apply_override(Params& params, std::string_view key, std::string_view value);

// Applies every key of a JSON object; unknown keys are rejected.
void apply_json(Params& params, const nlohmann::json& object, const std::string& path);

nlohmann::json to_json(const Params& params);

}  // namespace uavnet
