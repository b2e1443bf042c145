#include "uavnet/params.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>

#include "uavnet/error.hpp"

namespace uavnet {
namespace {

struct Field {
  const char* key;
  double Params::*member;
};

constexpr Field kDoubleFields[] = {
    {"h", &Params::altitude},
    {"C_max", &Params::uav_capacity},
    {"R_a2g", &Params::range_a2g},
    {"R_a2a", &Params::range_a2a},
    {"c_ground", &Params::cap_ground},
    {"c_a2g", &Params::cap_a2g},
    {"c_a2a", &Params::cap_a2a},
    {"P0", &Params::power_static},
    {"kappa", &Params::power_per_kbps},
    {"lambda", &Params::energy_weight},
};

double parse_double(std::string_view key, std::string_view text) {
  const std::string owned(text);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || errno == ERANGE ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::invalid_argument,
                "parameter '" + std::string(key) + "': cannot parse '" + owned + "' as a number");
  }
  return value;
}

std::uint64_t parse_seed(std::string_view text) {
  const std::string owned(text);
  char* end = nullptr;
  errno = 0;
  const unsigned long long value = std::strtoull(owned.c_str(), &end, 10);
  if (owned.empty() || owned.front() == '-' || end != owned.c_str() + owned.size() ||
      errno == ERANGE) {
    throw Error(ErrorCode::invalid_argument,
                "parameter 'seed': cannot parse '" + owned + "' as an unsigned integer");
  }
  return value;
}

void require(bool ok, const char* key, const char* what) {
  if (!ok) {
    throw Error(ErrorCode::validation, std::string("params.") + key + ": " + what);
  }
}

}  // namespace

void validate(const Params& p) {
  for (const Field& f : kDoubleFields) {
    require(std::isfinite(p.*(f.member)), f.key, "must be finite");
  }
  require(p.altitude >= 0.0, "h", "must be >= 0");
  require(p.uav_capacity > 0.0, "C_max", "must be > 0");
  require(p.range_a2g > 0.0, "R_a2g", "must be > 0");
  require(p.range_a2a > 0.0, "R_a2a", "must be > 0");
  require(p.range_a2g > p.altitude, "R_a2g", "must exceed h, otherwise no user is coverable");
  require(p.cap_ground > 0.0, "c_ground", "must be > 0");
  require(p.cap_a2g > 0.0, "c_a2g", "must be > 0");
  require(p.cap_a2a > 0.0, "c_a2a", "must be > 0");
  require(p.power_static > 0.0, "P0", "must be > 0");
  require(p.power_per_kbps >= 0.0, "kappa", "must be >= 0");
  require(p.energy_weight >= 0.0, "lambda", "must be >= 0");
}

const std::vector<std::string>& param_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const Field& f : kDoubleFields) out.emplace_back(f.key);
    out.emplace_back("seed");
    return out;
  }();
  return keys;
}

void apply_override(Params& params, std::string_view key, std::string_view value) {
  if (key == "seed") {
    params.seed = parse_seed(value);
    return;
  }
  for (const Field& f : kDoubleFields) {
    if (key == f.key) {
      params.*(f.member) = parse_double(key, value);
      return;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown parameter '" + std::string(key) + "'");
}

void apply_json(Params& params, const nlohmann::json& object, const std::string& path) {
  if (!object.is_object()) {
    throw Error(ErrorCode::validation, path + ": expected an object");
  }
  for (const auto& [key, value] : object.items()) {
    if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        throw Error(ErrorCode::validation, path + ".seed: expected a non-negative integer");
      }
      params.seed = value.get<std::uint64_t>();
      continue;
    }
    bool known = false;
    for (const Field& f : kDoubleFields) {
      if (key == f.key) {
        if (!value.is_number()) {
          throw Error(ErrorCode::validation, path + "." + key + ": expected a number");
        }
        params.*(f.member) = value.get<double>();
        known = true;
        break;
      }
    }
    if (!known) {
      throw Error(ErrorCode::validation, path + ": unknown key '" + key + "'");
    }
  }
}

nlohmann::json to_json(const Params& params) {
  nlohmann::json out = nlohmann::json::object();
  for (const Field& f : kDoubleFields) {
    out[f.key] = params.*(f.member);
  }
  out["seed"] = params.seed;
  return out;
}

}  // namespace uavnet
