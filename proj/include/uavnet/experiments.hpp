#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "uavnet/generator.hpp"
#include "uavnet/milp.hpp"
#include "uavnet/placement.hpp"

namespace uavnet {

enum class Mode { no_uav, uav_lambda0, uav_energy_aware };

const char* mode_name(Mode mode);
Mode parse_mode(const std::string& name);
const std::vector<Mode>& all_modes();

// 1 - carried / demanded, clamped to [0, 1]. Throws on zero total demand.
double unsupported_fraction(const RoutingSolution& solution, const std::vector<Commodity>& commodities);

struct SweepRow {
  std::uint64_t seed = 0;
  int n_od = 0;
  Mode mode = Mode::no_uav;
  double eta = 0.0;
  double total_power = 0.0;  // watts
  int uav_count = 0;
  double runtime_ms = 0.0;   // 0 unless timing is enabled
  double supported = 0.0;    // Kbps
  MipStatus status = MipStatus::unknown;
  bool failed = false;       // planning failed; eta is from the ground-only route
  std::string failure;
};

struct PipelineOptions {
  double energy_lambda = 0.5;  // lambda of the energy-aware mode
  DaSchedule schedule;
  BranchOptions branch;
  bool timing = false;
};

struct PipelineResult {
  std::optional<Plan> plan;
  RoutingSolution routing;
  SweepRow row;
};

// The scenario's own lambda is replaced by 0 or options.energy_lambda in
// the UAV modes, and is irrelevant without UAVs.
PipelineResult run_pipeline(const Scenario& scenario, Mode mode, const PipelineOptions& options = {},
                            const std::optional<Plan>& precomputed_plan = std::nullopt);

struct SweepSpec {
  GenSpec family;
  std::vector<int> od_range{5, 10, 20, 40};
  std::vector<Mode> modes{Mode::no_uav, Mode::uav_lambda0, Mode::uav_energy_aware};
  std::vector<std::uint64_t> seeds;
  PipelineOptions options;
  int threads = 1;
};

struct SummaryRow {
  int n_od = 0;
  Mode mode = Mode::no_uav;
  int count = 0;
  double eta_mean = 0.0, eta_std = 0.0;
  double power_mean = 0.0, power_std = 0.0;
  double uav_mean = 0.0, uav_std = 0.0;
  double runtime_mean = 0.0, runtime_std = 0.0;
  int failures = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;          // ordered by (seed, n_od, mode)
  std::vector<SummaryRow> summaries;   // ordered by (n_od, mode)
};

// One row per (seed, n_od, mode). Scenarios come from the family with the
// given seed and OD count; both UAV modes share one plan.
SweepTable sweep(const SweepSpec& spec);

std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows);

// CSV with header seed,n_od,mode,eta,total_power_w,uav_count,runtime_ms.
// Summary rows follow the data rows with seed "mean".
std::string sweep_csv(const SweepTable& table);
nlohmann::json sweep_json(const SweepTable& table, const nlohmann::json& meta);

}  // namespace uavnet
