#pragma once

#include <optional>
#include <vector>

#include "uavnet/clustering.hpp"
#include "uavnet/graph.hpp"
#include "uavnet/scenario.hpp"

namespace uavnet {

struct MergeRecord {
  int kept = 0;     // index of the surviving UAV (before the merge)
  int removed = 0;  // index of the absorbed UAV (before the merge)
  Point2 position;  // position of the merged UAV
};

struct MergeState {
  Placement placement;
  std::vector<double> uav_demand;  // associated demand per UAV, Kbps
  std::vector<MergeRecord> merge_log;
};

struct DaSchedule {
  double initial_temperature = 0.0;  // m^2; <= 0 selects (scenario bbox diagonal)^2
  double cooling = 0.9;
  double min_temperature = 1e-3;     // m^2
  int iters_per_temperature = 30;
  int max_relays = 0;                // <= 0 selects 3 * lower_bound + 5
};

void validate(const DaSchedule& schedule);

// Fills the defaulted fields of `schedule` for this scenario and lower bound.
DaSchedule resolve_schedule(DaSchedule schedule, const Scenario& scenario, int relay_lower_bound);

// One UAV per cluster at its weighted centroid, serving the cluster members.
Placement initial_placement(const Clustering& clustering, const Scenario& scenario);

std::vector<double> associated_demand(const Placement& placement, const Scenario& scenario);

// Greedy capacity-bounded merging. Each accepted merge places the merged UAV
// at the weighted centroid of the union and keeps every member in a2g
// range; `observer` sees every accepted state.
MergeState merge_uavs(const Placement& placement, const Scenario& scenario,
                      const std::function<void(const MergeState&)>& observer = {});

struct DaResult {
  Placement placement;
  int relays_added = 0;
  int components_before = 0;
  int relay_lower_bound = 0;
  std::vector<Point2> bridge_points;
  DaSchedule schedule;
};

// Inserts relay UAVs by deterministic annealing until the ground + aerial
// graph is connected. Throws Error(relay_budget) carrying the best component
// count when max_relays is exceeded.
DaResult connect_with_da(const Placement& placement, const Scenario& scenario, const DaSchedule& schedule = {});

// Baseline: relays spaced along the long edges of the Euclidean MST over the
// current UAV projections.
std::vector<Point2> mst_relay_oracle(const Placement& placement, const Params& params);

struct Plan {
  Clustering clustering;
  Placement initial;
  MergeState merged;
  DaResult connected;

  const Placement& final_placement() const { return connected.placement; }
};

// Phases one and two end to end.
Plan plan_deployment(const Scenario& scenario, const DaSchedule& schedule = {});

}  // namespace uavnet
