#pragma once

#include <cstdint>
#include <vector>

#include "uavnet/params.hpp"
#include "uavnet/scenario.hpp"

namespace uavnet {

struct GenSpec {
  std::vector<int> users_per_cluster{13, 13, 14};
  double spread = 100.0;        // radius of the uniform disk around each center, m
  double spacing = 500.0;       // distance between neighbouring cluster centers, m
  double ground_range = 150.0;  // ground radio range used to synthesize links, m
  double demand_min = 100.0;    // Kbps
  double demand_max = 1000.0;   // Kbps
  int od_pairs = 10;
  std::uint64_t seed = 1;
  Params params;
};

// Splits `users` as evenly as possible, remainder on the last clusters.
std::vector<int> split_users(int users, int clusters);

// Cluster centers on a regular polygon with side `spacing`, centered in the
// default 1000 x 1000 m area.
std::vector<Point2> cluster_centers(int clusters, double spacing);

// Deterministic for a given spec, across platforms: draws come from
// mt19937_64 through fixed integer-to-real mappings, and coordinates and
// demands are rounded to 1e-3.
Scenario generate_scenario(const GenSpec& spec);

}  // namespace uavnet
