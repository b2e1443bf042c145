#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uavnet/geometry.hpp"
#include "uavnet/params.hpp"

namespace uavnet {

struct GroundUser {
  int id = 0;
  Point2 position;
  double demand_out = 0.0;  // row sum of the OD matrix, Kbps
};

// One origin-destination entry of the demand matrix.
struct Demand {
  int src = 0;
  int dst = 0;
  double kbps = 0.0;

  friend bool operator==(const Demand&, const Demand&) = default;
};

using GroundLink = std::pair<int, int>;

struct Scenario {
  std::vector<GroundUser> users;
  std::vector<GroundLink> ground_links;  // undirected, stored with first < second
  std::vector<Demand> demand;            // sorted by (src, dst), no duplicates
  Params params;
  nlohmann::json meta;  // provenance of the producing command, carried verbatim

  int user_count() const { return static_cast<int>(users.size()); }
  double total_demand() const;
  std::vector<Point2> positions() const;
  std::vector<double> weights() const;
  BoundingBox bounds() const;
};

// Sorts links and demand into canonical order, recomputes demand_out, and
// checks every invariant. Throws Error(validation) with a field path.
void normalize_and_validate(Scenario& scenario);

}  // namespace uavnet
