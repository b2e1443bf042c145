#pragma once

#include <span>
#include <vector>

#include "uavnet/geometry.hpp"
#include "uavnet/params.hpp"
#include "uavnet/scenario.hpp"

namespace uavnet {

struct Clustering {
  int k = 0;
  std::vector<Point2> centroids;
  std::vector<int> assignment;          // per point, cluster index
  double objective = 0.0;               // sum of w * |p - c|^2
  std::vector<double> objective_trace;  // objective at init, then per iteration
  int iterations = 0;
};

struct KmeansOptions {
  double tol = 1e-6;
  int max_iter = 200;
};

// Ranks the cells of a grid x grid split of the bounding box by contained
// weight (ties toward lower (row, col)) and returns the weighted mean of the
// top-k cells. Throws Error(invalid_argument) when fewer than k cells are
// occupied.
std::vector<Point2> density_box_init(std::span<const Point2> points, std::span<const double> weights,
                                     int k, int grid);

int occupied_cells(std::span<const Point2> points, int grid);

// Lloyd iteration with demand weights. A cluster whose members all carry
// zero weight is centered at the plain mean of its members.
Clustering weighted_kmeans(std::span<const Point2> points, std::span<const double> weights,
                           std::vector<Point2> init, const KmeansOptions& options = {});

// Weighted mean of the given members; plain mean when their weight is zero.
Point2 weighted_centroid(std::span<const Point2> points, std::span<const double> weights,
                         std::span<const int> members);

struct Feasibility {
  bool capacity_ok = true;
  bool coverage_ok = true;
  bool ok() const { return capacity_ok && coverage_ok; }
};

Feasibility check_clustering(const Clustering& clustering, const Scenario& scenario, const Params& params);

// Smallest k >= ceil(total / C_max) whose clustering keeps every cluster
// within C_max and every member within a2g range of its centroid.
Clustering select_k(const Scenario& scenario, const Params& params, const KmeansOptions& options = {});

}  // namespace uavnet
