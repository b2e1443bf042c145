#include "uavnet/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "uavnet/error.hpp"
#include "uavnet/graph.hpp"

namespace uavnet {
namespace {

constexpr int kMaxGrid = 1 << 16;

struct Cell {
  int row = 0;
  int col = 0;
  double weight = 0.0;
  double wx = 0.0;
  double wy = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  int count = 0;
};

std::vector<Cell> bin_points(std::span<const Point2> points, std::span<const double> weights, int grid) {
  double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
  for (const Point2& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const auto index = [grid](double v, double lo, double hi) {
    if (hi <= lo) return 0;
    const int i = static_cast<int>(std::floor((v - lo) / (hi - lo) * grid));
    return std::clamp(i, 0, grid - 1);
  };
  std::vector<Cell> cells(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int row = index(points[i].y, min_y, max_y);
    const int col = index(points[i].x, min_x, max_x);
    Cell& c = cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(grid) + static_cast<std::size_t>(col)];
    const double w = weights.empty() ? 1.0 : weights[i];
    c.row = row;
    c.col = col;
    c.weight += w;
    c.wx += w * points[i].x;
    c.wy += w * points[i].y;
    c.sx += points[i].x;
    c.sy += points[i].y;
    ++c.count;
  }
  std::erase_if(cells, [](const Cell& c) { return c.count == 0; });
  return cells;
}

double objective_of(std::span<const Point2> points, std::span<const double> weights,
                    const std::vector<Point2>& centroids, const std::vector<int>& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += weights[i] * distance_sq(points[i], centroids[static_cast<std::size_t>(assignment[i])]);
  }
  return total;
}

int nearest(Point2 p, const std::vector<Point2>& centroids) {
  int best = 0;
  double best_d = distance_sq(p, centroids[0]);
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    const double d = distance_sq(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

// Moves the weighted-farthest point of a multi-member cluster into each
// empty cluster, lowest cluster index first.
void repair_empty(std::span<const Point2> points, std::span<const double> weights,
                  std::vector<Point2>& centroids, std::vector<int>& assignment) {
  const std::size_t k = centroids.size();
  std::vector<int> sizes(k, 0);
  for (int a : assignment) ++sizes[static_cast<std::size_t>(a)];
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] != 0) continue;
    int pick = -1;
    double pick_cost = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int from = assignment[i];
      if (sizes[static_cast<std::size_t>(from)] < 2) continue;
      const double cost = weights[i] * distance_sq(points[i], centroids[static_cast<std::size_t>(from)]);
      if (cost > pick_cost) {
        pick_cost = cost;
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0) throw Error(ErrorCode::internal, "k-means: cannot repair empty cluster");
    --sizes[static_cast<std::size_t>(assignment[static_cast<std::size_t>(pick)])];
    assignment[static_cast<std::size_t>(pick)] = static_cast<int>(c);
    centroids[c] = points[static_cast<std::size_t>(pick)];
    sizes[c] = 1;
  }
}

std::vector<Point2> recompute_centroids(std::span<const Point2> points, std::span<const double> weights,
                                        const std::vector<int>& assignment, std::size_t k) {
  std::vector<double> w(k, 0.0), wx(k, 0.0), wy(k, 0.0), sx(k, 0.0), sy(k, 0.0);
  std::vector<int> count(k, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t c = static_cast<std::size_t>(assignment[i]);
    w[c] += weights[i];
    wx[c] += weights[i] * points[i].x;
    wy[c] += weights[i] * points[i].y;
    sx[c] += points[i].x;
    sy[c] += points[i].y;
    ++count[c];
  }
  std::vector<Point2> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    out[c] = w[c] > 0.0 ? Point2{wx[c] / w[c], wy[c] / w[c]} : Point2{sx[c] / count[c], sy[c] / count[c]};
  }
  return out;
}

}  // namespace

int occupied_cells(std::span<const Point2> points, int grid) {
  if (points.empty()) return 0;
  return static_cast<int>(bin_points(points, {}, grid).size());
}

std::vector<Point2> density_box_init(std::span<const Point2> points, std::span<const double> weights, int k,
                                     int grid) {
  if (k < 1 || grid < 1) throw Error(ErrorCode::invalid_argument, "density_box_init: k and grid must be >= 1");
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "density_box_init: no points");
  std::vector<Cell> cells = bin_points(points, weights, grid);
  if (static_cast<int>(cells.size()) < k) {
    throw Error(ErrorCode::invalid_argument, "density_box_init: k=" + std::to_string(k) + " exceeds the " +
                                                 std::to_string(cells.size()) + " occupied cells of a " +
                                                 std::to_string(grid) + "x" + std::to_string(grid) +
                                                 " grid; raise grid_g");
  }
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return std::pair(a.row, a.col) < std::pair(b.row, b.col);
  });
  std::vector<Point2> out;
  for (int i = 0; i < k; ++i) {
    const Cell& c = cells[static_cast<std::size_t>(i)];
    out.push_back(c.weight > 0.0 ? Point2{c.wx / c.weight, c.wy / c.weight}
                                 : Point2{c.sx / c.count, c.sy / c.count});
  }
  return out;
}

Point2 weighted_centroid(std::span<const Point2> points, std::span<const double> weights,
                         std::span<const int> members) {
  double w = 0.0, wx = 0.0, wy = 0.0, sx = 0.0, sy = 0.0;
  for (int m : members) {
    const std::size_t i = static_cast<std::size_t>(m);
    w += weights[i];
    wx += weights[i] * points[i].x;
    wy += weights[i] * points[i].y;
    sx += points[i].x;
    sy += points[i].y;
  }
  if (w > 0.0) return {wx / w, wy / w};
  const double n = static_cast<double>(members.size());
  return {sx / n, sy / n};
}

Clustering weighted_kmeans(std::span<const Point2> points, std::span<const double> weights,
                           std::vector<Point2> init, const KmeansOptions& options) {
  const std::size_t k = init.size();
  if (k < 1) throw Error(ErrorCode::invalid_argument, "weighted_kmeans: k must be >= 1");
  if (points.size() != weights.size()) throw Error(ErrorCode::invalid_argument, "weighted_kmeans: size mismatch");
  if (points.size() < k) throw Error(ErrorCode::invalid_argument, "weighted_kmeans: fewer points than clusters");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "weighted_kmeans: tol must be > 0");
  double total_weight = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorCode::invalid_argument, "weighted_kmeans: weights must be >= 0");
    total_weight += w;
  }
  if (total_weight <= 0.0) {
    throw Error(ErrorCode::invalid_argument, "weighted_kmeans: all weights are zero, no weighted centroid exists");
  }

  Clustering out;
  out.k = static_cast<int>(k);
  out.centroids = std::move(init);
  out.assignment.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out.assignment[i] = nearest(points[i], out.centroids);
  double previous = objective_of(points, weights, out.centroids, out.assignment);
  out.objective_trace.push_back(previous);

  for (int it = 1; it <= options.max_iter; ++it) {
    for (std::size_t i = 0; i < points.size(); ++i) out.assignment[i] = nearest(points[i], out.centroids);
    repair_empty(points, weights, out.centroids, out.assignment);
    out.centroids = recompute_centroids(points, weights, out.assignment, k);
    const double current = objective_of(points, weights, out.centroids, out.assignment);
    out.objective_trace.push_back(current);
    out.iterations = it;
    const double decrease = previous - current;
    previous = current;
    if (decrease < options.tol) break;
  }
  out.objective = previous;
  return out;
}

Feasibility check_clustering(const Clustering& clustering, const Scenario& scenario, const Params& params) {
  Feasibility f;
  std::vector<double> load(static_cast<std::size_t>(clustering.k), 0.0);
  for (std::size_t n = 0; n < scenario.users.size(); ++n) {
    const std::size_t c = static_cast<std::size_t>(clustering.assignment[n]);
    load[c] += scenario.users[n].demand_out;
    if (!a2g_in_range(scenario.users[n].position, clustering.centroids[c], params)) f.coverage_ok = false;
  }
  for (double l : load) {
    if (l > params.uav_capacity) f.capacity_ok = false;
  }
  return f;
}

Clustering select_k(const Scenario& scenario, const Params& params, const KmeansOptions& options) {
  const double total = scenario.total_demand();
  if (!(total > 0.0)) throw Error(ErrorCode::invalid_argument, "select_k: total demand must be > 0");
  const std::vector<Point2> points = scenario.positions();
  const std::vector<double> weights = scenario.weights();
  const int n = scenario.user_count();
  const int k_min = std::max(1, static_cast<int>(std::ceil(total / params.uav_capacity - 1e-12)));

  std::set<std::pair<double, double>> distinct;
  for (const Point2& p : points) distinct.insert({p.x, p.y});

  for (int k = k_min; k <= n; ++k) {
    std::vector<Point2> init;
    int grid = std::max(1, static_cast<int>(std::ceil(std::sqrt(2.0 * k))));
    if (static_cast<int>(distinct.size()) >= k) {
      while (grid <= kMaxGrid && occupied_cells(points, grid) < k) grid *= 2;
    }
    if (grid <= kMaxGrid && occupied_cells(points, grid) >= k) {
      init = density_box_init(points, weights, k, grid);
    } else {
      // Fewer distinct occupied cells than k: repeat the ranked cells and let
      // the empty-cluster repair pull duplicates apart.
      const int grid_used = std::min(grid, kMaxGrid);
      const int occupied = occupied_cells(points, grid_used);
      const std::vector<Point2> ranked = density_box_init(points, weights, occupied, grid_used);
      for (int i = 0; i < k; ++i) init.push_back(ranked[static_cast<std::size_t>(i % occupied)]);
    }
    Clustering c = weighted_kmeans(points, weights, std::move(init), options);
    if (check_clustering(c, scenario, params).ok()) return c;
  }
  throw Error(ErrorCode::not_coverable, "scenario not coverable with given ranges");
}

}  // namespace uavnet
