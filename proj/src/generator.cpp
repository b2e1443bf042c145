#include "uavnet/generator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uavnet/error.hpp"
#include "uavnet/graph.hpp"
#include "uavnet/random.hpp"

namespace uavnet {
namespace {

constexpr double kAreaCenter = 500.0;
constexpr int kMaxClusterAttempts = 10000;

double round_milli(double v) { return std::round(v * 1000.0) / 1000.0; }

bool cluster_connected(const std::vector<Point2>& points, double range) {
  const std::size_t n = points.size();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u = 0; u < n; ++u) {
      if (!seen[u] && distance(points[v], points[u]) <= range) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

}  // namespace

std::vector<int> split_users(int users, int clusters) {
  if (clusters <= 0 || users < clusters) {
    throw Error(ErrorCode::infeasible_spec, "need at least one user per cluster");
  }
  std::vector<int> out(static_cast<std::size_t>(clusters), users / clusters);
  const int remainder = users % clusters;
  for (int i = 0; i < remainder; ++i) ++out[static_cast<std::size_t>(clusters - 1 - i)];
  return out;
}

std::vector<Point2> cluster_centers(int clusters, double spacing) {
  std::vector<Point2> out;
  if (clusters == 1) return {{kAreaCenter, kAreaCenter}};
  const double radius = spacing / (2.0 * std::sin(std::numbers::pi / clusters));
  for (int c = 0; c < clusters; ++c) {
    const double angle = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * c / clusters;
    out.push_back({kAreaCenter + radius * std::cos(angle), kAreaCenter + radius * std::sin(angle)});
  }
  return out;
}

Scenario generate_scenario(const GenSpec& spec) {
  const auto bad = [](const std::string& what) { throw Error(ErrorCode::infeasible_spec, "generator: " + what); };
  if (spec.users_per_cluster.empty()) bad("cluster count must be > 0");
  for (int count : spec.users_per_cluster) {
    if (count <= 0) bad("users per cluster must be > 0");
  }
  if (!(spec.demand_min > 0.0) || !(spec.demand_max >= spec.demand_min)) bad("demand range must lie in (0, inf)");
  if (!(spec.spread >= 0.0) || !(spec.spacing > 0.0) || !(spec.ground_range > 0.0)) {
    bad("spread, spacing and ground range must be positive");
  }
  if (spec.od_pairs < 0) bad("OD pair count must be >= 0");

  Scenario s;
  s.params = spec.params;
  s.params.seed = spec.seed;
  validate(s.params);

  Rng rng(spec.seed);
  const int clusters = static_cast<int>(spec.users_per_cluster.size());
  const std::vector<Point2> centers = cluster_centers(clusters, spec.spacing);
  std::vector<int> cluster_of;
  for (int c = 0; c < clusters; ++c) {
    const int count = spec.users_per_cluster[static_cast<std::size_t>(c)];
    std::vector<Point2> points;
    // Resample until the cluster's ground graph is connected.
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxClusterAttempts) bad("cannot draw a connected cluster; raise ground_range or lower spread");
      points.clear();
      for (int i = 0; i < count; ++i) {
        const double r = spec.spread * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        points.push_back({round_milli(centers[static_cast<std::size_t>(c)].x + r * std::cos(theta)),
                          round_milli(centers[static_cast<std::size_t>(c)].y + r * std::sin(theta))});
      }
      if (cluster_connected(points, spec.ground_range)) break;
    }
    for (const Point2& p : points) {
      s.users.push_back({s.user_count(), p, 0.0});
      cluster_of.push_back(c);
    }
  }

  const int n = s.user_count();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (cluster_of[static_cast<std::size_t>(a)] == cluster_of[static_cast<std::size_t>(b)] &&
          distance(s.users[static_cast<std::size_t>(a)].position, s.users[static_cast<std::size_t>(b)].position) <=
              spec.ground_range) {
        s.ground_links.emplace_back(a, b);
      }
    }
  }

  const std::uint64_t ordered_pairs = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1);
  if (static_cast<std::uint64_t>(spec.od_pairs) > ordered_pairs) {
    bad("requested " + std::to_string(spec.od_pairs) + " OD pairs but only " + std::to_string(ordered_pairs) +
        " ordered pairs exist");
  }
  // Partial Fisher-Yates over the ordered pair index space.
  std::vector<std::uint64_t> pool(ordered_pairs);
  for (std::uint64_t i = 0; i < ordered_pairs; ++i) pool[i] = i;
  for (int i = 0; i < spec.od_pairs; ++i) {
    const std::uint64_t j = static_cast<std::uint64_t>(i) + rng.below(ordered_pairs - static_cast<std::uint64_t>(i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    const std::uint64_t code = pool[static_cast<std::size_t>(i)];
    const int src = static_cast<int>(code / static_cast<std::uint64_t>(n - 1));
    int dst = static_cast<int>(code % static_cast<std::uint64_t>(n - 1));
    if (dst >= src) ++dst;
    s.demand.push_back({src, dst, round_milli(rng.uniform(spec.demand_min, spec.demand_max))});
  }

  normalize_and_validate(s);
  return s;
}

}  // namespace uavnet
