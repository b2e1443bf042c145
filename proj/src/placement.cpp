#include "uavnet/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "uavnet/error.hpp"

namespace uavnet {
namespace {

constexpr double kGoldenAngle = 2.399963229728653;
constexpr double kJitter = 1e-3;

int count_components(const Scenario& scenario, const Placement& placement) {
  return static_cast<int>(connected_components(build_graph(scenario, placement)).size());
}

struct Anchor {
  Point2 position;
  bool is_user = false;  // component without UAVs, represented by a user
};

// Relays needed to bridge two anchors, and the per-hop reach.
struct Gap {
  int relays = 0;
  double length = 0.0;
  Point2 from;
  Point2 to;
};

Gap bridge_gap(const Anchor& a, const Anchor& b, const Params& params) {
  const double ground_reach = std::sqrt(std::max(0.0, params.range_a2g * params.range_a2g -
                                                           params.altitude * params.altitude));
  double step = params.range_a2a;
  if (a.is_user || b.is_user) step = std::min(step, ground_reach);
  const double d = distance(a.position, b.position);
  const int hops = std::max(2, static_cast<int>(std::ceil(d / step)));
  return {hops - 1, d, a.position, b.position};
}

// Points spaced along the cheapest spanning tree of inter-component gaps.
std::vector<Point2> bridge_points(const std::vector<std::vector<Anchor>>& anchors, const Params& params) {
  struct Candidate {
    int relays;
    double length;
    int a;
    int b;
    Gap gap;
  };
  const int c = static_cast<int>(anchors.size());
  std::vector<Candidate> candidates;
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      std::optional<Gap> best;
      for (const Anchor& x : anchors[static_cast<std::size_t>(i)]) {
        for (const Anchor& y : anchors[static_cast<std::size_t>(j)]) {
          const Gap g = bridge_gap(x, y, params);
          if (!best || std::tie(g.relays, g.length) < std::tie(best->relays, best->length)) best = g;
        }
      }
      candidates.push_back({best->relays, best->length, i, j, *best});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.relays, x.length) < std::tie(y.relays, y.length);
  });
  std::vector<int> parent(static_cast<std::size_t>(c));
  for (int i = 0; i < c; ++i) parent[static_cast<std::size_t>(i)] = i;
  const auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  std::vector<Point2> out;
  for (const Candidate& cand : candidates) {
    const int ra = find(cand.a);
    const int rb = find(cand.b);
    if (ra == rb) continue;
    parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    const int hops = cand.relays + 1;
    for (int k = 1; k < hops; ++k) out.push_back(lerp(cand.gap.from, cand.gap.to, static_cast<double>(k) / hops));
  }
  return out;
}

Placement with_relays(const Placement& base, const std::vector<Point2>& relays) {
  Placement out = base;
  for (const Point2& r : relays) {
    out.uav_positions.push_back(r);
    out.is_relay.push_back(true);
  }
  return out;
}

// Drops relays whose removal keeps the graph connected, last relay first.
std::vector<Point2> prune_relays(const Placement& base, std::vector<Point2> relays, const Scenario& scenario) {
  for (int r = static_cast<int>(relays.size()) - 1; r >= 0; --r) {
    std::vector<Point2> trial = relays;
    trial.erase(trial.begin() + r);
    if (count_components(scenario, with_relays(base, trial)) == 1) relays = std::move(trial);
  }
  return relays;
}

void gibbs_update(std::vector<Point2>& relays, const std::vector<Point2>& data, double temperature) {
  const std::size_t m = relays.size();
  std::vector<double> mass(m, 0.0), sx(m, 0.0), sy(m, 0.0), energy(m);
  for (const Point2& x : data) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      energy[r] = distance_sq(x, relays[r]) / temperature;
      lowest = std::min(lowest, energy[r]);
    }
    double z = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      energy[r] = std::exp(-(energy[r] - lowest));
      z += energy[r];
    }
    for (std::size_t r = 0; r < m; ++r) {
      const double p = energy[r] / z;
      mass[r] += p;
      sx[r] += p * x.x;
      sy[r] += p * x.y;
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (mass[r] > 0.0) relays[r] = {sx[r] / mass[r], sy[r] / mass[r]};
  }
}

}  // namespace

void validate(const DaSchedule& s) {
  const auto fail = [](const char* what) { throw Error(ErrorCode::invalid_argument, std::string("DA schedule: ") + what); };
  if (!(s.initial_temperature > s.min_temperature)) fail("T0 must exceed T_min");
  if (!(s.min_temperature > 0.0)) fail("T_min must be > 0");
  if (!(s.cooling > 0.0 && s.cooling < 1.0)) fail("alpha must lie in (0, 1)");
  if (s.iters_per_temperature < 1) fail("iters_per_T must be >= 1");
  if (s.max_relays < 0) fail("max_relays must be >= 0");
}

DaSchedule resolve_schedule(DaSchedule schedule, const Scenario& scenario, int relay_lower_bound) {
  if (schedule.initial_temperature <= 0.0) {
    const double diag = scenario.bounds().diagonal();
    schedule.initial_temperature = std::max(diag * diag, 1.0);
  }
  if (schedule.max_relays <= 0) schedule.max_relays = 3 * relay_lower_bound + 5;
  return schedule;
}

Placement initial_placement(const Clustering& clustering, const Scenario& scenario) {
  Placement p;
  p.altitude = scenario.params.altitude;
  p.uav_positions = clustering.centroids;
  p.is_relay.assign(clustering.centroids.size(), false);
  p.association = clustering.assignment;
  std::string offenders;
  for (std::size_t n = 0; n < p.association.size(); ++n) {
    const Point2 uav = p.uav_positions[static_cast<std::size_t>(p.association[n])];
    if (!a2g_in_range(scenario.users[n].position, uav, scenario.params)) {
      offenders += (offenders.empty() ? "" : ",") + std::to_string(n);
    }
  }
  if (!offenders.empty()) {
    throw Error(ErrorCode::validation, "initial_placement: ground users out of a2g range: " + offenders);
  }
  return p;
}

std::vector<double> associated_demand(const Placement& placement, const Scenario& scenario) {
  std::vector<double> out(placement.uav_positions.size(), 0.0);
  for (std::size_t n = 0; n < placement.association.size(); ++n) {
    if (placement.association[n] >= 0) {
      out[static_cast<std::size_t>(placement.association[n])] += scenario.users[n].demand_out;
    }
  }
  return out;
}

MergeState merge_uavs(const Placement& placement, const Scenario& scenario,
                      const std::function<void(const MergeState&)>& observer) {
  const Params& params = scenario.params;
  const std::vector<Point2> points = scenario.positions();
  const std::vector<double> weights = scenario.weights();
  MergeState state{placement, associated_demand(placement, scenario), {}};
  if (observer) observer(state);

  for (;;) {
    Placement& p = state.placement;
    const int count = p.uav_count();
    std::vector<std::vector<int>> members(static_cast<std::size_t>(count));
    for (std::size_t n = 0; n < p.association.size(); ++n) {
      if (p.association[n] >= 0) members[static_cast<std::size_t>(p.association[n])].push_back(static_cast<int>(n));
    }
    bool found = false;
    int best_i = 0, best_j = 0;
    double best_score = std::numeric_limits<double>::infinity();
    Point2 best_position;
    for (int i = 0; i < count; ++i) {
      if (p.is_relay[static_cast<std::size_t>(i)]) continue;
      for (int j = i + 1; j < count; ++j) {
        if (p.is_relay[static_cast<std::size_t>(j)]) continue;
        if (state.uav_demand[static_cast<std::size_t>(i)] + state.uav_demand[static_cast<std::size_t>(j)] >
            params.uav_capacity) {
          continue;
        }
        std::vector<int> uni = members[static_cast<std::size_t>(i)];
        uni.insert(uni.end(), members[static_cast<std::size_t>(j)].begin(), members[static_cast<std::size_t>(j)].end());
        const Point2 center = weighted_centroid(points, weights, uni);
        double worst = 0.0;
        bool covered = true;
        for (int n : uni) {
          worst = std::max(worst, slant_distance(points[static_cast<std::size_t>(n)], center, p.altitude));
          if (!a2g_in_range(points[static_cast<std::size_t>(n)], center, params)) covered = false;
        }
        if (!covered) continue;
        if (worst < best_score) {
          found = true;
          best_score = worst;
          best_i = i;
          best_j = j;
          best_position = center;
        }
      }
    }
    if (!found) return state;

    p.uav_positions[static_cast<std::size_t>(best_i)] = best_position;
    p.uav_positions.erase(p.uav_positions.begin() + best_j);
    p.is_relay.erase(p.is_relay.begin() + best_j);
    state.uav_demand[static_cast<std::size_t>(best_i)] += state.uav_demand[static_cast<std::size_t>(best_j)];
    state.uav_demand.erase(state.uav_demand.begin() + best_j);
    for (int& a : p.association) {
      if (a == best_j) a = best_i;
      else if (a > best_j) --a;
    }
    state.merge_log.push_back({best_i, best_j, best_position});
    if (observer) observer(state);
  }
}

std::vector<Point2> mst_relay_oracle(const Placement& placement, const Params& params) {
  const std::vector<Point2>& pts = placement.uav_positions;
  const std::size_t n = pts.size();
  std::vector<Point2> relays;
  if (n == 0) return relays;
  std::vector<bool> in_tree(n, false);
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, 0);
  key[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (u == n || key[v] < key[u])) u = v;
    }
    in_tree[u] = true;
    if (step > 0 && key[u] > params.range_a2a) {
      const int hops = static_cast<int>(std::ceil(key[u] / params.range_a2a));
      for (int k = 1; k < hops; ++k) relays.push_back(lerp(pts[parent[u]], pts[u], static_cast<double>(k) / hops));
    }
    for (std::size_t v = 0; v < n; ++v) {
      const double d = distance(pts[u], pts[v]);
      if (!in_tree[v] && d < key[v]) {
        key[v] = d;
        parent[v] = u;
      }
    }
  }
  return relays;
}

DaResult connect_with_da(const Placement& placement, const Scenario& scenario, const DaSchedule& schedule) {
  const NetworkGraph graph = build_graph(scenario, placement);
  const std::vector<std::vector<int>> components = connected_components(graph);
  DaResult result;
  result.placement = placement;
  result.components_before = static_cast<int>(components.size());
  if (components.size() <= 1) {
    result.schedule = schedule;
    return result;
  }
  const int lower_bound = static_cast<int>(components.size()) - 1;
  const DaSchedule sched = resolve_schedule(schedule, scenario, lower_bound);
  validate(sched);
  result.relay_lower_bound = lower_bound;
  result.schedule = sched;

  std::vector<std::vector<Anchor>> anchors;
  for (const std::vector<int>& comp : components) {
    std::vector<Anchor> a;
    for (int node : comp) {
      if (graph.is_uav(node)) {
        a.push_back({placement.uav_positions[static_cast<std::size_t>(node - graph.user_count)], false});
      }
    }
    if (a.empty()) a.push_back({scenario.users[static_cast<std::size_t>(comp.front())].position, true});
    anchors.push_back(std::move(a));
  }
  result.bridge_points = bridge_points(anchors, scenario.params);
  const std::vector<Point2>& data = result.bridge_points;
  Point2 mean;
  for (const Point2& x : data) {
    mean.x += x.x / static_cast<double>(data.size());
    mean.y += x.y / static_cast<double>(data.size());
  }

  int best_components = result.components_before;
  const int last_m = std::min(sched.max_relays, static_cast<int>(data.size()));
  for (int m = lower_bound; m <= last_m; ++m) {
    std::vector<Point2> relays(static_cast<std::size_t>(m), mean);
    const auto connected = [&](const std::vector<Point2>& r) {
      const int c = count_components(scenario, with_relays(placement, r));
      best_components = std::min(best_components, c);
      return c == 1;
    };
    std::optional<std::vector<Point2>> found;
    for (double t = sched.initial_temperature; t > sched.min_temperature && !found; t *= sched.cooling) {
      for (int r = 0; r < m; ++r) {
        const double angle = kGoldenAngle * r;
        relays[static_cast<std::size_t>(r)].x += kJitter * (r + 1) * std::cos(angle);
        relays[static_cast<std::size_t>(r)].y += kJitter * (r + 1) * std::sin(angle);
      }
      for (int it = 0; it < sched.iters_per_temperature; ++it) gibbs_update(relays, data, t);
      if (connected(relays)) found = relays;
    }
    if (!found) {
      // Zero-temperature limit: hard assignment with empty-cluster repair.
      const std::vector<double> unit(data.size(), 1.0);
      relays = weighted_kmeans(data, unit, relays).centroids;
      if (connected(relays)) found = relays;
    }
    if (found) {
      const std::vector<Point2> kept = prune_relays(placement, *found, scenario);
      result.placement = with_relays(placement, kept);
      result.relays_added = static_cast<int>(kept.size());
      return result;
    }
  }
  throw Error(ErrorCode::relay_budget, "cannot connect within relay budget of " + std::to_string(sched.max_relays) +
                                           " relays; best component count " + std::to_string(best_components));
}

Plan plan_deployment(const Scenario& scenario, const DaSchedule& schedule) {
  Plan plan;
  plan.clustering = select_k(scenario, scenario.params);
  plan.initial = initial_placement(plan.clustering, scenario);
  plan.merged = merge_uavs(plan.initial, scenario);
  plan.connected = connect_with_da(plan.merged.placement, scenario, schedule);
  return plan;
}

}  // namespace uavnet
