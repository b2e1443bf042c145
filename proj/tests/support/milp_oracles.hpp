#pragma once

#include <random>
#include <vector>

#include "support/dense_simplex.hpp"
#include "uavnet/graph.hpp"
#include "uavnet/lp.hpp"
#include "uavnet/milp.hpp"

namespace oracle {

inline DenseLp to_dense(const uavnet::lp::LinearProgram& lp) {
  DenseLp d;
  d.c = lp.objective;
  d.lo = lp.lower;
  d.hi = lp.upper;
  d.a.assign(lp.rhs.size(), std::vector<double>(lp.objective.size(), 0.0));
  for (const auto& t : lp.entries) d.a[static_cast<std::size_t>(t.row)][static_cast<std::size_t>(t.col)] += t.value;
  for (auto s : lp.sense) {
    d.sense.push_back(s == uavnet::lp::RowSense::less_equal ? Sense::le
                      : s == uavnet::lp::RowSense::equal    ? Sense::eq
                                                            : Sense::ge);
  }
  d.b = lp.rhs;
  return d;
}

struct Enumerated {
  bool feasible = false;
  double objective = 0.0;
};

// Solves the LP for every 0/1 pattern of the binary columns with the dense
// tableau solver and keeps the best.
inline Enumerated enumerate_binaries(const uavnet::lp::LinearProgram& lp, const std::vector<int>& binaries) {
  DenseLp base = to_dense(lp);
  Enumerated best;
  const unsigned patterns = 1u << binaries.size();
  for (unsigned mask = 0; mask < patterns; ++mask) {
    DenseLp d = base;
    for (std::size_t b = 0; b < binaries.size(); ++b) {
      const double v = (mask >> b) & 1u ? 1.0 : 0.0;
      d.lo[static_cast<std::size_t>(binaries[b])] = v;
      d.hi[static_cast<std::size_t>(binaries[b])] = v;
    }
    const DenseResult r = dense_solve(d);
    if (r.feasible && (!best.feasible || r.objective > best.objective)) {
      best.feasible = true;
      best.objective = r.objective;
    }
  }
  return best;
}

// Small routing graph built by hand: ground users on a line of clusters and
// up to two UAVs, with at most `max_uav_links` undirected UAV adjacencies.
inline uavnet::NetworkGraph random_routing_graph(std::mt19937_64& rng, int max_uav_links) {
  using namespace uavnet;
  std::uniform_int_distribution<int> users_d(3, 5), uavs_d(1, 2), cap_d(1, 10);
  std::bernoulli_distribution link(0.45);
  NetworkGraph g;
  g.user_count = users_d(rng);
  g.uav_count = uavs_d(rng);
  for (int i = 0; i < g.user_count + g.uav_count; ++i) {
    GraphNode n;
    n.kind = i < g.user_count ? NodeKind::ground_user : NodeKind::uav;
    g.nodes.push_back(n);
  }
  auto add_pair = [&](int a, int b, LinkKind kind) {
    const double cap = 100.0 * cap_d(rng);
    g.edges.push_back({a, b, kind, cap});
    g.edges.push_back({b, a, kind, cap});
  };
  for (int a = 0; a < g.user_count; ++a) {
    for (int b = a + 1; b < g.user_count; ++b) {
      if (link(rng)) add_pair(a, b, LinkKind::ground);
    }
  }
  std::vector<std::pair<int, int>> candidates;
  for (int u = 0; u < g.uav_count; ++u) {
    for (int a = 0; a < g.user_count; ++a) candidates.push_back({a, g.user_count + u});
  }
  if (g.uav_count == 2) candidates.push_back({g.user_count, g.user_count + 1});
  std::shuffle(candidates.begin(), candidates.end(), rng);
  const int take = std::uniform_int_distribution<int>(1, max_uav_links)(rng);
  for (int i = 0; i < take && i < static_cast<int>(candidates.size()); ++i) {
    const auto [a, b] = candidates[static_cast<std::size_t>(i)];
    add_pair(a, b, a >= g.user_count ? LinkKind::a2a : LinkKind::a2g);
  }
  return g;
}

inline std::vector<uavnet::Commodity> random_commodities(std::mt19937_64& rng, int users) {
  std::uniform_int_distribution<int> count_d(1, 3), user_d(0, users - 1), dem_d(1, 12);
  std::vector<uavnet::Commodity> out;
  const int count = count_d(rng);
  while (static_cast<int>(out.size()) < count) {
    const int s = user_d(rng);
    const int t = user_d(rng);
    if (s == t) continue;
    out.push_back({s, t, 100.0 * dem_d(rng)});
  }
  return out;
}

}  // namespace oracle
