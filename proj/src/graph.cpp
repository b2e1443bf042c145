#include "uavnet/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "uavnet/error.hpp"

namespace uavnet {

int Placement::relay_count() const {
  return static_cast<int>(std::count(is_relay.begin(), is_relay.end(), true));
}

std::vector<int> Placement::members(int uav) const {
  std::vector<int> out;
  for (std::size_t n = 0; n < association.size(); ++n) {
    if (association[n] == uav) out.push_back(static_cast<int>(n));
  }
  return out;
}

const char* link_kind_name(LinkKind kind) {
  switch (kind) {
    case LinkKind::ground: return "ground";
    case LinkKind::a2g: return "a2g";
    case LinkKind::a2a: return "a2a";
  }
  return "?";
}

bool a2g_in_range(Point2 user, Point2 uav, const Params& params) {
  return slant_distance(user, uav, params.altitude) <= params.range_a2g;
}

bool a2a_in_range(Point2 a, Point2 b, const Params& params) {
  return distance(a, b) <= params.range_a2a;
}

void validate_placement(const Placement& p, const Scenario& s) {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::validation, "placement: " + what); };
  if (p.is_relay.size() != p.uav_positions.size()) fail("is_relay size mismatch");
  if (p.association.size() != s.users.size()) fail("association must have one entry per ground user");
  std::vector<int> served(p.uav_positions.size(), 0);
  for (std::size_t n = 0; n < p.association.size(); ++n) {
    const int uav = p.association[n];
    if (uav < 0) continue;
    if (uav >= p.uav_count()) fail("association[" + std::to_string(n) + "] is not a UAV index");
    if (p.is_relay[static_cast<std::size_t>(uav)]) {
      fail("ground user " + std::to_string(n) + " is associated with relay " + std::to_string(uav));
    }
    if (!a2g_in_range(s.users[n].position, p.uav_positions[static_cast<std::size_t>(uav)], s.params)) {
      fail("ground user " + std::to_string(n) + " is out of a2g range of UAV " + std::to_string(uav));
    }
    ++served[static_cast<std::size_t>(uav)];
  }
  for (std::size_t l = 0; l < served.size(); ++l) {
    if (!p.is_relay[l] && served[l] == 0) fail("UAV " + std::to_string(l) + " serves no ground user");
  }
}

NetworkGraph build_graph(const Scenario& s, const std::optional<Placement>& placement) {
  NetworkGraph g;
  g.user_count = s.user_count();
  const double h = placement ? placement->altitude : s.params.altitude;
  for (const GroundUser& u : s.users) {
    g.nodes.push_back({NodeKind::ground_user, {u.position.x, u.position.y, 0.0}});
  }
  for (const auto& [a, b] : s.ground_links) {
    g.edges.push_back({a, b, LinkKind::ground, s.params.cap_ground});
    g.edges.push_back({b, a, LinkKind::ground, s.params.cap_ground});
  }
  if (!placement) return g;

  Params params = s.params;
  params.altitude = h;
  g.uav_count = placement->uav_count();
  for (const Point2& a : placement->uav_positions) {
    g.nodes.push_back({NodeKind::uav, {a.x, a.y, h}});
  }
  for (int l = 0; l < g.uav_count; ++l) {
    const Point2 a = placement->uav_positions[static_cast<std::size_t>(l)];
    for (int n = 0; n < g.user_count; ++n) {
      if (a2g_in_range(s.users[static_cast<std::size_t>(n)].position, a, params)) {
        g.edges.push_back({n, g.uav_node(l), LinkKind::a2g, params.cap_a2g});
        g.edges.push_back({g.uav_node(l), n, LinkKind::a2g, params.cap_a2g});
      }
    }
  }
  for (int l = 0; l < g.uav_count; ++l) {
    for (int m = l + 1; m < g.uav_count; ++m) {
      if (a2a_in_range(placement->uav_positions[static_cast<std::size_t>(l)],
                       placement->uav_positions[static_cast<std::size_t>(m)], params)) {
        g.edges.push_back({g.uav_node(l), g.uav_node(m), LinkKind::a2a, params.cap_a2a});
        g.edges.push_back({g.uav_node(m), g.uav_node(l), LinkKind::a2a, params.cap_a2a});
      }
    }
  }
  return g;
}

std::vector<std::vector<int>> connected_components(const NetworkGraph& graph, const NodeFilter& filter) {
  const int n = graph.node_count();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<bool> selected(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) selected[static_cast<std::size_t>(v)] = filter(v);
  for (const GraphEdge& e : graph.edges) {
    if (!selected[static_cast<std::size_t>(e.from)] || !selected[static_cast<std::size_t>(e.to)]) continue;
    const int a = find(e.from);
    const int b = find(e.to);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  // Roots are the smallest members, so scanning in node order yields the
  // components already sorted by smallest member.
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int v = 0; v < n; ++v) {
    if (!selected[static_cast<std::size_t>(v)]) continue;
    const int root = find(v);
    int& k = slot[static_cast<std::size_t>(root)];
    if (k < 0) {
      k = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(k)].push_back(v);
  }
  return out;
}

std::vector<std::vector<int>> connected_components(const NetworkGraph& graph) {
  return connected_components(graph, [](int) { return true; });
}

NodeFilter ground_users_only(const NetworkGraph& graph) {
  const int users = graph.user_count;
  return [users](int node) { return node < users; };
}

}  // namespace uavnet
