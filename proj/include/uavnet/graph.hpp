#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "uavnet/geometry.hpp"
#include "uavnet/scenario.hpp"

namespace uavnet {

// UAV deployment: ground projections at a common altitude. association[n]
// is the serving UAV of ground user n, or -1 when the user is unserved.
struct Placement {
  std::vector<Point2> uav_positions;
  double altitude = 0.0;
  std::vector<int> association;
  std::vector<bool> is_relay;

  int uav_count() const { return static_cast<int>(uav_positions.size()); }
  int relay_count() const;
  std::vector<int> members(int uav) const;
};

// Checks the placement invariants against the scenario's link rule.
void validate_placement(const Placement& placement, const Scenario& scenario);

enum class NodeKind { ground_user, uav };
enum class LinkKind { ground, a2g, a2a };

const char* link_kind_name(LinkKind kind);

struct GraphNode {
  NodeKind kind = NodeKind::ground_user;
  Point3 position;
};

struct GraphEdge {
  int from = 0;
  int to = 0;
  LinkKind kind = LinkKind::ground;
  double capacity = 0.0;
};

// Directed routing graph. Nodes [0, user_count) are ground users in id
// order, followed by UAVs in placement order.
struct NetworkGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  int user_count = 0;
  int uav_count = 0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int uav_node(int uav) const { return user_count + uav; }
  bool is_uav(int node) const { return node >= user_count; }
};

// Disk-model predicates, shared by graph construction and placement checks.
bool a2g_in_range(Point2 user, Point2 uav, const Params& params);
bool a2a_in_range(Point2 a, Point2 b, const Params& params);

// Edge order: ground links (as given, forward then reverse), then for each
// UAV its in-range users (user->UAV, UAV->user), then UAV pairs i < j.
NetworkGraph build_graph(const Scenario& scenario, const std::optional<Placement>& placement);

using NodeFilter = std::function<bool(int node)>;

// Undirected components over the induced subgraph of the selected nodes.
// Members ascend within a component; components ordered by smallest member.
std::vector<std::vector<int>> connected_components(const NetworkGraph& graph,
                                                   const NodeFilter& filter);

std::vector<std::vector<int>> connected_components(const NetworkGraph& graph);

NodeFilter ground_users_only(const NetworkGraph& graph);

}  // namespace uavnet
