#pragma once

#include <string>
#include <vector>

#include "uavnet/graph.hpp"
#include "uavnet/lp.hpp"
#include "uavnet/scenario.hpp"

namespace uavnet {

struct Commodity {
  int src = 0;  // graph node (ground user id)
  int dst = 0;
  double demand = 0.0;  // Kbps
};

// Multi-commodity flow MILP over a routing graph, with binaries relaxed to
// [0, 1] inside `lp`. Layout, with Q commodities, V nodes, E edges, L UAVs
// and B = number of a2g/a2a edges:
//   columns  f(q, e) = q*E + e        flow, [0, cap(e)]
//            x(q)    = Q*E + q        supported demand, [0, d_q]
//            y(b)    = Q*E + Q + b    activation of the b-th UAV edge
//   rows     q*V + v                  conservation: out - in = +x at src, -x at dst
//            Q*V + e                  capacity: sum_q f(q,e) <= cap(e) [* y_e]
//            Q*V + E + l              throughput: inflow of UAV l <= C_max
// so there are Q*E + Q + B columns and Q*V + E + L rows.
// Objective (maximize): sum_q x_q / D - lambda * sum_l P_l / (L * P0) with
// P_l = P0 + kappa * inflow(l); the P0 part is the constant -lambda (L > 0).
struct MilpInstance {
  NetworkGraph graph;
  std::vector<Commodity> commodities;
  std::vector<int> binary_edges;  // edge index of each binary, ascending
  std::vector<int> edge_binary;   // per edge, binary index or -1
  double total_demand = 0.0;
  double lambda = 0.0;
  double p0 = 0.0;
  double kappa = 0.0;
  double c_max = 0.0;
  double objective_constant = 0.0;
  lp::LinearProgram lp;

  int commodity_count() const { return static_cast<int>(commodities.size()); }
  int flow_var(int q, int e) const { return q * graph.edge_count() + e; }
  int supported_var(int q) const { return commodity_count() * graph.edge_count() + q; }
  int binary_var(int b) const { return commodity_count() * (graph.edge_count() + 1) + b; }
  int conservation_row(int q, int v) const { return q * graph.node_count() + v; }
  int capacity_row(int e) const { return commodity_count() * graph.node_count() + e; }
  int throughput_row(int uav) const { return commodity_count() * graph.node_count() + graph.edge_count() + uav; }
  std::vector<int> binary_columns() const;

  std::string var_name(int column) const;
  std::string row_name(int row) const;
};

std::vector<Commodity> commodities_of(const Scenario& scenario);

MilpInstance build_milp(const NetworkGraph& graph, const std::vector<Commodity>& commodities, const Params& params);

enum class MipStatus { optimal, feasible_gap, infeasible, unknown };

const char* mip_status_name(MipStatus status);

struct BranchOptions {
  double rel_gap = 1e-6;
  long node_limit = 100000;
  lp::SimplexOptions simplex;
};

struct MipResult {
  MipStatus status = MipStatus::unknown;
  std::vector<double> x;
  double objective = 0.0;  // incumbent, maximization
  double bound = 0.0;      // best bound, >= objective
  long nodes = 0;
  long lp_iterations = 0;
};

// Best-bound branch and bound over the listed binary columns of a
// maximization LP. Branches on the most fractional binary (ties to the
// lowest position in `binaries`). Gap = (bound - incumbent) / max(1, |incumbent|).
MipResult branch_and_bound(const lp::LinearProgram& lp, const std::vector<int>& binaries,
                           const BranchOptions& options = {});

struct FlowEntry {
  int q = 0;
  int edge = 0;
  double kbps = 0.0;
};

struct RoutingSolution {
  std::vector<FlowEntry> flows;   // nonzero flows, ordered by (q, edge)
  std::vector<double> supported;  // per commodity, Kbps
  std::vector<int> activation;    // per edge; ground edges always 1
  std::vector<double> uav_power;  // per UAV, watts
  double objective = 0.0;         // includes the constant power term
  double bound = 0.0;
  MipStatus status = MipStatus::unknown;
  long nodes = 0;

  double total_supported() const;
  double total_power() const;
};

// Solution in MILP space: objective and bound include the constant term.
// Activation is reported as the support of the flow, which keeps every row
// feasible and the objective unchanged.
RoutingSolution solve_milp(const MilpInstance& milp, const BranchOptions& options = {});

RoutingSolution route(const NetworkGraph& graph, const std::vector<Commodity>& commodities, const Params& params,
                      const BranchOptions& options = {});

}  // namespace uavnet
