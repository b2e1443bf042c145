#include "uavnet/milp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "uavnet/error.hpp"

namespace uavnet {
namespace {

constexpr double kIntegralTol = 1e-9;
constexpr double kFlowZero = 1e-9;

struct Node {
  long id = 0;
  double bound = 0.0;
  std::vector<double> lower;  // per binary
  std::vector<double> upper;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

double gap(double bound, double incumbent) { return (bound - incumbent) / std::max(1.0, std::abs(incumbent)); }

// Index into `binaries` of the most fractional value, or -1 when integral.
int most_fractional(const std::vector<double>& x, const std::vector<int>& binaries) {
  int best = -1;
  double best_dist = 0.0;
  for (std::size_t b = 0; b < binaries.size(); ++b) {
    const double v = x[static_cast<std::size_t>(binaries[b])];
    const double frac = v - std::floor(v);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist > kIntegralTol && dist > best_dist) {
      best_dist = dist;
      best = static_cast<int>(b);
    }
  }
  return best;
}

}  // namespace

std::vector<int> MilpInstance::binary_columns() const {
  std::vector<int> out;
  for (int b = 0; b < static_cast<int>(binary_edges.size()); ++b) out.push_back(binary_var(b));
  return out;
}

std::string MilpInstance::var_name(int column) const {
  const int e_count = graph.edge_count();
  const int q_count = commodity_count();
  if (column < q_count * e_count) {
    return "f_q" + std::to_string(column / e_count) + "_e" + std::to_string(column % e_count);
  }
  if (column < q_count * (e_count + 1)) return "x_q" + std::to_string(column - q_count * e_count);
  return "y_e" + std::to_string(binary_edges[static_cast<std::size_t>(column - q_count * (e_count + 1))]);
}

std::string MilpInstance::row_name(int row) const {
  const int v_count = graph.node_count();
  const int q_count = commodity_count();
  if (row < q_count * v_count) {
    return "flow_q" + std::to_string(row / v_count) + "_n" + std::to_string(row % v_count);
  }
  row -= q_count * v_count;
  if (row < graph.edge_count()) return "cap_e" + std::to_string(row);
  return "uav_n" + std::to_string(graph.uav_node(row - graph.edge_count()));
}

std::vector<Commodity> commodities_of(const Scenario& scenario) {
  std::vector<Commodity> out;
  out.reserve(scenario.demand.size());
  for (const Demand& d : scenario.demand) out.push_back({d.src, d.dst, d.kbps});
  return out;
}

MilpInstance build_milp(const NetworkGraph& graph, const std::vector<Commodity>& commodities, const Params& params) {
  MilpInstance m;
  m.graph = graph;
  m.commodities = commodities;
  m.lambda = params.energy_weight;
  m.p0 = params.power_static;
  m.kappa = params.power_per_kbps;
  m.c_max = params.uav_capacity;
  for (const Commodity& c : commodities) {
    if (c.src < 0 || c.src >= graph.user_count || c.dst < 0 || c.dst >= graph.user_count || c.src == c.dst) {
      throw Error(ErrorCode::invalid_argument, "build_milp: commodity endpoints must be distinct ground users");
    }
    m.total_demand += c.demand;
  }
  const int q_count = m.commodity_count();
  const int e_count = graph.edge_count();
  const int v_count = graph.node_count();
  const int l_count = graph.uav_count;

  m.edge_binary.assign(static_cast<std::size_t>(e_count), -1);
  for (int e = 0; e < e_count; ++e) {
    if (graph.edges[static_cast<std::size_t>(e)].kind != LinkKind::ground) {
      m.edge_binary[static_cast<std::size_t>(e)] = static_cast<int>(m.binary_edges.size());
      m.binary_edges.push_back(e);
    }
  }

  const double power_norm = l_count > 0 && m.p0 > 0.0 ? l_count * m.p0 : std::max(1, l_count);
  const double flow_cost = l_count > 0 ? m.lambda * m.kappa / power_norm : 0.0;
  m.objective_constant = l_count > 0 ? -m.lambda * l_count * m.p0 / power_norm : 0.0;
  const double reward = m.total_demand > 0.0 ? 1.0 / m.total_demand : 0.0;

  lp::LinearProgram& lp = m.lp;
  for (int q = 0; q < q_count; ++q) {
    for (const GraphEdge& e : graph.edges) {
      lp.add_var(graph.is_uav(e.to) ? -flow_cost : 0.0, 0.0, e.capacity);
    }
  }
  for (const Commodity& c : commodities) lp.add_var(reward, 0.0, c.demand);
  for (std::size_t b = 0; b < m.binary_edges.size(); ++b) lp.add_var(0.0, 0.0, 1.0);

  for (int q = 0; q < q_count; ++q) {
    for (int v = 0; v < v_count; ++v) lp.add_row(lp::RowSense::equal, 0.0);
  }
  for (const GraphEdge& e : graph.edges) {
    lp.add_row(lp::RowSense::less_equal, e.kind == LinkKind::ground ? e.capacity : 0.0);
  }
  for (int l = 0; l < l_count; ++l) lp.add_row(lp::RowSense::less_equal, m.c_max);

  for (int q = 0; q < q_count; ++q) {
    for (int e = 0; e < e_count; ++e) {
      const GraphEdge& edge = graph.edges[static_cast<std::size_t>(e)];
      const int col = m.flow_var(q, e);
      lp.add_entry(m.conservation_row(q, edge.from), col, 1.0);
      lp.add_entry(m.conservation_row(q, edge.to), col, -1.0);
      lp.add_entry(m.capacity_row(e), col, 1.0);
      if (graph.is_uav(edge.to)) lp.add_entry(m.throughput_row(edge.to - graph.user_count), col, 1.0);
    }
    const Commodity& c = commodities[static_cast<std::size_t>(q)];
    lp.add_entry(m.conservation_row(q, c.src), m.supported_var(q), -1.0);
    lp.add_entry(m.conservation_row(q, c.dst), m.supported_var(q), 1.0);
  }
  for (std::size_t b = 0; b < m.binary_edges.size(); ++b) {
    const int e = m.binary_edges[b];
    lp.add_entry(m.capacity_row(e), m.binary_var(static_cast<int>(b)), -graph.edges[static_cast<std::size_t>(e)].capacity);
  }
  return m;
}

const char* mip_status_name(MipStatus status) {
  switch (status) {
    case MipStatus::optimal: return "optimal";
    case MipStatus::feasible_gap: return "feasible_gap";
    case MipStatus::infeasible: return "infeasible";
    case MipStatus::unknown: return "unknown";
  }
  return "?";
}

MipResult branch_and_bound(const lp::LinearProgram& lp, const std::vector<int>& binaries, const BranchOptions& options) {
  if (!(options.rel_gap >= 0.0)) throw Error(ErrorCode::invalid_argument, "branch_and_bound: rel_gap must be >= 0");
  for (int col : binaries) {
    if (col < 0 || col >= lp.num_vars()) throw Error(ErrorCode::invalid_argument, "branch_and_bound: binary column out of range");
  }
  MipResult result;
  bool have_incumbent = false;
  lp::LinearProgram sub = lp;

  auto solve_with = [&](const std::vector<double>& lo, const std::vector<double>& hi) {
    for (std::size_t b = 0; b < binaries.size(); ++b) {
      const std::size_t col = static_cast<std::size_t>(binaries[b]);
      sub.lower[col] = std::max(lp.lower[col], lo[b]);
      sub.upper[col] = std::min(lp.upper[col], hi[b]);
    }
    lp::LpSolution s = lp::solve_lp(sub, options.simplex);
    result.lp_iterations += s.iterations;
    if (s.status == lp::LpStatus::unbounded) throw Error(ErrorCode::solver, "branch_and_bound: unbounded relaxation");
    if (s.status == lp::LpStatus::iteration_limit) throw Error(ErrorCode::solver, "branch_and_bound: simplex iteration limit");
    return s;
  };

  auto offer = [&](std::vector<double> x, double objective) {
    for (int col : binaries) x[static_cast<std::size_t>(col)] = std::round(x[static_cast<std::size_t>(col)]);
    if (!have_incumbent || objective > result.objective) {
      have_incumbent = true;
      result.x = std::move(x);
      result.objective = objective;
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  Node root;
  root.id = next_id++;
  root.bound = std::numeric_limits<double>::infinity();
  root.lower.assign(binaries.size(), 0.0);
  root.upper.assign(binaries.size(), 1.0);
  open.push(root);
  bool root_done = false;

  while (!open.empty()) {
    if (have_incumbent && gap(open.top().bound, result.objective) <= options.rel_gap) break;
    if (result.nodes >= options.node_limit) break;
    Node node = open.top();
    open.pop();
    if (have_incumbent && node.bound <= result.objective) continue;
    ++result.nodes;
    const lp::LpSolution s = solve_with(node.lower, node.upper);
    if (s.status == lp::LpStatus::infeasible) {
      root_done = true;
      continue;
    }
    if (have_incumbent && s.objective <= result.objective) continue;
    const int branch = most_fractional(s.x, binaries);
    if (branch < 0) {
      offer(s.x, s.objective);
      continue;
    }
    if (!root_done) {
      // Rounding fractional binaries up and re-solving gives an early
      // incumbent; for routing it is already optimal.
      std::vector<double> fixed(binaries.size());
      for (std::size_t b = 0; b < binaries.size(); ++b) {
        fixed[b] = std::ceil(s.x[static_cast<std::size_t>(binaries[b])] - kIntegralTol);
      }
      const lp::LpSolution h = solve_with(fixed, fixed);
      if (h.status == lp::LpStatus::optimal) offer(h.x, h.objective);
    }
    root_done = true;
    Node down = node;
    down.id = next_id++;
    down.bound = s.objective;
    down.upper[static_cast<std::size_t>(branch)] = 0.0;
    Node up = node;
    up.id = next_id++;
    up.bound = s.objective;
    up.lower[static_cast<std::size_t>(branch)] = 1.0;
    if (!have_incumbent || s.objective > result.objective) {
      open.push(std::move(down));
      open.push(std::move(up));
    }
  }

  double best_open = -std::numeric_limits<double>::infinity();
  if (!open.empty()) best_open = open.top().bound;
  if (!have_incumbent) {
    result.status = open.empty() ? MipStatus::infeasible : MipStatus::unknown;
    result.bound = best_open;
    return result;
  }
  result.bound = std::max(result.objective, best_open);
  result.status = gap(result.bound, result.objective) <= options.rel_gap ? MipStatus::optimal : MipStatus::feasible_gap;
  return result;
}

double RoutingSolution::total_supported() const {
  double s = 0.0;
  for (double v : supported) s += v;
  return s;
}

double RoutingSolution::total_power() const {
  double s = 0.0;
  for (double v : uav_power) s += v;
  return s;
}

RoutingSolution solve_milp(const MilpInstance& milp, const BranchOptions& options) {
  const MipResult r = branch_and_bound(milp.lp, milp.binary_columns(), options);
  RoutingSolution out;
  out.status = r.status;
  out.nodes = r.nodes;
  out.bound = r.bound + milp.objective_constant;
  const int q_count = milp.commodity_count();
  const int e_count = milp.graph.edge_count();
  out.supported.assign(static_cast<std::size_t>(q_count), 0.0);
  out.activation.assign(static_cast<std::size_t>(e_count), 0);
  for (int e = 0; e < e_count; ++e) {
    if (milp.edge_binary[static_cast<std::size_t>(e)] < 0) out.activation[static_cast<std::size_t>(e)] = 1;
  }
  std::vector<double> inflow(static_cast<std::size_t>(milp.graph.uav_count), 0.0);
  if (r.status == MipStatus::optimal || r.status == MipStatus::feasible_gap) {
    for (int q = 0; q < q_count; ++q) {
      for (int e = 0; e < e_count; ++e) {
        const double f = r.x[static_cast<std::size_t>(milp.flow_var(q, e))];
        if (f <= kFlowZero) continue;
        out.flows.push_back({q, e, f});
        out.activation[static_cast<std::size_t>(e)] = 1;
        const int to = milp.graph.edges[static_cast<std::size_t>(e)].to;
        if (milp.graph.is_uav(to)) inflow[static_cast<std::size_t>(to - milp.graph.user_count)] += f;
      }
      const double d = milp.commodities[static_cast<std::size_t>(q)].demand;
      out.supported[static_cast<std::size_t>(q)] = std::clamp(r.x[static_cast<std::size_t>(milp.supported_var(q))], 0.0, d);
    }
    out.objective = r.objective + milp.objective_constant;
  }
  out.uav_power.resize(inflow.size());
  for (std::size_t l = 0; l < inflow.size(); ++l) out.uav_power[l] = milp.p0 + milp.kappa * inflow[l];
  return out;
}

RoutingSolution route(const NetworkGraph& graph, const std::vector<Commodity>& commodities, const Params& params,
                      const BranchOptions& options) {
  return solve_milp(build_milp(graph, commodities, params), options);
}

}  // namespace uavnet
