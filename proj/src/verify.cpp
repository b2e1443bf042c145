#include "uavnet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace uavnet {
namespace {

class Checker {
 public:
  explicit Checker(double tol) : tol_(tol) {}

  void check(const std::string& family, const std::string& where, double violation, double scale) {
    FamilyReport& r = family_entry(family);
    ++r.checked;
    const double s = std::max(1.0, scale);
    const double v = std::max(0.0, violation);
    r.max_violation = std::max(r.max_violation, v / s);
    if (v > tol_ * s) violations_.push_back({family, where, v, tol_ * s});
  }

  FamilyReport& family_entry(const std::string& family) {
    for (FamilyReport& r : families_) {
      if (r.family == family) return r;
    }
    families_.push_back({family, 0.0, 0});
    return families_.back();
  }

  VerificationReport finish(double objective) {
    VerificationReport out;
    out.families = std::move(families_);
    out.violations = std::move(violations_);
    out.recomputed_objective = objective;
    out.passed = out.violations.empty();
    return out;
  }

 private:
  double tol_;
  std::vector<FamilyReport> families_;
  std::vector<Violation> violations_;
};

std::string at(int q, const char* what, int index) {
  return "q" + std::to_string(q) + " " + what + " " + std::to_string(index);
}

}  // namespace

const FamilyReport* VerificationReport::family(const std::string& name) const {
  for (const FamilyReport& r : families) {
    if (r.family == name) return &r;
  }
  return nullptr;
}

VerificationReport verify_solution(const MilpInstance& milp, const RoutingSolution& solution, double tol) {
  const NetworkGraph& g = milp.graph;
  const std::size_t q_count = milp.commodities.size();
  Checker c(tol);
  for (const char* family : {"shape", "bounds", "conservation", "capacity", "throughput", "inactive_flow", "power", "objective"}) {
    c.family_entry(family);
  }

  const bool shapes_ok = solution.supported.size() == q_count &&
                         solution.activation.size() == static_cast<std::size_t>(g.edge_count()) &&
                         solution.uav_power.size() == static_cast<std::size_t>(g.uav_count);
  c.check("shape", "vector sizes", shapes_ok ? 0.0 : 1.0, 0.0);
  if (!shapes_ok) return c.finish(0.0);

  std::map<std::pair<int, int>, double> flow;
  for (const FlowEntry& f : solution.flows) {
    const bool in_range = f.q >= 0 && static_cast<std::size_t>(f.q) < q_count && f.edge >= 0 && f.edge < g.edge_count();
    c.check("shape", "flow entry q" + std::to_string(f.q) + " edge " + std::to_string(f.edge), in_range ? 0.0 : 1.0, 0.0);
    if (in_range) flow[{f.q, f.edge}] += f.kbps;
  }

  // Bounds on x, f and the activation pattern.
  for (std::size_t q = 0; q < q_count; ++q) {
    const double d = milp.commodities[q].demand;
    const double x = solution.supported[q];
    c.check("bounds", at(static_cast<int>(q), "supported", 0), std::max(-x, x - d), d);
  }
  for (const auto& [key, f] : flow) {
    c.check("bounds", at(key.first, "edge", key.second), -f, milp.commodities[static_cast<std::size_t>(key.first)].demand);
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    const int y = solution.activation[static_cast<std::size_t>(e)];
    const bool ground = g.edges[static_cast<std::size_t>(e)].kind == LinkKind::ground;
    const bool ok = ground ? y == 1 : (y == 0 || y == 1);
    c.check("bounds", "activation edge " + std::to_string(e), ok ? 0.0 : 1.0, 0.0);
  }

  // Conservation: out - in equals +x at the source, -x at the sink.
  std::vector<double> net(static_cast<std::size_t>(g.node_count()));
  for (std::size_t q = 0; q < q_count; ++q) {
    std::fill(net.begin(), net.end(), 0.0);
    for (int e = 0; e < g.edge_count(); ++e) {
      auto it = flow.find({static_cast<int>(q), e});
      if (it == flow.end()) continue;
      net[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].from)] += it->second;
      net[static_cast<std::size_t>(g.edges[static_cast<std::size_t>(e)].to)] -= it->second;
    }
    const Commodity& com = milp.commodities[q];
    net[static_cast<std::size_t>(com.src)] -= solution.supported[q];
    net[static_cast<std::size_t>(com.dst)] += solution.supported[q];
    for (int v = 0; v < g.node_count(); ++v) {
      c.check("conservation", at(static_cast<int>(q), "node", v), std::abs(net[static_cast<std::size_t>(v)]), com.demand);
    }
  }

  // Capacity, activation coupling and UAV inflow.
  std::vector<double> load(static_cast<std::size_t>(g.edge_count()), 0.0);
  for (const auto& [key, f] : flow) load[static_cast<std::size_t>(key.second)] += f;
  std::vector<double> inflow(static_cast<std::size_t>(g.uav_count), 0.0);
  for (int e = 0; e < g.edge_count(); ++e) {
    const GraphEdge& edge = g.edges[static_cast<std::size_t>(e)];
    const double l = load[static_cast<std::size_t>(e)];
    c.check("capacity", "edge " + std::to_string(e), l - edge.capacity, edge.capacity);
    if (solution.activation[static_cast<std::size_t>(e)] == 0) {
      c.check("inactive_flow", "edge " + std::to_string(e), std::abs(l), edge.capacity);
    }
    if (g.is_uav(edge.to)) inflow[static_cast<std::size_t>(edge.to - g.user_count)] += l;
  }
  for (int u = 0; u < g.uav_count; ++u) {
    c.check("throughput", "uav " + std::to_string(u), inflow[static_cast<std::size_t>(u)] - milp.c_max, milp.c_max);
  }

  // Power and objective from first principles.
  double power = 0.0;
  for (int u = 0; u < g.uav_count; ++u) {
    const double p = milp.p0 + milp.kappa * inflow[static_cast<std::size_t>(u)];
    power += p;
    c.check("power", "uav " + std::to_string(u), std::abs(p - solution.uav_power[static_cast<std::size_t>(u)]), p);
  }
  double carried = 0.0;
  for (double x : solution.supported) carried += x;
  double objective = milp.total_demand > 0.0 ? carried / milp.total_demand : 0.0;
  if (g.uav_count > 0) {
    const double norm = milp.p0 > 0.0 ? g.uav_count * milp.p0 : g.uav_count;
    objective -= milp.lambda * power / norm;
  }
  c.check("objective", "objective", std::abs(objective - solution.objective), 1.0);
  return c.finish(objective);
}

}  // namespace uavnet
