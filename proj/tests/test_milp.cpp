#include <cmath>
#include <random>

#include "doctest.h"
#include "support/milp_oracles.hpp"
#include "uavnet/generator.hpp"
#include "uavnet/milp.hpp"
#include "uavnet/verify.hpp"

using namespace uavnet;

namespace {

NetworkGraph two_nodes_one_edge() {
  NetworkGraph g;
  g.user_count = 2;
  g.nodes.resize(2);
  g.edges.push_back({0, 1, LinkKind::ground, 2000.0});
  return g;
}

int count_rows_named(const MilpInstance& m, const std::string& prefix) {
  int n = 0;
  for (int r = 0; r < m.lp.num_rows(); ++r) n += m.row_name(r).rfind(prefix, 0) == 0 ? 1 : 0;
  return n;
}

Params params_with_lambda(double lambda) {
  Params p;
  p.energy_weight = lambda;
  return p;
}

}  // namespace

TEST_CASE("smallest instance has f, x and three rows") {
  const MilpInstance m = build_milp(two_nodes_one_edge(), {{0, 1, 100.0}}, Params{});
  CHECK(m.lp.num_vars() == 2);
  CHECK(m.lp.num_rows() == 3);
  CHECK(count_rows_named(m, "flow_") == 2);
  CHECK(count_rows_named(m, "cap_") == 1);
  CHECK(m.var_name(0) == "f_q0_e0");
  CHECK(m.var_name(1) == "x_q0");
  const RoutingSolution s = solve_milp(m);
  CHECK(s.status == MipStatus::optimal);
  CHECK(s.supported[0] == doctest::Approx(100.0));
}

TEST_CASE("a UAV edge adds one binary and one coupled capacity row") {
  NetworkGraph g = two_nodes_one_edge();
  g.uav_count = 1;
  g.nodes.push_back({NodeKind::uav, {}});
  const MilpInstance before = build_milp(g, {{0, 1, 100.0}}, Params{});
  g.edges.push_back({0, 2, LinkKind::a2g, 5000.0});
  const MilpInstance after = build_milp(g, {{0, 1, 100.0}}, Params{});
  CHECK(after.binary_edges.size() == before.binary_edges.size() + 1);
  CHECK(count_rows_named(after, "cap_") == count_rows_named(before, "cap_") + 1);
  const int y = after.binary_var(0);
  bool coupled = false;
  for (const auto& t : after.lp.entries) {
    if (t.col == y && t.row == after.capacity_row(1) && t.value == -5000.0) coupled = true;
  }
  CHECK(coupled);
  CHECK(after.lp.rhs[static_cast<std::size_t>(after.capacity_row(1))] == 0.0);
}

TEST_CASE("row and column counts follow the closed form on a generated scenario") {
  GenSpec spec;
  spec.seed = 3;
  const Scenario s = generate_scenario(spec);
  Placement p;
  p.altitude = s.params.altitude;
  p.uav_positions = {{250, 500}, {750, 500}, {500, 900}};
  p.is_relay.assign(3, false);
  p.association.assign(static_cast<std::size_t>(s.user_count()), -1);
  const NetworkGraph g = build_graph(s, p);
  const MilpInstance m = build_milp(g, commodities_of(s), s.params);
  // Independent count straight from the graph.
  int uav_edges = 0;
  for (const GraphEdge& e : g.edges) uav_edges += e.kind == LinkKind::ground ? 0 : 1;
  const int q = static_cast<int>(s.demand.size());
  CHECK(m.lp.num_vars() == q * g.edge_count() + q + uav_edges);
  CHECK(m.lp.num_rows() == q * g.node_count() + g.edge_count() + 3);
  CHECK(count_rows_named(m, "uav_") == 3);
}

TEST_CASE("all-ground path of sufficient capacity carries the full demand") {
  NetworkGraph g;
  g.user_count = 3;
  g.nodes.resize(3);
  for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}}) {
    g.edges.push_back({a, b, LinkKind::ground, 2000.0});
    g.edges.push_back({b, a, LinkKind::ground, 2000.0});
  }
  const RoutingSolution s = route(g, {{0, 2, 700.0}}, params_with_lambda(0.5));
  CHECK(s.status == MipStatus::optimal);
  CHECK(s.supported[0] == doctest::Approx(700.0));
  CHECK(s.total_power() == 0.0);
}

TEST_CASE("commodity without a path is unsupported") {
  NetworkGraph g;
  g.user_count = 2;
  g.nodes.resize(2);
  const RoutingSolution s = route(g, {{0, 1, 300.0}}, Params{});
  CHECK(s.status == MipStatus::optimal);
  CHECK(s.supported[0] == 0.0);
}

TEST_CASE("branch and bound matches y-enumeration on random routing instances") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const NetworkGraph g = oracle::random_routing_graph(rng, 4);
    const auto com = oracle::random_commodities(rng, g.user_count);
    Params p = params_with_lambda(trial % 2 == 0 ? 0.0 : 2.0);
    p.uav_capacity = 400.0;
    const MilpInstance m = build_milp(g, com, p);
    REQUIRE(m.binary_edges.size() <= 8);
    const RoutingSolution s = solve_milp(m);
    const oracle::Enumerated want = oracle::enumerate_binaries(m.lp, m.binary_columns());
    CAPTURE(trial);
    REQUIRE(want.feasible);
    CHECK(s.status == MipStatus::optimal);
    CHECK(std::abs(s.objective - (want.objective + m.objective_constant)) <=
          1e-6 * std::max(1.0, std::abs(s.objective)));
    CHECK(s.objective <= s.bound + 1e-12);
    CHECK(verify_solution(m, s, 1e-6).passed);
  }
}

TEST_CASE("branch and bound solves fixed-charge problems exactly") {
  // maximize sum p_i x_i - c_i y_i with x_i <= u_i y_i and shared capacity.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> small(1, 9), count_d(2, 8);
  int branched = 0;
  for (int trial = 0; trial < 60; ++trial) {
    lp::LinearProgram lp;
    const int k = count_d(rng);
    std::vector<int> ys;
    const int cap_row = lp.add_row(lp::RowSense::less_equal, 2.0 * small(rng) + 1.0);
    for (int i = 0; i < k; ++i) {
      const double u = small(rng);
      const int x = lp.add_var(small(rng), 0.0, u);
      const int y = lp.add_var(-1.5 * small(rng), 0.0, 1.0);
      const int r = lp.add_row(lp::RowSense::less_equal, 0.0);
      lp.add_entry(r, x, 1.0);
      lp.add_entry(r, y, -u);
      lp.add_entry(cap_row, x, 1.0);
      ys.push_back(y);
    }
    const MipResult got = branch_and_bound(lp, ys);
    const oracle::Enumerated want = oracle::enumerate_binaries(lp, ys);
    CAPTURE(trial);
    REQUIRE(got.status == MipStatus::optimal);
    CHECK(std::abs(got.objective - want.objective) <= 1e-6 * std::max(1.0, std::abs(want.objective)));
    CHECK(got.objective <= got.bound + 1e-12);
    branched += got.nodes > 1 ? 1 : 0;
  }
  CHECK(branched > 0);
}

TEST_CASE("node limit without incumbent is reported as unknown") {
  lp::LinearProgram lp;
  const int x = lp.add_var(1.0, 0.0, 1.0);
  const int y = lp.add_var(0.0, 0.0, 1.0);
  const int r = lp.add_row(lp::RowSense::equal, 0.5);
  lp.add_entry(r, x, 1.0);
  lp.add_entry(r, y, 0.0);
  BranchOptions opt;
  opt.node_limit = 0;
  const MipResult res = branch_and_bound(lp, {y, x});
  CHECK(res.status == MipStatus::infeasible);
  const MipResult limited = branch_and_bound(lp, {y, x}, opt);
  CHECK(limited.status == MipStatus::unknown);
}

TEST_CASE("expensive UAV hops make carrying traffic unprofitable") {
  // GU0 -> UAV -> GU1 is the only path; each routed Kbps enters one UAV.
  NetworkGraph g;
  g.user_count = 2;
  g.uav_count = 1;
  g.nodes.resize(3);
  g.nodes[2].kind = NodeKind::uav;
  for (int u : {0, 1}) {
    g.edges.push_back({u, 2, LinkKind::a2g, 5000.0});
    g.edges.push_back({2, u, LinkKind::a2g, 5000.0});
  }
  const double d = 400.0;
  Params p;
  // Per-Kbps reward 1/D against per-Kbps cost lambda*kappa/(L*P0).
  const double breakeven = p.power_static / (p.power_per_kbps * d);
  p.energy_weight = 1.5 * breakeven;
  RoutingSolution s = route(g, {{0, 1, d}}, p);
  CHECK(s.status == MipStatus::optimal);
  CHECK(s.supported[0] == doctest::Approx(0.0));
  CHECK(s.objective == doctest::Approx(-p.energy_weight));
  p.energy_weight = 0.5 * breakeven;
  s = route(g, {{0, 1, d}}, p);
  CHECK(s.supported[0] == doctest::Approx(d));
}

TEST_CASE("raising lambda never increases power or supported traffic") {
  std::mt19937_64 rng(901);
  for (int trial = 0; trial < 25; ++trial) {
    const NetworkGraph g = oracle::random_routing_graph(rng, 4);
    const auto com = oracle::random_commodities(rng, g.user_count);
    double last_power = INFINITY, last_support = INFINITY;
    for (double lambda : {0.0, 0.5, 2.0, 8.0, 50.0}) {
      Params p = params_with_lambda(lambda);
      p.power_per_kbps = 0.01;
      const RoutingSolution s = route(g, com, p);
      REQUIRE(s.status == MipStatus::optimal);
      CAPTURE(trial);
      CAPTURE(lambda);
      CHECK(s.total_power() <= last_power + 1e-6);
      CHECK(s.total_supported() <= last_support + 1e-6);
      last_power = s.total_power();
      last_support = s.total_supported();
    }
  }
}

TEST_CASE("verifier flags a corrupted flow at exactly the two incident nodes") {
  NetworkGraph g;
  g.user_count = 3;
  g.nodes.resize(3);
  for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}}) {
    g.edges.push_back({a, b, LinkKind::ground, 2000.0});
    g.edges.push_back({b, a, LinkKind::ground, 2000.0});
  }
  const MilpInstance m = build_milp(g, {{0, 2, 500.0}}, Params{});
  RoutingSolution s = solve_milp(m);
  REQUIRE(verify_solution(m, s).passed);
  s.flows[0].kbps += 1.0;
  const VerificationReport r = verify_solution(m, s);
  CHECK_FALSE(r.passed);
  int conservation = 0;
  for (const Violation& v : r.violations) {
    if (v.family != "conservation") continue;
    ++conservation;
    const GraphEdge& e = g.edges[static_cast<std::size_t>(s.flows[0].edge)];
    const bool incident = v.where == "q0 node " + std::to_string(e.from) || v.where == "q0 node " + std::to_string(e.to);
    CHECK(incident);
    CHECK(v.amount == doctest::Approx(1.0));
  }
  CHECK(conservation == 2);
}

TEST_CASE("all-zero solution is feasible with objective -lambda") {
  NetworkGraph g;
  g.user_count = 2;
  g.uav_count = 2;
  g.nodes.resize(4);
  for (int u : {0, 1}) {
    g.edges.push_back({u, 2 + u, LinkKind::a2g, 5000.0});
    g.edges.push_back({2 + u, u, LinkKind::a2g, 5000.0});
  }
  g.edges.push_back({2, 3, LinkKind::a2a, 20000.0});
  g.edges.push_back({3, 2, LinkKind::a2a, 20000.0});
  const MilpInstance m = build_milp(g, {{0, 1, 100.0}}, params_with_lambda(0.7));
  RoutingSolution zero;
  zero.supported = {0.0};
  zero.activation.assign(6, 0);
  zero.uav_power = {m.p0, m.p0};
  zero.objective = -0.7;
  const VerificationReport r = verify_solution(m, zero);
  CHECK(r.passed);
  CHECK(r.recomputed_objective == doctest::Approx(-0.7));
}
