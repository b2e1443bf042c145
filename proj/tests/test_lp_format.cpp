#include <cmath>
#include <random>

#include "doctest.h"
#include "support/milp_oracles.hpp"
#include "uavnet/error.hpp"
#include "uavnet/lp_format.hpp"

using namespace uavnet;

namespace {

// Rebuilds a solver LP from a parsed file (binaries relaxed).
lp::LinearProgram to_program(const LpFile& f, std::map<std::string, int>& index) {
  lp::LinearProgram lp;
  for (const std::string& name : f.variables) {
    const auto [lo, hi] = f.bounds_of(name);
    index[name] = lp.add_var(0.0, lo, hi);
  }
  for (const auto& [name, coef] : f.objective) lp.objective[static_cast<std::size_t>(index[name])] += f.maximize ? coef : -coef;
  for (const LpFileRow& row : f.rows) {
    const int r = lp.add_row(row.sense, row.rhs);
    for (const auto& [name, coef] : row.terms) lp.add_entry(r, index[name], coef);
  }
  return lp;
}

}  // namespace

TEST_CASE("written MILP parses back to the same problem") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const NetworkGraph g = oracle::random_routing_graph(rng, 4);
    Params p;
    p.energy_weight = 0.3;
    const MilpInstance m = build_milp(g, oracle::random_commodities(rng, g.user_count), p);
    const LpFile f = parse_lp(write_lp(m));
    CHECK(f.maximize);
    CHECK(static_cast<int>(f.rows.size()) == m.lp.num_rows());
    CHECK(static_cast<int>(f.variables.size()) == m.lp.num_vars());
    CHECK(f.binaries.size() == m.binary_edges.size());
    CHECK(f.objective_constant == doctest::Approx(m.objective_constant));
    std::map<std::string, int> index;
    const lp::LinearProgram back = to_program(f, index);
    const MipResult want = branch_and_bound(m.lp, m.binary_columns());
    std::vector<int> bins;
    for (const std::string& b : f.binaries) bins.push_back(index[b]);
    const MipResult got = branch_and_bound(back, bins);
    CHECK(got.objective == doctest::Approx(want.objective).epsilon(1e-9));

    const RoutingSolution s = solve_milp(m);
    const VerificationReport r = verify_assignment(f, routing_assignment(s, f), 1e-6, &s.objective);
    CHECK(r.passed);
    CHECK(r.recomputed_objective == doctest::Approx(s.objective).epsilon(1e-9));
  }
}

TEST_CASE("assignment checker names the violated family") {
  NetworkGraph g;
  g.user_count = 3;
  g.nodes.resize(3);
  for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}}) {
    g.edges.push_back({a, b, LinkKind::ground, 500.0});
    g.edges.push_back({b, a, LinkKind::ground, 500.0});
  }
  const MilpInstance m = build_milp(g, {{0, 2, 400.0}}, Params{});
  const LpFile f = parse_lp(write_lp(m));
  RoutingSolution s = solve_milp(m);
  Assignment a = routing_assignment(s, f);
  a["f_q0_e0"] += 1.0;
  VerificationReport r = verify_assignment(f, a, 1e-6);
  REQUIRE_FALSE(r.passed);
  CHECK(r.violations.front().family == "conservation");
  CHECK(r.violations.size() == 2);

  a = routing_assignment(s, f);
  a["f_q0_e0"] = 600.0;
  a["f_q0_e2"] = 600.0;
  a["x_q0"] = 600.0;
  r = verify_assignment(f, a, 1e-6);
  CHECK(r.family("capacity")->max_violation > 0.1);
  CHECK(r.family("bounds")->max_violation > 0.1);
  CHECK(r.family("conservation")->max_violation < 1e-12);

  a = routing_assignment(s, f);
  a["f_q9_e0"] = 1.0;
  r = verify_assignment(f, a, 1e-6);
  CHECK_FALSE(r.passed);
  CHECK(r.violations.front().family == "unknown_variable");
}

TEST_CASE("parser accepts the documented bound forms") {
  const LpFile f = parse_lp(
      "\\ comment\n"
      "Minimize\n"
      " cost: 2 a + b - 3.5 c + 4\n"
      "Subject To\n"
      " r1: a + b\n"
      "     >= 1\n"
      " -a + 2 c <= 3\n"
      "Bounds\n"
      " a free\n"
      " b >= 2\n"
      " -inf <= c <= 3\n"
      " d = 1.5\n"
      "Binary\n"
      " e\n"
      "End\n");
  CHECK_FALSE(f.maximize);
  CHECK(f.objective_constant == 4.0);
  REQUIRE(f.rows.size() == 2);
  CHECK(f.rows[0].name == "r1");
  CHECK(f.rows[0].sense == lp::RowSense::greater_equal);
  CHECK(f.rows[1].name == "R2");
  CHECK(std::isinf(f.bounds_of("a").first));
  CHECK(f.bounds_of("b") == std::pair{2.0, static_cast<double>(INFINITY)});
  CHECK(f.bounds_of("c").second == 3.0);
  CHECK(f.bounds_of("d") == std::pair{1.5, 1.5});
  CHECK(f.bounds_of("e") == std::pair{0.0, 1.0});
}

TEST_CASE("parser errors carry the line number") {
  auto message = [](const std::string& text) {
    try {
      parse_lp(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::parse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("Maximize\n obj: x\nSubject To\n c1: x <= 1\n") .find("missing End") != std::string::npos);
  CHECK(message("Maximize\n obj: x\nSubject To\n c1: x 2 <= 1\nEnd\n").find("line 4") != std::string::npos);
  CHECK(message("Maximize\n obj: x\nSubject To\n c1: x + y\nEnd\n").find("no relational operator") != std::string::npos);
  CHECK(message("Maximize\n obj: x ? 1\nEnd\n").find("line 2") != std::string::npos);
}
