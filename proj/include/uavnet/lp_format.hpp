#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "uavnet/lp.hpp"
#include "uavnet/milp.hpp"
#include "uavnet/verify.hpp"

namespace uavnet {

// Subset of the CPLEX LP text format: one objective (with an optional
// constant term), named rows, a Bounds section and a Binaries section.
// The grammar is documented in docs/lp_format.md.
struct LpFileRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  lp::RowSense sense = lp::RowSense::less_equal;
  double rhs = 0.0;
};

struct LpFile {
  bool maximize = true;
  std::vector<std::pair<std::string, double>> objective;
  double objective_constant = 0.0;
  std::vector<LpFileRow> rows;
  std::map<std::string, std::pair<double, double>> bounds;  // explicit bounds only
  std::set<std::string> binaries;
  std::vector<std::string> variables;  // in order of first appearance

  // Bounds of a variable after applying the format defaults [0, +inf)
  // and [0, 1] for binaries.
  std::pair<double, double> bounds_of(const std::string& name) const;
};

std::string write_lp(const MilpInstance& milp);

// Throws Error(parse) naming the line of the first problem.
LpFile parse_lp(const std::string& text);

// Values by variable name; absent variables are zero.
using Assignment = std::map<std::string, double>;

// Flow, supported and (for the file's binaries) activation values.
Assignment routing_assignment(const RoutingSolution& solution, const LpFile& file);

// Judges every row, bound and integrality restriction of the file. Row
// families follow the name prefix: flow_ -> conservation, cap_ -> capacity,
// uav_ -> throughput. Each row is held to tol * max(1, |rhs|, sum |a_j| max(1, |x_j|)),
// which absorbs the six-decimal rounding of routing files.
VerificationReport verify_assignment(const LpFile& file, const Assignment& values, double tol,
                                     const double* claimed_objective = nullptr);

}  // namespace uavnet
