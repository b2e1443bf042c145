#pragma once

#include <string>
#include <vector>

#include "uavnet/milp.hpp"

namespace uavnet {

struct Violation {
  std::string family;
  std::string where;  // e.g. "q3 node 7"
  double amount = 0.0;      // raw violation
  double allowance = 0.0;   // tol * scale that it exceeded
};

struct FamilyReport {
  std::string family;
  double max_violation = 0.0;  // largest violation divided by its scale
  int checked = 0;
};

struct VerificationReport {
  std::vector<FamilyReport> families;
  std::vector<Violation> violations;
  double recomputed_objective = 0.0;
  bool passed = true;

  const FamilyReport* family(const std::string& name) const;
};

// Re-evaluates every constraint of the routing MILP from the graph,
// commodities and parameters, without touching the solver's matrix. Rows
// are judged against tol * max(1, d_q) for commodity rows and
// tol * max(1, capacity) for capacity rows.
VerificationReport verify_solution(const MilpInstance& milp, const RoutingSolution& solution, double tol = 1e-6);

}  // namespace uavnet
