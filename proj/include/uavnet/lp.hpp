#pragma once

#include <string>
#include <vector>

namespace uavnet::lp {

enum class RowSense { less_equal, equal, greater_equal };

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// maximize objective . x  subject to  row_i(x) (sense_i) rhs_i,
//                                     lower <= x <= upper (all finite).
struct LinearProgram {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<RowSense> sense;
  std::vector<double> rhs;
  std::vector<Triplet> entries;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  int add_var(double objective_coef, double lo, double hi);
  int add_row(RowSense s, double right_hand_side);
  void add_entry(int row, int col, double value) { entries.push_back({row, col, value}); }

  // Row activity a_i . x for every row.
  std::vector<double> row_activity(const std::vector<double>& x) const;
  double objective_value(const std::vector<double>& x) const;
  // Largest bound or row violation of x.
  double max_violation(const std::vector<double>& x) const;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* lp_status_name(LpStatus status);

enum class PricingRule {
  bland,    // smallest eligible index enters, smallest index leaves on ties
  dantzig,  // largest reduced cost; falls back to Bland while degenerate
};

struct SimplexOptions {
  PricingRule pricing = PricingRule::dantzig;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  int refactor_interval = 100;
  long max_iterations = 5'000'000;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  std::vector<double> duals;  // one per row, for the maximization
  double objective = 0.0;
  double dual_objective = 0.0;  // equals objective at optimality
  long iterations = 0;
  int infeasible_row = -1;      // certificate: row left violated by phase one
};

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace uavnet::lp
