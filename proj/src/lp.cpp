#include "uavnet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uavnet/error.hpp"

namespace uavnet::lp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-14;
constexpr int kDegenerateRunBeforeBland = 50;

// Bounded-variable primal simplex on  A x + s = b  with one logical s_i per
// row, using a product-form inverse that is rebuilt every
// refactor_interval pivots.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& options) : lp_(lp), opt_(options) {
    m_ = lp.num_rows();
    n_ = lp.num_vars();
    build_columns();
  }

  LpSolution run();

 private:
  struct Eta {
    int row;
    double pivot;
    std::size_t begin;
    std::size_t end;
  };

  enum class Phase { one, two };

  void build_columns();
  int total_vars() const { return n_ + m_ + static_cast<int>(art_row_.size()); }
  bool is_structural(int j) const { return j < n_; }
  bool is_logical(int j) const { return j >= n_ && j < n_ + m_; }

  // Scatter column j into dense vector v (v must be zero on entry).
  void load_column(int j, std::vector<double>& v) const;
  double dot_column(int j, const std::vector<double>& y) const;

  void ftran(std::vector<double>& v) const;
  void btran(std::vector<double>& y) const;
  void push_eta(const std::vector<double>& alpha, int row);
  void reinvert();
  void recompute_basic_values();

  // Returns false when the iteration limit is hit.
  bool optimize(Phase phase, LpStatus& status);
  void set_costs(Phase phase);

  const LinearProgram& lp_;
  SimplexOptions opt_;
  int m_ = 0;
  int n_ = 0;

  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;

  std::vector<int> art_row_;
  std::vector<double> art_sign_;

  std::vector<double> lb_, ub_, x_, cost_;
  std::vector<int> head_;      // basic variable per position
  std::vector<int> position_;  // position per variable, -1 when nonbasic
  std::vector<bool> at_upper_;

  std::vector<Eta> etas_;
  std::vector<int> eta_idx_;
  std::vector<double> eta_val_;
  int pivots_since_refactor_ = 0;

  double objective_scale_ = 1.0;
  long iterations_ = 0;
};

void Simplex::build_columns() {
  std::vector<int> counts(static_cast<std::size_t>(n_) + 1, 0);
  for (const Triplet& t : lp_.entries) {
    if (t.row < 0 || t.row >= m_ || t.col < 0 || t.col >= n_) {
      throw Error(ErrorCode::internal, "LP entry out of range");
    }
    ++counts[static_cast<std::size_t>(t.col) + 1];
  }
  for (int j = 0; j < n_; ++j) counts[static_cast<std::size_t>(j) + 1] += counts[static_cast<std::size_t>(j)];
  col_start_ = counts;
  col_row_.resize(lp_.entries.size());
  col_val_.resize(lp_.entries.size());
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (const Triplet& t : lp_.entries) {
    const int k = fill[static_cast<std::size_t>(t.col)]++;
    col_row_[static_cast<std::size_t>(k)] = t.row;
    col_val_[static_cast<std::size_t>(k)] = t.value;
  }
}

void Simplex::load_column(int j, std::vector<double>& v) const {
  if (is_structural(j)) {
    for (int k = col_start_[static_cast<std::size_t>(j)]; k < col_start_[static_cast<std::size_t>(j) + 1]; ++k) {
      v[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(k)])] += col_val_[static_cast<std::size_t>(k)];
    }
  } else if (is_logical(j)) {
    v[static_cast<std::size_t>(j - n_)] = 1.0;
  } else {
    const std::size_t a = static_cast<std::size_t>(j - n_ - m_);
    v[static_cast<std::size_t>(art_row_[a])] = art_sign_[a];
  }
}

double Simplex::dot_column(int j, const std::vector<double>& y) const {
  if (is_structural(j)) {
    double s = 0.0;
    for (int k = col_start_[static_cast<std::size_t>(j)]; k < col_start_[static_cast<std::size_t>(j) + 1]; ++k) {
      s += col_val_[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(k)])];
    }
    return s;
  }
  if (is_logical(j)) return y[static_cast<std::size_t>(j - n_)];
  const std::size_t a = static_cast<std::size_t>(j - n_ - m_);
  return art_sign_[a] * y[static_cast<std::size_t>(art_row_[a])];
}

void Simplex::ftran(std::vector<double>& v) const {
  for (const Eta& e : etas_) {
    double t = v[static_cast<std::size_t>(e.row)];
    if (t == 0.0) continue;
    t /= e.pivot;
    v[static_cast<std::size_t>(e.row)] = t;
    for (std::size_t k = e.begin; k < e.end; ++k) v[static_cast<std::size_t>(eta_idx_[k])] -= eta_val_[k] * t;
  }
}

void Simplex::btran(std::vector<double>& y) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = y[static_cast<std::size_t>(it->row)];
    for (std::size_t k = it->begin; k < it->end; ++k) s -= eta_val_[k] * y[static_cast<std::size_t>(eta_idx_[k])];
    y[static_cast<std::size_t>(it->row)] = s / it->pivot;
  }
}

void Simplex::push_eta(const std::vector<double>& alpha, int row) {
  Eta e{row, alpha[static_cast<std::size_t>(row)], eta_idx_.size(), 0};
  for (int i = 0; i < m_; ++i) {
    if (i != row && std::abs(alpha[static_cast<std::size_t>(i)]) > kDropTol) {
      eta_idx_.push_back(i);
      eta_val_.push_back(alpha[static_cast<std::size_t>(i)]);
    }
  }
  e.end = eta_idx_.size();
  if (e.end == e.begin && e.pivot == 1.0) return;
  etas_.push_back(e);
}

void Simplex::reinvert() {
  etas_.clear();
  eta_idx_.clear();
  eta_val_.clear();
  pivots_since_refactor_ = 0;

  std::vector<int> basics = head_;
  std::vector<int> new_head(static_cast<std::size_t>(m_), -1);
  std::vector<int> deferred;
  // Unit columns first: they pivot on their own row without fill.
  for (int j : basics) {
    if (is_structural(j)) {
      deferred.push_back(j);
      continue;
    }
    const int row = is_logical(j) ? j - n_ : art_row_[static_cast<std::size_t>(j - n_ - m_)];
    if (new_head[static_cast<std::size_t>(row)] != -1) {
      deferred.push_back(j);
      continue;
    }
    new_head[static_cast<std::size_t>(row)] = j;
    if (!is_logical(j) && art_sign_[static_cast<std::size_t>(j - n_ - m_)] < 0.0) {
      etas_.push_back({row, -1.0, eta_idx_.size(), eta_idx_.size()});
    }
  }
  std::vector<double> v(static_cast<std::size_t>(m_));
  std::vector<int> dropped;
  for (int j : deferred) {
    std::fill(v.begin(), v.end(), 0.0);
    load_column(j, v);
    ftran(v);
    int best = -1;
    double best_abs = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (new_head[static_cast<std::size_t>(i)] != -1) continue;
      const double a = std::abs(v[static_cast<std::size_t>(i)]);
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (best < 0 || best_abs < 1e-11) {
      dropped.push_back(j);
      continue;
    }
    new_head[static_cast<std::size_t>(best)] = j;
    push_eta(v, best);
  }
  // Singular leftovers leave the basis; their rows take the logical.
  for (int j : dropped) {
    position_[static_cast<std::size_t>(j)] = -1;
    at_upper_[static_cast<std::size_t>(j)] = std::isinf(lb_[static_cast<std::size_t>(j)]);
    x_[static_cast<std::size_t>(j)] = at_upper_[static_cast<std::size_t>(j)] ? ub_[static_cast<std::size_t>(j)]
                                                                              : lb_[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i < m_; ++i) {
    if (new_head[static_cast<std::size_t>(i)] != -1) continue;
    const int logical = n_ + i;
    std::fill(v.begin(), v.end(), 0.0);
    load_column(logical, v);
    ftran(v);
    if (std::abs(v[static_cast<std::size_t>(i)]) < 1e-11) {
      throw Error(ErrorCode::solver, "simplex: basis repair failed");
    }
    if (position_[static_cast<std::size_t>(logical)] >= 0) {
      throw Error(ErrorCode::solver, "simplex: inconsistent basis during repair");
    }
    new_head[static_cast<std::size_t>(i)] = logical;
    push_eta(v, i);
  }
  head_ = new_head;
  for (int p = 0; p < m_; ++p) position_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])] = p;
  recompute_basic_values();
}

void Simplex::recompute_basic_values() {
  std::vector<double> r(lp_.rhs.begin(), lp_.rhs.end());
  std::vector<double> col(static_cast<std::size_t>(m_));
  for (int j = 0; j < total_vars(); ++j) {
    if (position_[static_cast<std::size_t>(j)] >= 0) continue;
    const double xj = x_[static_cast<std::size_t>(j)];
    if (xj == 0.0) continue;
    if (is_structural(j)) {
      for (int k = col_start_[static_cast<std::size_t>(j)]; k < col_start_[static_cast<std::size_t>(j) + 1]; ++k) {
        r[static_cast<std::size_t>(col_row_[static_cast<std::size_t>(k)])] -= col_val_[static_cast<std::size_t>(k)] * xj;
      }
    } else {
      std::fill(col.begin(), col.end(), 0.0);
      load_column(j, col);
      for (int i = 0; i < m_; ++i) r[static_cast<std::size_t>(i)] -= col[static_cast<std::size_t>(i)] * xj;
    }
  }
  ftran(r);
  for (int p = 0; p < m_; ++p) x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])] = r[static_cast<std::size_t>(p)];
}

void Simplex::set_costs(Phase phase) {
  cost_.assign(static_cast<std::size_t>(total_vars()), 0.0);
  if (phase == Phase::one) {
    for (int a = 0; a < static_cast<int>(art_row_.size()); ++a) cost_[static_cast<std::size_t>(n_ + m_ + a)] = 1.0;
  } else {
    for (int j = 0; j < n_; ++j) cost_[static_cast<std::size_t>(j)] = -lp_.objective[static_cast<std::size_t>(j)] * objective_scale_;
  }
}

bool Simplex::optimize(Phase phase, LpStatus& status) {
  set_costs(phase);
  const int total = total_vars();
  std::vector<double> y(static_cast<std::size_t>(m_));
  std::vector<double> alpha(static_cast<std::size_t>(m_));
  int degenerate_run = 0;

  for (;;) {
    if (iterations_ >= opt_.max_iterations) {
      status = LpStatus::iteration_limit;
      return false;
    }
    for (int p = 0; p < m_; ++p) y[static_cast<std::size_t>(p)] = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])];
    btran(y);

    const bool bland = opt_.pricing == PricingRule::bland || degenerate_run >= kDegenerateRunBeforeBland;
    int entering = -1;
    double best_score = 0.0;
    double entering_d = 0.0;
    for (int j = 0; j < total; ++j) {
      if (position_[static_cast<std::size_t>(j)] >= 0) continue;
      if (lb_[static_cast<std::size_t>(j)] == ub_[static_cast<std::size_t>(j)]) continue;
      const double d = cost_[static_cast<std::size_t>(j)] - dot_column(j, y);
      const bool eligible = at_upper_[static_cast<std::size_t>(j)] ? d > opt_.optimality_tol : d < -opt_.optimality_tol;
      if (!eligible) continue;
      if (bland) {
        entering = j;
        entering_d = d;
        break;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        entering = j;
        entering_d = d;
      }
    }
    if (entering < 0) {
      status = LpStatus::optimal;
      return true;
    }

    std::fill(alpha.begin(), alpha.end(), 0.0);
    load_column(entering, alpha);
    ftran(alpha);
    const double dir = entering_d < 0.0 ? 1.0 : -1.0;

    double theta = ub_[static_cast<std::size_t>(entering)] - lb_[static_cast<std::size_t>(entering)];
    int leave = -1;
    bool leave_to_upper = false;
    for (int p = 0; p < m_; ++p) {
      const double a = alpha[static_cast<std::size_t>(p)];
      if (std::abs(a) < kPivotTol) continue;
      const int j = head_[static_cast<std::size_t>(p)];
      const double rate = -dir * a;
      double t;
      bool to_upper;
      if (rate < 0.0) {
        if (std::isinf(lb_[static_cast<std::size_t>(j)])) continue;
        t = (x_[static_cast<std::size_t>(j)] - lb_[static_cast<std::size_t>(j)]) / -rate;
        to_upper = false;
      } else {
        if (std::isinf(ub_[static_cast<std::size_t>(j)])) continue;
        t = (ub_[static_cast<std::size_t>(j)] - x_[static_cast<std::size_t>(j)]) / rate;
        to_upper = true;
      }
      t = std::max(t, 0.0);
      const double tie = 1e-11 * std::max(1.0, t);
      bool take = false;
      if (t < theta - tie) {
        take = true;
      } else if (leave >= 0 && t <= theta + tie) {
        const int current = head_[static_cast<std::size_t>(leave)];
        take = bland ? j < current : std::abs(a) > std::abs(alpha[static_cast<std::size_t>(leave)]);
      }
      if (take) {
        theta = std::min(theta, t);
        leave = p;
        leave_to_upper = to_upper;
      }
    }
    if (std::isinf(theta)) {
      status = LpStatus::unbounded;
      return true;
    }
    ++iterations_;
    degenerate_run = theta <= opt_.feasibility_tol ? degenerate_run + 1 : 0;

    x_[static_cast<std::size_t>(entering)] += dir * theta;
    for (int p = 0; p < m_; ++p) {
      const double a = alpha[static_cast<std::size_t>(p)];
      if (a != 0.0) x_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])] -= dir * theta * a;
    }
    if (leave < 0) {
      at_upper_[static_cast<std::size_t>(entering)] = !at_upper_[static_cast<std::size_t>(entering)];
      x_[static_cast<std::size_t>(entering)] = at_upper_[static_cast<std::size_t>(entering)]
                                                   ? ub_[static_cast<std::size_t>(entering)]
                                                   : lb_[static_cast<std::size_t>(entering)];
      continue;
    }
    const int leaving = head_[static_cast<std::size_t>(leave)];
    position_[static_cast<std::size_t>(leaving)] = -1;
    at_upper_[static_cast<std::size_t>(leaving)] = leave_to_upper;
    x_[static_cast<std::size_t>(leaving)] = leave_to_upper ? ub_[static_cast<std::size_t>(leaving)] : lb_[static_cast<std::size_t>(leaving)];
    head_[static_cast<std::size_t>(leave)] = entering;
    position_[static_cast<std::size_t>(entering)] = leave;
    at_upper_[static_cast<std::size_t>(entering)] = false;
    push_eta(alpha, leave);
    if (++pivots_since_refactor_ >= opt_.refactor_interval) reinvert();
  }
}

LpSolution Simplex::run() {
  LpSolution out;
  for (int j = 0; j < n_; ++j) {
    if (!std::isfinite(lp_.lower[static_cast<std::size_t>(j)]) || !std::isfinite(lp_.upper[static_cast<std::size_t>(j)])) {
      throw Error(ErrorCode::invalid_argument, "solve_lp: variable " + std::to_string(j) + " needs finite bounds");
    }
    if (lp_.lower[static_cast<std::size_t>(j)] > lp_.upper[static_cast<std::size_t>(j)]) {
      out.status = LpStatus::infeasible;
      return out;
    }
  }
  double cmax = 0.0;
  for (double c : lp_.objective) cmax = std::max(cmax, std::abs(c));
  objective_scale_ = cmax > 0.0 ? 1.0 / cmax : 1.0;

  lb_.assign(lp_.lower.begin(), lp_.lower.end());
  ub_.assign(lp_.upper.begin(), lp_.upper.end());
  x_.assign(lp_.lower.begin(), lp_.lower.end());
  for (int i = 0; i < m_; ++i) {
    switch (lp_.sense[static_cast<std::size_t>(i)]) {
      case RowSense::less_equal: lb_.push_back(0.0); ub_.push_back(kInf); break;
      case RowSense::equal: lb_.push_back(0.0); ub_.push_back(0.0); break;
      case RowSense::greater_equal: lb_.push_back(-kInf); ub_.push_back(0.0); break;
    }
  }
  const std::vector<double> activity = lp_.row_activity(x_);
  head_.assign(static_cast<std::size_t>(m_), -1);
  std::vector<double> logical_value(static_cast<std::size_t>(m_));
  std::vector<bool> logical_upper(static_cast<std::size_t>(m_), false);
  std::vector<double> art_value;
  for (int i = 0; i < m_; ++i) {
    const double r = lp_.rhs[static_cast<std::size_t>(i)] - activity[static_cast<std::size_t>(i)];
    const double lo = lb_[static_cast<std::size_t>(n_ + i)];
    const double hi = ub_[static_cast<std::size_t>(n_ + i)];
    if (r >= lo && r <= hi) {
      logical_value[static_cast<std::size_t>(i)] = r;
      head_[static_cast<std::size_t>(i)] = n_ + i;
      continue;
    }
    const double bound = r < lo ? lo : hi;
    logical_value[static_cast<std::size_t>(i)] = bound;
    logical_upper[static_cast<std::size_t>(i)] = r > hi;
    art_row_.push_back(i);
    art_sign_.push_back(r - bound > 0.0 ? 1.0 : -1.0);
    art_value.push_back(std::abs(r - bound));
    head_[static_cast<std::size_t>(i)] = n_ + m_ + static_cast<int>(art_row_.size()) - 1;
  }
  for (int i = 0; i < m_; ++i) x_.push_back(logical_value[static_cast<std::size_t>(i)]);
  for (double v : art_value) {
    x_.push_back(v);
    lb_.push_back(0.0);
    ub_.push_back(kInf);
  }
  position_.assign(static_cast<std::size_t>(total_vars()), -1);
  at_upper_.assign(static_cast<std::size_t>(total_vars()), false);
  for (int i = 0; i < m_; ++i) at_upper_[static_cast<std::size_t>(n_ + i)] = logical_upper[static_cast<std::size_t>(i)];
  for (int p = 0; p < m_; ++p) position_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])] = p;
  reinvert();

  LpStatus status = LpStatus::optimal;
  if (!art_row_.empty()) {
    if (!optimize(Phase::one, status)) {
      out.status = status;
      out.iterations = iterations_;
      return out;
    }
    double rhs_scale = 1.0;
    for (double b : lp_.rhs) rhs_scale = std::max(rhs_scale, std::abs(b));
    double infeasibility = 0.0;
    double worst = 0.0;
    for (std::size_t a = 0; a < art_row_.size(); ++a) {
      const double v = x_[static_cast<std::size_t>(n_ + m_) + a];
      infeasibility += v;
      if (v > worst) {
        worst = v;
        out.infeasible_row = art_row_[a];
      }
    }
    if (infeasibility > opt_.feasibility_tol * rhs_scale * 10.0) {
      out.status = LpStatus::infeasible;
      out.iterations = iterations_;
      return out;
    }
    out.infeasible_row = -1;
    for (std::size_t a = 0; a < art_row_.size(); ++a) {
      const std::size_t j = static_cast<std::size_t>(n_ + m_) + a;
      ub_[j] = 0.0;
      if (position_[j] < 0) x_[j] = 0.0;
    }
  }
  optimize(Phase::two, status);
  out.status = status;
  out.iterations = iterations_;
  if (status != LpStatus::optimal) return out;

  reinvert();
  out.x.assign(x_.begin(), x_.begin() + n_);
  for (int j = 0; j < n_; ++j) {
    out.x[static_cast<std::size_t>(j)] =
        std::clamp(out.x[static_cast<std::size_t>(j)], lp_.lower[static_cast<std::size_t>(j)], lp_.upper[static_cast<std::size_t>(j)]);
  }
  out.objective = lp_.objective_value(out.x);

  // Dual bound of the internal minimization, mapped back to the maximization.
  std::vector<double> y(static_cast<std::size_t>(m_));
  for (int p = 0; p < m_; ++p) y[static_cast<std::size_t>(p)] = cost_[static_cast<std::size_t>(head_[static_cast<std::size_t>(p)])];
  btran(y);
  double dual = 0.0;
  for (int i = 0; i < m_; ++i) dual += y[static_cast<std::size_t>(i)] * lp_.rhs[static_cast<std::size_t>(i)];
  for (int j = 0; j < total_vars(); ++j) {
    const double d = cost_[static_cast<std::size_t>(j)] - dot_column(j, y);
    if (d == 0.0) continue;
    const double bound = d > 0.0 ? lb_[static_cast<std::size_t>(j)] : ub_[static_cast<std::size_t>(j)];
    if (std::isinf(bound)) {
      if (std::abs(d) > opt_.optimality_tol) dual = -kInf;
      continue;
    }
    dual += d * bound;
  }
  out.dual_objective = -dual / objective_scale_;
  out.duals.resize(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i) out.duals[static_cast<std::size_t>(i)] = -y[static_cast<std::size_t>(i)] / objective_scale_;
  return out;
}

}  // namespace

int LinearProgram::add_var(double objective_coef, double lo, double hi) {
  objective.push_back(objective_coef);
  lower.push_back(lo);
  upper.push_back(hi);
  return num_vars() - 1;
}

int LinearProgram::add_row(RowSense s, double right_hand_side) {
  sense.push_back(s);
  rhs.push_back(right_hand_side);
  return num_rows() - 1;
}

std::vector<double> LinearProgram::row_activity(const std::vector<double>& x) const {
  std::vector<double> out(static_cast<std::size_t>(num_rows()), 0.0);
  for (const Triplet& t : entries) out[static_cast<std::size_t>(t.row)] += t.value * x[static_cast<std::size_t>(t.col)];
  return out;
}

double LinearProgram::objective_value(const std::vector<double>& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < objective.size(); ++j) s += objective[j] * x[j];
  return s;
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < objective.size(); ++j) {
    worst = std::max({worst, lower[j] - x[j], x[j] - upper[j]});
  }
  const std::vector<double> act = row_activity(x);
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    switch (sense[i]) {
      case RowSense::less_equal: worst = std::max(worst, act[i] - rhs[i]); break;
      case RowSense::equal: worst = std::max(worst, std::abs(act[i] - rhs[i])); break;
      case RowSense::greater_equal: worst = std::max(worst, rhs[i] - act[i]); break;
    }
  }
  return worst;
}

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  if (lp.lower.size() != lp.objective.size() || lp.upper.size() != lp.objective.size() ||
      lp.sense.size() != lp.rhs.size()) {
    throw Error(ErrorCode::invalid_argument, "solve_lp: inconsistent LP dimensions");
  }
  return Simplex(lp, options).run();
}

}  // namespace uavnet::lp
