#pragma once

// Textbook two-phase tableau simplex with Bland's rule. Deliberately
// unrelated to the library solver: dense storage, explicit slack and
// artificial columns, bounds turned into rows. Small instances only.

#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

enum class Sense { le, eq, ge };

struct DenseLp {
  std::vector<double> c;                  // maximize c . x
  std::vector<double> lo, hi;             // finite bounds
  std::vector<std::vector<double>> a;     // rows
  std::vector<Sense> sense;
  std::vector<double> b;
};

struct DenseResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

inline DenseResult dense_solve(const DenseLp& lp) {
  const double eps = 1e-10;
  const std::size_t n = lp.c.size();
  // Shift x = lo + z; upper bounds become z_j <= hi_j - lo_j rows.
  std::vector<std::vector<double>> rows;
  std::vector<Sense> sense;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < lp.a.size(); ++i) {
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) shift += lp.a[i][j] * lp.lo[j];
    rows.push_back(lp.a[i]);
    sense.push_back(lp.sense[i]);
    rhs.push_back(lp.b[i] - shift);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> r(n, 0.0);
    r[j] = 1.0;
    rows.push_back(r);
    sense.push_back(Sense::le);
    rhs.push_back(lp.hi[j] - lp.lo[j]);
  }
  // Make every rhs non-negative.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rhs[i] < 0.0) {
      for (double& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      if (sense[i] == Sense::le) sense[i] = Sense::ge;
      else if (sense[i] == Sense::ge) sense[i] = Sense::le;
    }
  }
  const std::size_t m = rows.size();
  std::size_t slacks = 0, arts = 0;
  for (Sense s : sense) {
    if (s != Sense::eq) ++slacks;
    if (s != Sense::le) ++arts;
  }
  const std::size_t cols = n + slacks + arts;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(m);
  std::size_t s_at = n, a_at = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = rows[i][j];
    t[i][cols] = rhs[i];
    if (sense[i] == Sense::le) {
      t[i][s_at] = 1.0;
      basis[i] = s_at++;
    } else {
      if (sense[i] == Sense::ge) t[i][s_at++] = -1.0;
      t[i][a_at] = 1.0;
      basis[i] = a_at++;
    }
  }

  auto pivot = [&](std::size_t r, std::size_t col) {
    const double p = t[r][col];
    for (double& v : t[r]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][col] == 0.0) continue;
      const double f = t[i][col];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = col;
  };

  // Minimizes cost . z over allowed columns; returns false if unbounded.
  auto run = [&](const std::vector<double>& cost, std::size_t allowed) {
    for (;;) {
      int enter = -1;
      for (std::size_t j = 0; j < allowed; ++j) {
        double d = cost[j];
        for (std::size_t i = 0; i < m; ++i) d -= cost[basis[i]] * t[i][j];
        if (d < -eps) {
          enter = static_cast<int>(j);
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        const double a = t[i][static_cast<std::size_t>(enter)];
        if (a <= eps) continue;
        const double ratio = t[i][cols] / a;
        if (ratio < best - eps || (std::abs(ratio - best) <= eps && leave >= 0 && basis[i] < basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = static_cast<int>(i);
        }
      }
      if (leave < 0) return false;
      pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
    }
  };

  DenseResult out;
  if (arts > 0) {
    std::vector<double> cost(cols, 0.0);
    for (std::size_t j = n + slacks; j < cols; ++j) cost[j] = 1.0;
    run(cost, cols);
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] >= n + slacks) infeas += t[i][cols];
    }
    if (infeas > 1e-7) return out;
    // Drive remaining zero-level artificials out where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n + slacks) continue;
      for (std::size_t j = 0; j < n + slacks; ++j) {
        if (std::abs(t[i][j]) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }
  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = -lp.c[j];
  // Rows whose artificial could not leave are redundant; their artificial
  // stays at zero because it is excluded from entering.
  run(cost, n + slacks);
  out.feasible = true;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) out.x[basis[i]] = t[i][cols];
  }
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] += lp.lo[j];
    out.objective += lp.c[j] * out.x[j];
  }
  return out;
}

}  // namespace oracle
