#include "ocs/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ocs/core.hpp"

namespace ocs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;

enum Status : unsigned char { kAtLower = 0, kAtUpper = 1, kBasic = 2 };

struct Tableau {
  int m = 0;
  int total = 0;  // structural + artificial columns
  std::vector<double> tab;   // m x total, B^{-1} A
  std::vector<double> rhs;   // current values of basic variables
  std::vector<int> basis;    // row -> column
  std::vector<Status> status;
  std::vector<double> upper;

  double& at(int r, int col) { return tab[static_cast<size_t>(r) * total + col]; }
  double at(int r, int col) const { return tab[static_cast<size_t>(r) * total + col]; }

  double value(int j) const {
    if (status[j] == kAtLower) return 0.0;
    if (status[j] == kAtUpper) return upper[j];
    for (int i = 0; i < m; ++i) {
      if (basis[i] == j) return rhs[i];
    }
    return 0.0;
  }
};

// One simplex phase over cost vector d. Returns false on iteration blowup.
bool run_phase(Tableau& t, const std::vector<double>& d) {
  const int m = t.m;
  const int total = t.total;
  const long max_iter = 60L * (m + total) + 20000;
  const long bland_after = 12L * (m + total) + 2000;
  std::vector<double> pi(m);
  std::vector<double> red(total);

  for (long iter = 0; iter < max_iter; ++iter) {
    bool bland = iter > bland_after;
    for (int i = 0; i < m; ++i) pi[i] = d[t.basis[i]];
    for (int j = 0; j < total; ++j) red[j] = d[j];
    for (int i = 0; i < m; ++i) {
      double p = pi[i];
      if (p == 0.0) continue;
      const double* row = &t.tab[static_cast<size_t>(i) * total];
      for (int j = 0; j < total; ++j) red[j] -= p * row[j];
    }

    int enter = -1;
    int dir = 0;
    double best = kCostTol;
    for (int j = 0; j < total; ++j) {
      if (t.status[j] == kBasic) continue;
      double score = 0.0;
      int jdir = 0;
      if (t.status[j] == kAtLower && red[j] < -kCostTol) {
        score = -red[j];
        jdir = 1;
      } else if (t.status[j] == kAtUpper && red[j] > kCostTol) {
        score = red[j];
        jdir = -1;
      } else {
        continue;
      }
      if (bland) {
        enter = j;
        dir = jdir;
        break;
      }
      if (score > best) {
        best = score;
        enter = j;
        dir = jdir;
      }
    }
    if (enter < 0) return true;  // optimal for this phase

    // ratio test: delta is the travel of the entering variable
    double limit = t.upper[enter];
    int leave = -1;
    int leave_to = kAtLower;
    double leave_piv = 0.0;
    for (int i = 0; i < m; ++i) {
      double alpha = t.at(i, enter) * dir;
      double cap;
      int to;
      if (alpha > kPivotTol) {
        cap = std::max(0.0, t.rhs[i]) / alpha;
        to = kAtLower;
      } else if (alpha < -kPivotTol) {
        double ub = t.upper[t.basis[i]];
        if (ub == kInf) continue;
        cap = std::max(0.0, ub - t.rhs[i]) / (-alpha);
        to = kAtUpper;
      } else {
        continue;
      }
      bool better = cap < limit - 1e-12;
      bool tie = !better && cap < limit + 1e-12 && leave >= 0;
      if (tie) {
        better = bland ? (t.basis[i] < t.basis[leave])
                       : (std::fabs(t.at(i, enter)) > std::fabs(leave_piv));
      }
      if (better) {
        limit = cap;
        leave = i;
        leave_to = to;
        leave_piv = t.at(i, enter);
      }
    }
    if (limit == kInf) fail("solver-error", "lp: unbounded direction");

    if (leave < 0) {
      // bound flip of the entering variable
      for (int i = 0; i < m; ++i) t.rhs[i] -= t.at(i, enter) * dir * limit;
      t.status[enter] = (t.status[enter] == kAtLower) ? kAtUpper : kAtLower;
      continue;
    }

    double enter_val = (t.status[enter] == kAtLower ? 0.0 : t.upper[enter]) + dir * limit;
    for (int i = 0; i < m; ++i) {
      if (i != leave) t.rhs[i] -= t.at(i, enter) * dir * limit;
    }
    int out = t.basis[leave];
    t.status[out] = static_cast<Status>(leave_to);
    t.status[enter] = kBasic;
    t.basis[leave] = enter;
    t.rhs[leave] = enter_val;

    double piv = t.at(leave, enter);
    double* prow = &t.tab[static_cast<size_t>(leave) * total];
    double inv = 1.0 / piv;
    for (int j = 0; j < total; ++j) prow[j] *= inv;
    prow[enter] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      double f = t.at(i, enter);
      if (f == 0.0) continue;
      double* row = &t.tab[static_cast<size_t>(i) * total];
      for (int j = 0; j < total; ++j) row[j] -= f * prow[j];
      row[enter] = 0.0;
    }
  }
  return false;
}

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const int m = p.rows;
  const int n = p.cols;
  if (m <= 0 || n <= 0 || static_cast<int>(p.a.size()) != m * n ||
      static_cast<int>(p.b.size()) != m || static_cast<int>(p.c.size()) != n ||
      static_cast<int>(p.upper.size()) != n) {
    fail("solver-error", "lp: inconsistent problem dimensions");
  }

  Tableau t;
  t.m = m;
  t.total = n + m;
  t.tab.assign(static_cast<size_t>(m) * t.total, 0.0);
  t.rhs.resize(m);
  t.basis.resize(m);
  t.status.assign(t.total, kAtLower);
  t.upper.resize(t.total);
  for (int j = 0; j < n; ++j) t.upper[j] = p.upper[j];

  for (int i = 0; i < m; ++i) {
    double sign = p.b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) t.at(i, j) = sign * p.at(i, j);
    t.rhs[i] = sign * p.b[i];
    int art = n + i;
    t.at(i, art) = 1.0;
    t.upper[art] = kInf;
    t.basis[i] = art;
    t.status[art] = kBasic;
  }

  std::vector<double> d1(t.total, 0.0);
  for (int i = 0; i < m; ++i) d1[n + i] = 1.0;
  if (!run_phase(t, d1)) fail("solver-error", "lp: phase one did not converge");
  double infeas = 0.0;
  for (int j = n; j < t.total; ++j) infeas += t.value(j);
  if (infeas > 1e-7) fail("solver-error", "lp: infeasible constraints");
  for (int j = n; j < t.total; ++j) t.upper[j] = 0.0;

  std::vector<double> d2(t.total, 0.0);
  for (int j = 0; j < n; ++j) d2[j] = p.c[j];
  if (!run_phase(t, d2)) fail("solver-error", "lp: phase two did not converge");

  LpSolution sol;
  sol.optimal = true;
  sol.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double v = t.value(j);
    double ub = p.upper[j];
    v = std::max(0.0, ub == kInf ? v : std::min(ub, v));
    sol.x[j] = v;
  }
  for (int j = 0; j < n; ++j) sol.objective += p.c[j] * sol.x[j];
  return sol;
}

}  // namespace ocs
