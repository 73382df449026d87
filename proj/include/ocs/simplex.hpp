#pragma once

#include <vector>

namespace ocs {

// Dense equality-form linear program with box variables:
//   minimize c.x  subject to  A x = b,  0 <= x_j <= upper_j.
// Solved by a two-phase bounded-variable tableau simplex. Intended for the
// moderate problem sizes produced by the offline solver; not sparse.
struct LpProblem {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;      // rows x cols, row-major
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> upper;  // +inf allowed

  double& at(int r, int col) { return a[static_cast<size_t>(r) * cols + col]; }
  double at(int r, int col) const { return a[static_cast<size_t>(r) * cols + col]; }
};

struct LpSolution {
  bool optimal = false;
  double objective = 0.0;
  std::vector<double> x;
};

// Throws Error("solver-error") on infeasibility or iteration blowup.
LpSolution solve_lp(const LpProblem& p);

}  // namespace ocs
