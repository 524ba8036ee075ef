#pragma once

#include <cstddef>
#include <vector>

#include "birkhoff/matrix.hpp"

namespace birkhoff {

// minimize c^T x subject to A x = b, x >= 0.
struct LinearProgram {
  Matrix a;
  std::vector<double> b;
  std::vector<double> c;
};

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };

  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> duals;  // y with A^T y <= c at optimality (redundant rows get 0)
  std::vector<std::size_t> basis;
  std::size_t iterations = 0;
  // max_j max(0, y^T A_j - c_j), recomputed from the original data
  double dual_infeasibility = 0.0;
  // max_i |A x - b|_i, recomputed from the original data
  double primal_residual = 0.0;
};

// Dense two-phase tableau simplex with Bland's smallest-index rule, so the
// pivot sequence is fully deterministic and cannot cycle. At the optimum the
// basic solution and the duals are recomputed from A by an LU solve on the
// final basis rather than read off the tableau.
LpSolution solve_lp(const LinearProgram& lp, double tolerance = 1e-10);

}  // namespace birkhoff
