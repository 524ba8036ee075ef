#include "birkhoff/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "birkhoff/error.hpp"
#include "birkhoff/kernels.hpp"

namespace birkhoff {

namespace {

class Tableau {
 public:
  // rows x (cols + artificials + 1); the last column is the right-hand side.
  Tableau(std::size_t rows, std::size_t width) : rows_(rows), width_(width), t_(rows + 1, width) {}

  double& at(std::size_t i, std::size_t j) { return t_(i, j); }
  double at(std::size_t i, std::size_t j) const { return t_(i, j); }
  double& objective(std::size_t j) { return t_(rows_, j); }
  std::size_t rhs() const { return width_ - 1; }

  void pivot(std::size_t row, std::size_t col) {
    const auto& k = kernels::active();
    const double inv = 1.0 / t_(row, col);
    for (double& v : t_.row(row)) v *= inv;
    t_(row, col) = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f == 0.0) continue;
      k.axpy(-f, t_.row(row).data(), t_.row(i).data(), width_);
      t_(i, col) = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t width_;
  Matrix t_;
};

// Bland: lowest-index improving column, then the lowest basis index among
// ratio-test ties. In phase 1 a column with no pivotable entry cannot lower
// the infeasibility, so its reduced cost is rounding noise and it is skipped.
enum class StepResult { Optimal, Pivoted, Unbounded };

StepResult bland_step(Tableau& tab, std::vector<std::size_t>& basis,
                      const std::vector<bool>& allowed, const std::vector<bool>& active_row,
                      double tol, bool skip_unpivotable) {
  for (std::size_t enter = 0; enter < allowed.size(); ++enter) {
    if (!allowed[enter] || tab.objective(enter) >= -tol) continue;

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!active_row[i]) continue;
      const double a = tab.at(i, enter);
      if (a > tol) best = std::min(best, tab.at(i, tab.rhs()) / a);
    }
    if (!std::isfinite(best)) {
      if (skip_unpivotable) continue;
      return StepResult::Unbounded;
    }
    const double slack = tol * std::max(1.0, std::fabs(best));
    std::size_t leave = basis.size();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!active_row[i]) continue;
      const double a = tab.at(i, enter);
      if (a <= tol || tab.at(i, tab.rhs()) / a > best + slack) continue;
      if (leave == basis.size() || basis[i] < basis[leave]) leave = i;
    }
    tab.pivot(leave, enter);
    basis[leave] = enter;
    return StepResult::Pivoted;
  }
  return StepResult::Optimal;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol) {
  const std::size_t rows = lp.a.rows();
  const std::size_t cols = lp.a.cols();
  if (lp.b.size() != rows || lp.c.size() != cols) {
    throw DimensionMismatch("solve_lp: inconsistent problem dimensions");
  }

  // columns: [original 0..cols) [artificial cols..cols+rows) [rhs]
  Tableau tab(rows, cols + rows + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    const double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < cols; ++j) tab.at(i, j) = sign * lp.a(i, j);
    tab.at(i, cols + i) = 1.0;
    tab.at(i, tab.rhs()) = sign * lp.b[i];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;
  std::vector<bool> active_row(rows, true);

  // phase 1: minimize the sum of artificials
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += tab.at(i, j);
    tab.objective(j) = -s;
  }
  {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += tab.at(i, tab.rhs());
    tab.objective(tab.rhs()) = -s;
  }

  LpSolution sol;
  std::vector<bool> allowed(cols + rows, true);
  for (;;) {
    const auto r = bland_step(tab, basis, allowed, active_row, tol, true);
    if (r == StepResult::Optimal) break;
    ++sol.iterations;
  }
  double bscale = 1.0;
  for (double v : lp.b) bscale = std::max(bscale, std::fabs(v));
  if (-tab.objective(tab.rhs()) > 1e-9 * bscale * static_cast<double>(std::max<std::size_t>(rows, 1))) {
    sol.status = LpSolution::Status::Infeasible;
    return sol;
  }

  // drive artificials out of the basis; rows where that is impossible are redundant
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) continue;
    std::size_t pick = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (std::fabs(tab.at(i, j)) > 1e-9) {
        pick = j;
        break;
      }
    }
    if (pick == cols) {
      active_row[i] = false;
    } else {
      tab.pivot(i, pick);
      basis[i] = pick;
    }
  }

  // phase 2
  for (std::size_t j = cols; j < cols + rows; ++j) allowed[j] = false;
  for (std::size_t j = 0; j <= tab.rhs(); ++j) {
    double r = j < cols ? lp.c[j] : 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (active_row[i] && basis[i] < cols) r -= lp.c[basis[i]] * tab.at(i, j);
    }
    tab.objective(j) = r;
  }
  for (;;) {
    const auto r = bland_step(tab, basis, allowed, active_row, tol, false);
    if (r == StepResult::Optimal) break;
    if (r == StepResult::Unbounded) {
      sol.status = LpSolution::Status::Unbounded;
      return sol;
    }
    ++sol.iterations;
  }

  // recompute the vertex and the duals from the original data
  std::vector<std::size_t> live_rows;
  std::vector<std::size_t> live_basis;
  for (std::size_t i = 0; i < rows; ++i) {
    if (active_row[i]) {
      live_rows.push_back(i);
      live_basis.push_back(basis[i]);
    }
  }
  const std::size_t r = live_rows.size();
  Matrix bmat(r, r);
  std::vector<double> rhs(r);
  std::vector<double> cb(r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) bmat(a, b) = lp.a(live_rows[a], live_basis[b]);
    rhs[a] = lp.b[live_rows[a]];
    cb[a] = lp.c[live_basis[a]];
  }
  sol.x.assign(cols, 0.0);
  sol.duals.assign(rows, 0.0);
  if (r > 0) {
    const LuFactorization lu(std::move(bmat));
    const auto xb = lu.solve(rhs);
    for (std::size_t a = 0; a < r; ++a) sol.x[live_basis[a]] = xb[a];
    const auto y = lu.solve_transpose(cb);
    for (std::size_t a = 0; a < r; ++a) sol.duals[live_rows[a]] = y[a];
  }
  sol.basis = std::move(basis);

  for (std::size_t j = 0; j < cols; ++j) {
    double ya = 0.0;
    for (std::size_t i = 0; i < rows; ++i) ya += sol.duals[i] * lp.a(i, j);
    sol.dual_infeasibility = std::max(sol.dual_infeasibility, ya - lp.c[j]);
  }
  for (std::size_t i = 0; i < rows; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < cols; ++j) ax += lp.a(i, j) * sol.x[j];
    sol.primal_residual = std::max(sol.primal_residual, std::fabs(ax - lp.b[i]));
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < cols; ++j) sol.objective += lp.c[j] * sol.x[j];
  sol.status = LpSolution::Status::Optimal;
  return sol;
}

}  // namespace birkhoff
