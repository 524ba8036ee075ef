#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "birkhoff/polynomial.hpp"
#include "birkhoff/scheme.hpp"
#include "birkhoff/vandermonde.hpp"

namespace birkhoff {

// Noisy functional data psi_i ~ w_i(f) on an arbitrary (possibly
// overdetermined) scheme, to be fitted by a polynomial of degree <= degree.
struct FitProblem {
  Scheme scheme;
  std::vector<double> values;
  std::size_t degree = 0;
};

struct FitResult {
  Polynomial polynomial{1, 0};
  double achieved_residual = 0.0;  // max_i |w_i(P) - psi_i|
  std::size_t iterations = 0;
  double dual_infeasibility = 0.0;
};

// Chebyshev-norm fit over the functionals: minimize t subject to
// -t <= w_i(P) - psi_i <= t. Throws InternalError if the LP optimum cannot
// be certified by dual feasibility at 1e-8.
FitResult minimax_fit(const FitProblem& problem);

// dim P_n^d nodes of `scheme` whose functionals determine P uniquely,
// picked by pivoted Gram-Schmidt on the normalized functional rows (node
// order is kept). Throws SingularError when the functionals do not span.
Scheme unisolvent_subscheme(const Scheme& scheme, double pivot_tolerance = kDefaultPivotTolerance);

// Grid maximum of the Lebesgue function of a square unisolvent scheme of any
// order pattern. Equals estimate_norming_constant on exact regular schemes.
double lebesgue_constant(const Scheme& scheme, const Domain& domain, std::size_t grid_size,
                         std::uint64_t seed, double pivot_tolerance = kDefaultPivotTolerance);

struct RobustOptions {
  double h = 0.0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t grid_size = 4096;
  std::optional<Domain> domain;  // falls back to the scheme's, then the unit ball
  double pivot_tolerance = kDefaultPivotTolerance;
};

struct RobustTrial {
  std::uint64_t noise_seed = 0;
  double residual = 0.0;         // ||f~ - P^||_U
  double truth_residual = 0.0;   // ||f~ - P-bar||_U
  double grid_error = 0.0;       // ||P^ - P-bar||_G
  double bound = 0.0;            // 2 N (E + h)
  double ratio = 0.0;            // grid_error / bound
};

struct RobustReport {
  double norming = 0.0;            // N on the grid
  std::string norming_source;      // "scheme" or "subset"
  double h = 0.0;
  double ideal_error = 0.0;        // E
  bool ideal_error_is_estimate = false;
  std::size_t grid_size = 0;
  std::uint64_t seed = 0;
  std::vector<RobustTrial> trials;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  bool argmin_holds = true;        // residual <= truth_residual in every trial
};

// Monte-Carlo check of ||P^ - P-bar||_G <= 2N(E + h) with polynomial truth,
// so P-bar = truth and E = 0. Noise is uniform in [-h, h], independently per
// functional, from a stream derived from (seed, trial).
RobustReport robust_experiment(const Polynomial& truth, const Scheme& scheme,
                               const RobustOptions& options);

// Black-box truth. `functional` returns w(f) for a node; when absent every
// node must have order 0 and `value` is used. P-bar is a minimax fit of f
// on a coarse subgrid, so E is only an estimate and flagged as such.
struct BlackBoxFunction {
  std::function<double(std::span<const double>)> value;
  std::function<double(const Node&)> functional;
};

RobustReport robust_experiment(const BlackBoxFunction& truth, const Scheme& scheme,
                               const RobustOptions& options);

}  // namespace birkhoff
