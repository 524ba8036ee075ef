#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "birkhoff/grid.hpp"
#include "birkhoff/matrix.hpp"
#include "birkhoff/polynomial.hpp"
#include "birkhoff/scheme.hpp"
#include "birkhoff/vandermonde.hpp"

namespace birkhoff {

// Degree-descending interpolation on an exact scheme. Each order-k stage is
// a homogeneous Lagrange problem on the (unit-normalized) order-k directions:
//
//   P_k(u_j) = (psi_j - D^k_{u_j} [P_{k+1} + ... + P_d](v_j)) / k!
//
// followed by the constant term read off the order-0 node. All stage
// factorizations happen at construction so the solver can be reused for many
// right-hand sides.
class StagedSolver {
 public:
  // Throws SchemeShapeError for non-exact schemes and SingularError naming the
  // smallest irregular degree.
  explicit StagedSolver(Scheme scheme, double pivot_tolerance = kDefaultPivotTolerance);

  const Scheme& scheme() const noexcept { return scheme_; }

  Polynomial solve(const SampleSet& samples) const;

 private:
  struct Stage {
    std::vector<std::size_t> nodes;
    std::vector<MultiIndex> alphas;
    std::vector<double> scale;  // 1 / (k! |u_j|^k)
    std::optional<LuFactorization> lu;
  };

  Scheme scheme_;
  std::vector<Stage> stages_;  // indexed by order
};

Polynomial solve_staged(const Scheme& scheme, const SampleSet& samples,
                        double pivot_tolerance = kDefaultPivotTolerance);

struct FullSolveResult {
  std::optional<Polynomial> polynomial;  // set when square and nonsingular
  bool singular = false;                 // rank < dim P_n^d
  std::size_t rank = 0;
  double conditioning = 0.0;  // pivot ratio of the equilibrated matrix
  std::optional<Polynomial> null_polynomial;  // unit-norm kernel element when singular
};

// Brute-force oracle: assembles the dense functional matrix over all
// monomials |alpha| <= d (rows and columns equilibrated) and factors it.
// With samples the scheme must have exactly dim P_n^d nodes; without samples
// any node count is accepted and only rank information is produced.
FullSolveResult solve_full(const Scheme& scheme, const std::optional<SampleSet>& samples,
                           double pivot_tolerance = kDefaultPivotTolerance);

// l_1..l_m with w_i(l_j) = delta_ij.
std::vector<Polynomial> cardinal_basis(const Scheme& scheme,
                                       double pivot_tolerance = kDefaultPivotTolerance);

struct NormingEstimate {
  double value = 0.0;
  std::size_t grid_points = 0;
  std::size_t grid_size = 0;
  std::uint64_t seed = 0;
  std::vector<double> argmax;
};

struct LebesgueSample {
  Grid grid;
  std::vector<double> values;
};

// Lebesgue function x -> sum_j |l_j(x)| of an exact regular scheme on a grid.
LebesgueSample lebesgue_on_grid(const Scheme& scheme, const Domain& domain, std::size_t grid_size,
                                std::uint64_t seed,
                                double pivot_tolerance = kDefaultPivotTolerance);

// Grid maximum of the Lebesgue function: the norming constant of the
// scheme's functionals restricted to the grid (a lower bound of the true one).
NormingEstimate estimate_norming_constant(const Scheme& scheme, const Domain& domain,
                                          std::size_t grid_size, std::uint64_t seed,
                                          double pivot_tolerance = kDefaultPivotTolerance);

// Norming constant of evaluation at the unit-normalized directions for
// homogeneous polynomials of degree ds.k, estimated on the grid.
double estimate_direction_theta(const DirectionSet& ds, const Domain& domain,
                                std::size_t grid_size, std::uint64_t seed,
                                double pivot_tolerance = kDefaultPivotTolerance);

// theta_0..theta_d for every order of an exact scheme.
std::vector<double> estimate_scheme_thetas(const Scheme& scheme, const Domain& domain,
                                           std::size_t grid_size, std::uint64_t seed,
                                           double pivot_tolerance = kDefaultPivotTolerance);

// True when some direction has Euclidean length above 1 (outside the unit ball).
bool directions_outside_unit_ball(const DirectionSet& ds);

}  // namespace birkhoff
