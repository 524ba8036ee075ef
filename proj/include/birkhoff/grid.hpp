#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "birkhoff/multi_index.hpp"
#include "birkhoff/scheme.hpp"

namespace birkhoff {

inline constexpr std::size_t kDefaultGridSize = 4096;

// Finite point set standing in for a domain when estimating sup norms.
// Coordinates are stored structure-of-arrays: coordinate i of every point is
// contiguous, which is the layout the SIMD kernels consume.
class Grid {
 public:
  Grid(std::size_t n, std::vector<double> coords);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return count_; }
  std::span<const double> coordinate(std::size_t i) const {
    return {coords_.data() + i * count_, count_};
  }
  std::vector<double> point(std::size_t p) const;

 private:
  std::size_t n_;
  std::size_t count_;
  std::vector<double> coords_;
};

// Deterministic sampling of a domain.
//
// Box: tensor lattice with m = max(2, floor(size^(1/n))) points per axis,
// endpoints included; going from m to 2m - 1 per axis refines the lattice.
//
// Ball, n = 1: the interval lattice with `size` points.
// Ball, n >= 2: half the points on the bounding sphere and half inside,
// both taken as prefixes of Halton-type low-discrepancy sequences (the
// interior by rejection from the cube). A larger size therefore always
// contains the smaller grid. A nonzero seed applies a Cranley-Patterson
// shift derived from the seed.
Grid make_grid(const Domain& domain, std::size_t n, std::size_t size, std::uint64_t seed);

// Evaluates polynomials given as dense coefficient vectors over a fixed
// monomial basis at every grid point.
class GridEvaluator {
 public:
  GridEvaluator(Grid grid, std::vector<MultiIndex> basis);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<MultiIndex>& basis() const noexcept { return basis_; }

  std::vector<double> values(std::span<const double> coeffs) const;

  // max over the grid of |P(x)|
  double max_abs(std::span<const double> coeffs) const;

  // x -> sum_j |P_j(x)| at every grid point.
  std::vector<double> abs_sum(const std::vector<std::vector<double>>& coeff_vectors) const;

 private:
  static constexpr std::size_t kBlock = 512;

  // Monomial table for points [begin, begin + count), row j = basis[j].
  void fill_table(std::size_t begin, std::size_t count, std::vector<double>& table) const;

  Grid grid_;
  std::vector<MultiIndex> basis_;
  unsigned max_exponent_ = 0;
};

}  // namespace birkhoff
