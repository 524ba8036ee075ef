#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "birkhoff/matrix.hpp"
#include "birkhoff/scheme.hpp"

namespace birkhoff {

// Singularity threshold on min|pivot| / max|pivot| after normalizing the
// directions to unit length.
inline constexpr double kDefaultPivotTolerance = 1e-10;

// Directions u_1..u_m of the order-k functionals of a scheme.
struct DirectionSet {
  std::size_t n = 1;
  std::size_t k = 0;
  std::vector<std::vector<double>> directions;
};

DirectionSet directions_of_order(const Scheme& scheme, std::size_t k);

// Copies of the directions scaled to unit Euclidean length. Throws
// DegenerateNode on a zero direction when k >= 1; for k = 0 directions are
// irrelevant and returned unchanged.
std::vector<std::vector<double>> normalized_directions(const DirectionSet& ds);

// A(i, j) = s_i^alpha_j with alpha_j from enumerate_multi_indices(n, k).
// Requires exactly N_{n,k} directions.
Matrix build_homogeneous_vandermonde(const DirectionSet& ds);

// Same matrix for the unit-normalized directions.
Matrix build_normalized_vandermonde(const DirectionSet& ds);

struct VandermondeDeterminant {
  SignedLog determinant;  // of the matrix built from the directions as given
  bool regular = false;
  double conditioning = 0.0;  // pivot ratio of the normalized factorization
};

VandermondeDeterminant vandermonde_determinant(const DirectionSet& ds,
                                               double pivot_tolerance = kDefaultPivotTolerance);

// prod_{i<j} det[u_i; u_j] for n = 2 and k + 1 directions.
SignedLog planar_product_determinant(const DirectionSet& ds);

struct PlanarCrossCheck {
  SignedLog product;
  bool magnitude_agrees = true;
  bool sign_agrees = true;
};

struct DegreeRegularity {
  std::size_t k = 0;
  bool regular = true;
  double conditioning = 1.0;
  SignedLog determinant{1, 0.0};
  std::optional<PlanarCrossCheck> planar;
  std::vector<std::string> warnings;
};

struct RegularityReport {
  std::size_t n = 1;
  std::size_t d = 0;
  double pivot_tolerance = kDefaultPivotTolerance;
  std::vector<DegreeRegularity> per_degree;

  bool regular() const;
  std::vector<int> failing_degrees() const;
};

// Per-degree verdict for an exact scheme; reads only the directions.
RegularityReport check_scheme_regularity(const Scheme& scheme,
                                         double pivot_tolerance = kDefaultPivotTolerance);

}  // namespace birkhoff
