#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "birkhoff/matrix.hpp"
#include "birkhoff/polynomial.hpp"

namespace birkhoff {

// Compact region on which norms ||P||_G are measured.
struct Domain {
  enum class Kind { Ball, Box };

  Kind kind = Kind::Ball;
  double radius = 1.0;
  std::vector<double> center;  // empty means the origin
  std::vector<double> lower;   // box only
  std::vector<double> upper;   // box only

  static Domain unit_ball();
  static Domain ball(double radius, std::vector<double> center = {});
  static Domain box(std::vector<double> lower, std::vector<double> upper);

  // Throws InvalidArgument on nonpositive radius, empty box, or wrong lengths.
  void validate(std::size_t n) const;
};

// One sampling functional: P -> D^order_direction P(point).
struct Node {
  std::size_t order = 0;
  std::vector<double> point;
  std::vector<double> direction;  // unused (and may be empty) when order == 0
};

// Sampling design. An exact scheme has exactly N_{n,k} nodes of order k for
// every k = 0..d; any other cardinalities make an extended scheme.
struct Scheme {
  std::size_t n = 1;
  std::size_t d = 0;
  std::vector<Node> nodes;
  std::optional<Domain> domain;

  // Node dimensions, orders <= d, nonzero directions for order >= 1.
  void validate() const;

  std::vector<std::size_t> count_by_order() const;
  bool is_exact() const;

  // Throws SchemeShapeError naming every order whose count is not N_{n,k}.
  void require_exact() const;

  std::vector<std::size_t> indices_of_order(std::size_t k) const;

  const Domain& domain_or_default(const Domain& fallback) const {
    return domain ? *domain : fallback;
  }
};

// Values psi aligned index-for-index with Scheme::nodes.
struct SampleSet {
  std::vector<double> values;
};

double apply_functional(const Node& node, const Polynomial& p);

// psi_i = w_i(P) for every node.
SampleSet sample_polynomial(const Scheme& scheme, const Polynomial& p);

// M(i, j) = w_i(x^alpha_j), columns in graded_basis(n, d) order.
Matrix functional_matrix(const Scheme& scheme);

// max_i |w_i(P) - psi_i|
double max_residual(const Scheme& scheme, const Polynomial& p, const SampleSet& samples);

}  // namespace birkhoff
