#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace birkhoff {

// Exponent vector alpha = (alpha_1, ..., alpha_n) indexing the monomial x^alpha.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> exponents) : exps_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<unsigned> exponents) : exps_(exponents) {}

  std::size_t dim() const noexcept { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<unsigned>& exponents() const noexcept { return exps_; }

  // |alpha|
  unsigned degree() const noexcept;

  // u^alpha = prod u_i^alpha_i
  double power(std::span<const double> u) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> exps_;
};

// Repo-wide column ordering: ascending total degree, then descending
// lexicographic within a degree (first coordinate most significant).
// For n = 2, d = 2 this gives 1, x, y, x^2, xy, y^2.
struct GradedOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// N_{n,k} = C(k+n-1, n-1), the dimension of homogeneous degree-k polynomials.
std::size_t homogeneous_dim(std::size_t n, std::size_t k);

// C(d+n, n), the dimension of all polynomials of degree <= d.
std::size_t poly_space_dim(std::size_t n, std::size_t d);

// All alpha with |alpha| = k, in strictly descending lex order.
std::vector<MultiIndex> enumerate_multi_indices(std::size_t n, std::size_t k);

// All alpha with |alpha| <= d in GradedOrder.
std::vector<MultiIndex> graded_basis(std::size_t n, std::size_t d);

// Position of the first degree-k monomial inside graded_basis(n, d).
std::size_t graded_offset(std::size_t n, std::size_t k);

}  // namespace birkhoff
