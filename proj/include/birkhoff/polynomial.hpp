#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "birkhoff/multi_index.hpp"

namespace birkhoff {

// Real polynomial in n variables of degree at most d, stored as a sparse map
// alpha -> a_alpha in GradedOrder. The zero polynomial has no entries.
class Polynomial {
 public:
  using CoeffMap = std::map<MultiIndex, double, GradedOrder>;

  Polynomial(std::size_t n, std::size_t d);
  Polynomial(std::size_t n, std::size_t d, CoeffMap coeffs);

  // Builds from a dense vector laid out as graded_basis(n, d).
  static Polynomial from_dense(std::size_t n, std::size_t d, std::span<const double> dense);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  const CoeffMap& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  // Coefficient of x^alpha (zero when absent).
  double coeff(const MultiIndex& alpha) const;
  // Sets a_alpha; a value of exactly zero erases the entry.
  void set(const MultiIndex& alpha, double value);

  // Dense coefficient vector in graded_basis(n, d) order.
  std::vector<double> to_dense() const;

  double operator()(std::span<const double> x) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

 private:
  void check_index(const MultiIndex& alpha) const;

  std::size_t n_;
  std::size_t d_;
  CoeffMap coeffs_;
};

double eval_poly(const Polynomial& p, std::span<const double> x);

// P_k: the terms of P with |alpha| = k.
Polynomial homogeneous_component(const Polynomial& p, std::size_t k);

// P~_k = sum_{l >= k} P_l.
Polynomial tail(const Polynomial& p, std::size_t k);

// Coefficients c_0..c_d of t -> P(v + t u), by exact binomial expansion.
std::vector<double> restrict_to_line(const Polynomial& p, std::span<const double> v,
                                     std::span<const double> u);

// D^k_u P(v) = d^k/dt^k P(v + t u) at t = 0; D^0 is plain evaluation.
double directional_derivative(const Polynomial& p, std::span<const double> v,
                              std::span<const double> u, std::size_t k);

// The polynomial x -> D^k_u P(x), via k applications of sum_i u_i d/dx_i.
Polynomial directional_derivative_polynomial(const Polynomial& p, std::span<const double> u,
                                             std::size_t k);

}  // namespace birkhoff
