#include "birkhoff/polynomial.hpp"

#include <algorithm>
#include <string>

#include "birkhoff/error.hpp"

namespace birkhoff {

namespace {

double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionMismatch(std::string(what) + ": got dimension " + std::to_string(got) +
                            ", expected " + std::to_string(want));
  }
}

bool is_zero_vector(std::span<const double> u) {
  return std::all_of(u.begin(), u.end(), [](double x) { return x == 0.0; });
}

}  // namespace

Polynomial::Polynomial(std::size_t n, std::size_t d) : n_(n), d_(d) {
  if (n == 0) throw InvalidArgument("polynomial dimension n must be >= 1");
}

Polynomial::Polynomial(std::size_t n, std::size_t d, CoeffMap coeffs) : Polynomial(n, d) {
  for (auto& [alpha, c] : coeffs) {
    check_index(alpha);
    if (c != 0.0) coeffs_.emplace(alpha, c);
  }
}

Polynomial Polynomial::from_dense(std::size_t n, std::size_t d, std::span<const double> dense) {
  const auto basis = graded_basis(n, d);
  require_dim(dense.size(), basis.size(), "Polynomial::from_dense");
  Polynomial p(n, d);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (dense[j] != 0.0) p.coeffs_.emplace(basis[j], dense[j]);
  }
  return p;
}

void Polynomial::check_index(const MultiIndex& alpha) const {
  if (alpha.dim() != n_) {
    throw DimensionMismatch("multi-index of length " + std::to_string(alpha.dim()) +
                            " in a polynomial with n = " + std::to_string(n_));
  }
  if (alpha.degree() > d_) {
    throw InvalidArgument("multi-index of degree " + std::to_string(alpha.degree()) +
                          " exceeds degree bound " + std::to_string(d_));
  }
}

double Polynomial::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void Polynomial::set(const MultiIndex& alpha, double value) {
  check_index(alpha);
  if (value == 0.0) {
    coeffs_.erase(alpha);
  } else {
    coeffs_[alpha] = value;
  }
}

std::vector<double> Polynomial::to_dense() const {
  const auto basis = graded_basis(n_, d_);
  std::vector<double> dense(basis.size(), 0.0);
  // coeffs_ iterates in the same order as basis, so one merge pass suffices
  std::size_t j = 0;
  for (const auto& [alpha, c] : coeffs_) {
    while (!(basis[j] == alpha)) ++j;
    dense[j] = c;
  }
  return dense;
}

double Polynomial::operator()(std::span<const double> x) const {
  require_dim(x.size(), n_, "polynomial evaluation");
  double sum = 0.0;
  for (const auto& [alpha, c] : coeffs_) sum += c * alpha.power(x);
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_dim(other.n_, n_, "polynomial addition");
  d_ = std::max(d_, other.d_);
  for (const auto& [alpha, c] : other.coeffs_) {
    const double v = coeff(alpha) + c;
    if (v == 0.0) {
      coeffs_.erase(alpha);
    } else {
      coeffs_[alpha] = v;
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  Polynomial neg = other;
  neg *= -1.0;
  return *this += neg;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& entry : coeffs_) entry.second *= s;
  return *this;
}

double eval_poly(const Polynomial& p, std::span<const double> x) { return p(x); }

Polynomial homogeneous_component(const Polynomial& p, std::size_t k) {
  if (k > p.d()) {
    throw InvalidArgument("homogeneous_component: k = " + std::to_string(k) +
                          " exceeds degree bound " + std::to_string(p.d()));
  }
  Polynomial::CoeffMap part;
  for (const auto& [alpha, c] : p.coeffs()) {
    if (alpha.degree() == k) part.emplace(alpha, c);
  }
  return Polynomial(p.n(), p.d(), std::move(part));
}

Polynomial tail(const Polynomial& p, std::size_t k) {
  Polynomial::CoeffMap part;
  for (const auto& [alpha, c] : p.coeffs()) {
    if (alpha.degree() >= k) part.emplace(alpha, c);
  }
  return Polynomial(p.n(), p.d(), std::move(part));
}

std::vector<double> restrict_to_line(const Polynomial& p, std::span<const double> v,
                                     std::span<const double> u) {
  require_dim(v.size(), p.n(), "restrict_to_line point");
  require_dim(u.size(), p.n(), "restrict_to_line direction");

  std::vector<double> out(p.d() + 1, 0.0);
  std::vector<double> term;
  std::vector<double> factor;
  std::vector<double> next;
  for (const auto& [alpha, c] : p.coeffs()) {
    term.assign(1, c);
    for (std::size_t i = 0; i < p.n(); ++i) {
      const unsigned a = alpha[i];
      if (a == 0) continue;
      // (v_i + t u_i)^a = sum_j C(a, j) v_i^(a-j) u_i^j t^j
      factor.assign(a + 1, 0.0);
      double binom = 1.0;
      for (unsigned j = 0; j <= a; ++j) {
        double vpow = 1.0;
        for (unsigned e = 0; e < a - j; ++e) vpow *= v[i];
        double upow = 1.0;
        for (unsigned e = 0; e < j; ++e) upow *= u[i];
        factor[j] = binom * vpow * upow;
        binom = binom * static_cast<double>(a - j) / static_cast<double>(j + 1);
      }
      next.assign(term.size() + a, 0.0);
      for (std::size_t r = 0; r < term.size(); ++r) {
        if (term[r] == 0.0) continue;
        for (unsigned j = 0; j <= a; ++j) next[r + j] += term[r] * factor[j];
      }
      term.swap(next);
    }
    for (std::size_t r = 0; r < term.size(); ++r) out[r] += term[r];
  }
  return out;
}

double directional_derivative(const Polynomial& p, std::span<const double> v,
                              std::span<const double> u, std::size_t k) {
  if (k == 0) return p(v);
  require_dim(u.size(), p.n(), "directional_derivative direction");
  if (is_zero_vector(u)) {
    throw DegenerateNode("directional derivative of order " + std::to_string(k) +
                         " along a zero direction");
  }
  const auto line = restrict_to_line(p, v, u);
  if (k >= line.size()) return 0.0;
  return factorial(k) * line[k];
}

Polynomial directional_derivative_polynomial(const Polynomial& p, std::span<const double> u,
                                             std::size_t k) {
  require_dim(u.size(), p.n(), "directional_derivative_polynomial direction");
  if (k == 0) return p;
  if (is_zero_vector(u)) {
    throw DegenerateNode("directional derivative of order " + std::to_string(k) +
                         " along a zero direction");
  }
  Polynomial current = p;
  for (std::size_t step = 0; step < k; ++step) {
    Polynomial next(p.n(), p.d());
    for (const auto& [alpha, c] : current.coeffs()) {
      for (std::size_t i = 0; i < p.n(); ++i) {
        if (alpha[i] == 0 || u[i] == 0.0) continue;
        auto exps = alpha.exponents();
        const double scale = static_cast<double>(exps[i]) * u[i];
        --exps[i];
        MultiIndex lowered(std::move(exps));
        next.set(lowered, next.coeff(lowered) + c * scale);
      }
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace birkhoff
