#pragma once

// Random instances and independent reference computations shared by the
// unit and acceptance tests. Nothing here calls the library's evaluation,
// derivative or factorization code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "birkhoff/multi_index.hpp"
#include "birkhoff/polynomial.hpp"
#include "birkhoff/scheme.hpp"

namespace testing {

using Rng = std::mt19937_64;
using Exponents = std::vector<unsigned>;
using Terms = std::map<Exponents, double>;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> gaussian_vector(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

inline std::vector<double> point_in_ball(Rng& rng, std::size_t n, double radius = 1.0) {
  for (;;) {
    std::vector<double> v(n);
    double s = 0.0;
    for (auto& x : v) {
      x = uniform(rng, -radius, radius);
      s += x * x;
    }
    if (s <= radius * radius) return v;
  }
}

inline std::vector<double> unit_vector(Rng& rng, std::size_t n) {
  auto v = gaussian_vector(rng, n);
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (auto& x : v) x /= s;
  return v;
}

// All exponent vectors of total degree k in n variables (any order).
inline void exponents_of_degree(std::size_t n, unsigned k, Exponents& cur, std::vector<Exponents>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned e = 0; e <= k; ++e) {
    cur.push_back(e);
    exponents_of_degree(n, k - e, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Exponents> exponents_of_degree(std::size_t n, unsigned k) {
  std::vector<Exponents> out;
  Exponents cur;
  exponents_of_degree(n, k, cur, out);
  return out;
}

inline std::size_t binomial(std::size_t a, std::size_t b) {
  if (b > a) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

inline Terms random_terms(Rng& rng, std::size_t n, unsigned lo, unsigned hi) {
  Terms t;
  for (unsigned k = lo; k <= hi; ++k) {
    for (auto& e : exponents_of_degree(n, k)) t[e] = uniform(rng);
  }
  return t;
}

inline birkhoff::Polynomial to_polynomial(const Terms& t, std::size_t n, std::size_t d) {
  birkhoff::Polynomial p(n, d);
  for (const auto& [e, c] : t) p.set(birkhoff::MultiIndex(e), c);
  return p;
}

inline Terms to_terms(const birkhoff::Polynomial& p) {
  Terms t;
  for (const auto& [alpha, c] : p.coeffs()) t[alpha.exponents()] = c;
  return t;
}

inline birkhoff::Polynomial random_polynomial(Rng& rng, std::size_t n, std::size_t d) {
  return to_polynomial(random_terms(rng, n, 0, static_cast<unsigned>(d)), n, d);
}

inline birkhoff::Polynomial random_homogeneous(Rng& rng, std::size_t n, std::size_t k) {
  return to_polynomial(random_terms(rng, n, static_cast<unsigned>(k), static_cast<unsigned>(k)), n, k);
}

// Straight monomial-by-monomial evaluation in long double.
inline long double oracle_eval(const Terms& t, const std::vector<double>& x) {
  long double s = 0.0L;
  for (const auto& [e, c] : t) {
    long double m = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned p = 0; p < e[i]; ++p) m *= x[i];
    }
    s += m;
  }
  return s;
}

// u . grad applied term by term.
inline Terms oracle_derivative(const Terms& t, const std::vector<double>& u) {
  Terms out;
  for (const auto& [e, c] : t) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0 || u[i] == 0.0) continue;
      Exponents f = e;
      f[i] -= 1;
      out[f] += c * static_cast<double>(e[i]) * u[i];
    }
  }
  return out;
}

inline long double oracle_functional(const Terms& t, const birkhoff::Node& node) {
  Terms cur = t;
  for (std::size_t j = 0; j < node.order; ++j) cur = oracle_derivative(cur, node.direction);
  return oracle_eval(cur, node.point);
}

// Exact scheme with random points in the unit ball and Gaussian directions.
inline birkhoff::Scheme random_exact_scheme(Rng& rng, std::size_t n, std::size_t d) {
  birkhoff::Scheme s;
  s.n = n;
  s.d = d;
  for (std::size_t k = 0; k <= d; ++k) {
    const std::size_t count = binomial(k + n - 1, n - 1);
    for (std::size_t j = 0; j < count; ++j) {
      birkhoff::Node node;
      node.order = k;
      node.point = point_in_ball(rng, n);
      if (k >= 1) node.direction = gaussian_vector(rng, n);
      s.nodes.push_back(std::move(node));
    }
  }
  return s;
}

// Dense functional matrix over all exponents of degree <= d, any column order.
struct OracleSystem {
  std::vector<Exponents> columns;
  std::vector<std::vector<long double>> rows;
};

inline OracleSystem oracle_system(const birkhoff::Scheme& s) {
  OracleSystem sys;
  for (unsigned k = 0; k <= s.d; ++k) {
    for (auto& e : exponents_of_degree(s.n, k)) sys.columns.push_back(e);
  }
  for (const auto& node : s.nodes) {
    std::vector<long double> row;
    for (const auto& e : sys.columns) row.push_back(oracle_functional(Terms{{e, 1.0}}, node));
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

// Gaussian elimination with partial pivoting in long double; nullopt when a
// pivot falls below rel_tol times the largest entry of its column block.
inline std::optional<std::vector<long double>> oracle_solve(std::vector<std::vector<long double>> a,
                                                            std::vector<long double> b,
                                                            long double rel_tol = 1e-13L) {
  const std::size_t m = a.size();
  long double scale = 0.0L;
  for (const auto& r : a) for (auto x : r) scale = std::max(scale, std::fabs(x));
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < m; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    }
    if (std::fabs(a[p][c]) <= rel_tol * scale) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < m; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < m; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  std::vector<long double> x(m);
  for (std::size_t i = m; i-- > 0;) {
    long double s = b[i];
    for (std::size_t j = i + 1; j < m; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

// Interpolant from the oracle system, or nullopt if singular.
inline std::optional<Terms> oracle_interpolate(const birkhoff::Scheme& s,
                                               const std::vector<double>& psi) {
  const auto sys = oracle_system(s);
  std::vector<long double> b(psi.begin(), psi.end());
  const auto x = oracle_solve(sys.rows, b);
  if (!x) return std::nullopt;
  Terms t;
  for (std::size_t j = 0; j < sys.columns.size(); ++j) t[sys.columns[j]] = static_cast<double>((*x)[j]);
  return t;
}

// min_a max_i |(W a)_i - psi_i| by enumerating every vertex of the LP: each
// choice of m + 1 rows and signs gives a square system whose feasible
// solutions are candidate optima. Tiny sizes only.
inline double oracle_minimax(const std::vector<std::vector<double>>& w, const std::vector<double>& psi) {
  const std::size_t rows = w.size();
  const std::size_t m = w.empty() ? 0 : w[0].size();
  double best = std::numeric_limits<double>::infinity();
  const auto residual = [&](const std::vector<long double>& a) {
    long double r = 0.0L;
    for (std::size_t i = 0; i < rows; ++i) {
      long double s = -psi[i];
      for (std::size_t j = 0; j < m; ++j) s += w[i][j] * a[j];
      r = std::max(r, std::fabs(s));
    }
    return static_cast<double>(r);
  };
  const std::size_t need = m + 1;  // callers pass rows > m and W of full column rank
  std::vector<bool> mask(rows, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(need), true);
  do {
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < rows; ++i) if (mask[i]) sel.push_back(i);
    for (unsigned signs = 0; signs < (1u << need); ++signs) {
      // unknowns: a (m), t; equations (W a)_i - s_i t = psi_i
      const std::size_t dim = m + 1;
      std::vector<std::vector<long double>> a(need, std::vector<long double>(dim));
      std::vector<long double> b(need);
      for (std::size_t r = 0; r < need; ++r) {
        for (std::size_t j = 0; j < m; ++j) a[r][j] = w[sel[r]][j];
        a[r][m] = (signs >> r) & 1u ? 1.0L : -1.0L;
        b[r] = psi[sel[r]];
      }
      const auto x = oracle_solve(a, b, 1e-12L);
      if (!x) continue;
      std::vector<long double> coeffs(x->begin(), x->begin() + static_cast<long>(m));
      best = std::min(best, residual(coeffs));
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

}  // namespace testing
