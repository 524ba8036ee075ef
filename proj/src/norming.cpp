#include "birkhoff/norming.hpp"

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "birkhoff/error.hpp"

namespace birkhoff {

using boost::multiprecision::cpp_int;

namespace {

// Coefficients of T_d in the monomial basis, lowest degree first.
std::vector<cpp_int> chebyshev_coefficients(int d) {
  std::vector<cpp_int> prev{1};
  if (d == 0) return prev;
  std::vector<cpp_int> cur{0, 1};
  for (int j = 1; j < d; ++j) {
    std::vector<cpp_int> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

double chebyshev_derivative_at_one(int d, int k) {
  if (d < 0 || k < 0) {
    throw InvalidArgument("chebyshev_derivative_at_one: negative argument (d = " +
                          std::to_string(d) + ", k = " + std::to_string(k) + ")");
  }
  if (k > d) return 0.0;
  auto coeffs = chebyshev_coefficients(d);
  for (int step = 0; step < k; ++step) {
    for (std::size_t i = 1; i < coeffs.size(); ++i) coeffs[i - 1] = coeffs[i] * i;
    coeffs.pop_back();
  }
  cpp_int sum = 0;
  for (const auto& c : coeffs) sum += c;
  return sum.convert_to<double>();
}

double chebyshev_t(int d, double x) {
  if (d < 0) throw InvalidArgument("chebyshev_t: negative degree");
  if (d == 0) return 1.0;
  if (d == 1) return x;
  if (std::fabs(x) <= 1.0) {
    double prev = 1.0;
    double cur = x;
    for (int j = 1; j < d; ++j) {
      const double next = 2.0 * x * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  const double value = std::cosh(static_cast<double>(d) * std::acosh(std::fabs(x)));
  return (x < 0 && d % 2 == 1) ? -value : value;
}

NormingBoundTrace norming_bound(std::span<const double> theta, std::size_t d) {
  if (theta.size() != d + 1) {
    throw InvalidArgument("norming_bound: expected " + std::to_string(d + 1) + " theta values, got " +
                          std::to_string(theta.size()));
  }
  NormingBoundTrace t;
  t.d = d;
  t.theta.assign(theta.begin(), theta.end());
  double factorial = 1.0;
  for (std::size_t k = 0; k <= d; ++k) {
    if (!(theta[k] > 0.0)) {
      throw InvalidArgument("norming_bound: theta_" + std::to_string(k) + " must be positive");
    }
    if (k > 0) factorial *= static_cast<double>(k);
    t.m.push_back(chebyshev_derivative_at_one(static_cast<int>(d), static_cast<int>(k)));
    t.kappa.push_back(theta[k] / factorial);
  }

  t.tau.assign(d + 1, 0.0);
  t.tau[d] = t.kappa[d];
  for (std::size_t k = d; k-- > 0;) {
    t.tau[k] = t.kappa[k] + (1.0 + t.m[k] * t.kappa[k]) * t.tau[k + 1];
  }
  t.bound = t.tau[0];

  double product = 1.0;
  for (std::size_t l = 0; l <= d; ++l) {
    t.closed_form += t.kappa[l] * product;
    product *= 1.0 + t.m[l] * t.kappa[l];
  }

  if (std::isfinite(t.bound) && std::isfinite(t.closed_form) &&
      std::fabs(t.bound - t.closed_form) > 1e-12 * std::fabs(t.closed_form)) {
    throw InternalError("norming_bound: recurrence " + std::to_string(t.bound) +
                        " and closed form " + std::to_string(t.closed_form) + " disagree");
  }
  return t;
}

double remez_theta(double omega, std::size_t n, std::size_t d) {
  if (!(omega > 0.0)) throw InvalidArgument("remez_theta: omega must be > 0");
  if (omega > 1.0) throw InvalidArgument("remez_theta: omega must be <= 1");
  if (n == 0) throw InvalidArgument("remez_theta: dimension must be >= 1");
  if (omega == 1.0) return 1.0;
  const double r = std::pow(1.0 - omega, 1.0 / static_cast<double>(n));
  const double x = (1.0 + r) / (1.0 - r);
  return chebyshev_t(static_cast<int>(d), x);
}

double robustness_bound(double norming_constant, double approximation_error, double noise) {
  if (norming_constant < 0.0 || approximation_error < 0.0 || noise < 0.0) {
    throw InvalidArgument("robustness_bound: inputs must be nonnegative");
  }
  return 2.0 * norming_constant * (approximation_error + noise);
}

}  // namespace birkhoff
