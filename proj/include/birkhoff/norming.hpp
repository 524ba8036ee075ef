#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace birkhoff {

// T_d^{(k)}(1): k-th derivative of the degree-d Chebyshev polynomial of the
// first kind at x = 1, obtained by differentiating the exact integer
// coefficient array of T_d. Zero for k > d; throws on negative arguments.
double chebyshev_derivative_at_one(int d, int k);

// T_d(x) for real x: three-term recurrence on [-1, 1], cosh(d acosh|x|) outside.
double chebyshev_t(int d, double x);

// Ladder behind the norming bound for degree d:
//   kappa_k = theta_k / k!
//   tau_d = kappa_d,  tau_k = kappa_k + (1 + m_k kappa_k) tau_{k+1}
//   bound = tau_0 = sum_l kappa_l prod_{j<l} (1 + m_j kappa_j)
// All vectors are indexed by k = 0..d.
struct NormingBoundTrace {
  std::size_t d = 0;
  std::vector<double> m;
  std::vector<double> theta;
  std::vector<double> kappa;
  std::vector<double> tau;
  double bound = 0.0;
  double closed_form = 0.0;
};

// Fills the ladder from theta_0..theta_d (all > 0). The recurrence and the
// closed form are both evaluated and must agree to 1e-12 relative.
NormingBoundTrace norming_bound(std::span<const double> theta, std::size_t d);

// T_d((1 + r) / (1 - r)) with r = (1 - omega)^(1/n), for omega in (0, 1].
double remez_theta(double omega, std::size_t n, std::size_t d);

// 2 N (E + h); all inputs must be nonnegative.
double robustness_bound(double norming_constant, double approximation_error, double noise);

}  // namespace birkhoff
