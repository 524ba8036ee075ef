#include "birkhoff/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "birkhoff/error.hpp"
#include "birkhoff/grid.hpp"
#include "birkhoff/kernels.hpp"
#include "birkhoff/multi_index.hpp"
#include "birkhoff/simplex.hpp"
#include "birkhoff/solver.hpp"

namespace birkhoff {

namespace {

constexpr double kCertificateTolerance = 1e-8;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Domain resolve_domain(const RobustOptions& options, const Scheme& scheme) {
  if (options.domain) return *options.domain;
  return scheme.domain_or_default(Domain::unit_ball());
}

void check_options(const RobustOptions& options) {
  if (!(options.h >= 0.0) || !std::isfinite(options.h)) {
    throw InvalidArgument("robust_experiment: noise amplitude h must be a finite value >= 0");
  }
  if (options.trials == 0) throw InvalidArgument("robust_experiment: trials must be positive");
  if (options.grid_size == 0) throw InvalidArgument("robust_experiment: grid size must be positive");
}

struct Truth {
  std::vector<double> functionals;  // w_i(f)
  std::vector<double> pbar;         // dense coefficients of P-bar
  double ideal_error = 0.0;
  bool estimate = false;
};

RobustReport run_trials(const Scheme& scheme, const Truth& truth, const RobustOptions& options) {
  const Domain domain = resolve_domain(options, scheme);
  domain.validate(scheme.n);

  RobustReport report;
  report.h = options.h;
  report.ideal_error = truth.ideal_error;
  report.ideal_error_is_estimate = truth.estimate;
  report.grid_size = options.grid_size;
  report.seed = options.seed;

  if (scheme.is_exact()) {
    report.norming = estimate_norming_constant(scheme, domain, options.grid_size, options.seed,
                                               options.pivot_tolerance)
                         .value;
    report.norming_source = "scheme";
  } else {
    // N(G, U) <= N(G, S) for any S contained in U, and for a unisolvent S
    // the grid norming constant is the grid maximum of its Lebesgue function.
    const Scheme sub = unisolvent_subscheme(scheme, options.pivot_tolerance);
    report.norming = lebesgue_constant(sub, domain, options.grid_size, options.seed,
                                       options.pivot_tolerance);
    report.norming_source = "subset";
  }

  const GridEvaluator evaluator(make_grid(domain, scheme.n, options.grid_size, options.seed),
                                graded_basis(scheme.n, scheme.d));
  const double bound = 2.0 * report.norming * (truth.ideal_error + options.h);
  const double pbar_scale = std::max(1.0, evaluator.max_abs(truth.pbar));
  const Polynomial pbar = Polynomial::from_dense(scheme.n, scheme.d, truth.pbar);

  FitProblem problem{scheme, std::vector<double>(scheme.nodes.size()), scheme.d};
  double ratio_sum = 0.0;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    RobustTrial rec;
    rec.noise_seed = splitmix64(options.seed ^ splitmix64(trial));
    std::mt19937_64 rng(rec.noise_seed);
    std::uniform_real_distribution<double> noise(-options.h, options.h);
    for (std::size_t i = 0; i < scheme.nodes.size(); ++i) {
      problem.values[i] = truth.functionals[i] + (options.h > 0.0 ? noise(rng) : 0.0);
    }

    const FitResult fit = minimax_fit(problem);
    rec.residual = fit.achieved_residual;
    rec.truth_residual = max_residual(scheme, pbar, SampleSet{problem.values});

    auto diff = fit.polynomial.to_dense();
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= truth.pbar[j];
    rec.grid_error = evaluator.max_abs(diff);
    rec.bound = bound;
    if (bound > 0.0) {
      rec.ratio = rec.grid_error / bound;
    } else {
      rec.ratio = rec.grid_error <= 1e-8 * pbar_scale ? 0.0 : std::numeric_limits<double>::infinity();
    }

    const double slack = 1e-9 * std::max(1.0, rec.truth_residual);
    if (rec.residual > rec.truth_residual + slack) report.argmin_holds = false;
    report.max_ratio = std::max(report.max_ratio, rec.ratio);
    ratio_sum += rec.ratio;
    report.trials.push_back(rec);
  }
  report.mean_ratio = ratio_sum / static_cast<double>(options.trials);
  return report;
}

}  // namespace

FitResult minimax_fit(const FitProblem& problem) {
  if (problem.scheme.nodes.empty()) throw InvalidArgument("minimax_fit: scheme has no nodes");
  if (problem.values.size() != problem.scheme.nodes.size()) {
    throw DimensionMismatch("minimax_fit: " + std::to_string(problem.values.size()) +
                            " values for " + std::to_string(problem.scheme.nodes.size()) +
                            " nodes");
  }
  for (double v : problem.values) {
    if (!std::isfinite(v)) throw InvalidArgument("minimax_fit: non-finite value");
  }
  Scheme scheme = problem.scheme;
  scheme.d = problem.degree;
  scheme.validate();

  const Matrix w = functional_matrix(scheme);
  const std::size_t rows = w.rows();
  const std::size_t m = w.cols();

  std::vector<double> colscale(m, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    double mx = 0.0;
    for (std::size_t i = 0; i < rows; ++i) mx = std::max(mx, std::fabs(w(i, j)));
    if (mx > 0.0) colscale[j] = 1.0 / mx;
  }

  // variables: a+ (m), a- (m), t, s+ (rows), s- (rows)
  const std::size_t t_col = 2 * m;
  const std::size_t cols = 2 * m + 1 + 2 * rows;
  LinearProgram lp{Matrix(2 * rows, cols), std::vector<double>(2 * rows),
                   std::vector<double>(cols, 0.0)};
  lp.c[t_col] = 1.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double a = w(i, j) * colscale[j];
      lp.a(i, j) = a;
      lp.a(i, m + j) = -a;
      lp.a(rows + i, j) = -a;
      lp.a(rows + i, m + j) = a;
    }
    lp.a(i, t_col) = -1.0;
    lp.a(rows + i, t_col) = -1.0;
    lp.a(i, t_col + 1 + i) = 1.0;
    lp.a(rows + i, t_col + 1 + rows + i) = 1.0;
    lp.b[i] = problem.values[i];
    lp.b[rows + i] = -problem.values[i];
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::Optimal) {
    throw InternalError("minimax_fit: linear program reported infeasible or unbounded");
  }
  if (sol.dual_infeasibility > kCertificateTolerance) {
    throw InternalError("minimax_fit: optimality certificate failed (dual infeasibility " +
                        std::to_string(sol.dual_infeasibility) + ")");
  }

  std::vector<double> dense(m);
  for (std::size_t j = 0; j < m; ++j) dense[j] = (sol.x[j] - sol.x[m + j]) * colscale[j];
  FitResult result;
  result.polynomial = Polynomial::from_dense(scheme.n, scheme.d, dense);
  result.achieved_residual = max_residual(scheme, result.polynomial, SampleSet{problem.values});
  result.iterations = sol.iterations;
  result.dual_infeasibility = sol.dual_infeasibility;
  return result;
}

Scheme unisolvent_subscheme(const Scheme& scheme, double pivot_tolerance) {
  scheme.validate();
  const Matrix w = functional_matrix(scheme);
  const std::size_t rows = w.rows();
  const std::size_t m = w.cols();

  std::vector<double> colscale(m, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    double mx = 0.0;
    for (std::size_t i = 0; i < rows; ++i) mx = std::max(mx, std::fabs(w(i, j)));
    if (mx > 0.0) colscale[j] = 1.0 / mx;
  }
  std::vector<std::vector<double>> r(rows, std::vector<double>(m));
  for (std::size_t i = 0; i < rows; ++i) {
    double norm = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      r[i][j] = w(i, j) * colscale[j];
      norm += r[i][j] * r[i][j];
    }
    norm = std::sqrt(norm);
    if (norm > 0.0) for (double& x : r[i]) x /= norm;
  }

  std::vector<bool> used(rows, false);
  std::vector<std::size_t> chosen;
  while (chosen.size() < m) {
    std::size_t best = rows;
    double best_norm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (used[i]) continue;
      double norm = 0.0;
      for (double x : r[i]) norm += x * x;
      if (norm > best_norm) {
        best_norm = norm;
        best = i;
      }
    }
    if (best == rows || std::sqrt(best_norm) <= pivot_tolerance) {
      throw SingularError("the scheme's functionals do not determine a polynomial of degree " +
                              std::to_string(scheme.d),
                          -1);
    }
    used[best] = true;
    chosen.push_back(best);
    std::vector<double> q = r[best];
    const double qn = std::sqrt(best_norm);
    for (double& x : q) x /= qn;
    for (std::size_t i = 0; i < rows; ++i) {
      if (used[i]) continue;
      double dot = 0.0;
      for (std::size_t j = 0; j < m; ++j) dot += r[i][j] * q[j];
      for (std::size_t j = 0; j < m; ++j) r[i][j] -= dot * q[j];
    }
  }
  std::sort(chosen.begin(), chosen.end());

  Scheme sub;
  sub.n = scheme.n;
  sub.d = scheme.d;
  sub.domain = scheme.domain;
  for (std::size_t i : chosen) sub.nodes.push_back(scheme.nodes[i]);
  return sub;
}

double lebesgue_constant(const Scheme& scheme, const Domain& domain, std::size_t grid_size,
                         std::uint64_t seed, double pivot_tolerance) {
  scheme.validate();
  const std::size_t m = poly_space_dim(scheme.n, scheme.d);
  if (scheme.nodes.size() != m) {
    throw DimensionMismatch("lebesgue_constant needs exactly dim P_n^d nodes");
  }
  Matrix w = functional_matrix(scheme);
  std::vector<double> colscale(m, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    double mx = 0.0;
    for (std::size_t i = 0; i < m; ++i) mx = std::max(mx, std::fabs(w(i, j)));
    if (mx > 0.0) colscale[j] = 1.0 / mx;
    for (std::size_t i = 0; i < m; ++i) w(i, j) *= colscale[j];
  }
  const LuFactorization lu(std::move(w));
  if (!lu.regular(pivot_tolerance)) {
    throw SingularError("functionals are not unisolvent", -1);
  }
  // l_j has coefficients D W'^{-1} e_j
  std::vector<std::vector<double>> cardinals;
  std::vector<double> e(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    e[j] = 1.0;
    auto c = lu.solve(e);
    for (std::size_t i = 0; i < m; ++i) c[i] *= colscale[i];
    cardinals.push_back(std::move(c));
    e[j] = 0.0;
  }
  const GridEvaluator ev(make_grid(domain, scheme.n, grid_size, seed), graded_basis(scheme.n, scheme.d));
  const auto sums = ev.abs_sum(cardinals);
  return kernels::active().max_abs(sums.data(), sums.size());
}

RobustReport robust_experiment(const Polynomial& truth, const Scheme& scheme,
                               const RobustOptions& options) {
  check_options(options);
  scheme.validate();
  if (truth.n() != scheme.n) throw DimensionMismatch("robust_experiment: truth dimension differs");
  if (truth.d() > scheme.d) {
    // the truth must lie in P_n^d for E = 0
    for (const auto& [alpha, c] : truth.coeffs()) {
      if (alpha.degree() > scheme.d) {
        throw InvalidArgument("robust_experiment: truth has degree above the scheme degree");
      }
    }
  }
  Polynomial pbar(scheme.n, scheme.d);
  for (const auto& [alpha, c] : truth.coeffs()) pbar.set(alpha, c);

  Truth t;
  t.functionals = sample_polynomial(scheme, pbar).values;
  t.pbar = pbar.to_dense();
  return run_trials(scheme, t, options);
}

RobustReport robust_experiment(const BlackBoxFunction& truth, const Scheme& scheme,
                               const RobustOptions& options) {
  check_options(options);
  scheme.validate();
  if (!truth.value) throw InvalidArgument("robust_experiment: black box needs a value function");
  if (!truth.functional) {
    for (const auto& node : scheme.nodes) {
      if (node.order != 0) {
        throw InvalidArgument(
            "robust_experiment: derivative functionals need a functional callback");
      }
    }
  }

  Truth t;
  for (const auto& node : scheme.nodes) {
    t.functionals.push_back(truth.functional ? truth.functional(node) : truth.value(node.point));
  }

  // P-bar: minimax fit of f on a coarse grid standing in for G.
  const Domain domain = resolve_domain(options, scheme);
  domain.validate(scheme.n);
  constexpr std::size_t kCoarse = 256;
  const Grid coarse = make_grid(domain, scheme.n, std::min(kCoarse, options.grid_size), options.seed);
  FitProblem approx;
  approx.scheme.n = scheme.n;
  approx.scheme.d = scheme.d;
  approx.degree = scheme.d;
  for (std::size_t p = 0; p < coarse.size(); ++p) {
    Node node;
    node.point = coarse.point(p);
    approx.values.push_back(truth.value(node.point));
    approx.scheme.nodes.push_back(std::move(node));
  }
  const Polynomial pbar = minimax_fit(approx).polynomial;
  t.pbar = pbar.to_dense();

  // E must dominate both ||f - P-bar||_G and ||f - P-bar||_U for the bound.
  const Grid full = make_grid(domain, scheme.n, options.grid_size, options.seed);
  double e = 0.0;
  for (std::size_t p = 0; p < full.size(); ++p) {
    const auto x = full.point(p);
    e = std::max(e, std::fabs(truth.value(x) - pbar(x)));
  }
  for (std::size_t i = 0; i < scheme.nodes.size(); ++i) {
    e = std::max(e, std::fabs(t.functionals[i] - apply_functional(scheme.nodes[i], pbar)));
  }
  t.ideal_error = e;
  t.estimate = true;
  return run_trials(scheme, t, options);
}

}  // namespace birkhoff
