#include "birkhoff/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "birkhoff/error.hpp"
#include "birkhoff/kernels.hpp"
#include "birkhoff/multi_index.hpp"

namespace birkhoff {

namespace {

double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

double norm2(const std::vector<double>& u) {
  double s = 0.0;
  for (double x : u) s += x * x;
  return std::sqrt(s);
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

StagedSolver::StagedSolver(Scheme scheme, double pivot_tolerance) : scheme_(std::move(scheme)) {
  scheme_.validate();
  scheme_.require_exact();
  stages_.resize(scheme_.d + 1);

  std::vector<int> failing;
  for (std::size_t k = 0; k <= scheme_.d; ++k) {
    Stage& stage = stages_[k];
    stage.nodes = scheme_.indices_of_order(k);
    stage.alphas = enumerate_multi_indices(scheme_.n, k);
    if (k == 0) continue;
    const DirectionSet ds = directions_of_order(scheme_, k);
    for (const auto& u : ds.directions) {
      stage.scale.push_back(1.0 / (factorial(k) * std::pow(norm2(u), static_cast<double>(k))));
    }
    stage.lu.emplace(build_normalized_vandermonde(ds));
    if (!stage.lu->regular(pivot_tolerance)) failing.push_back(static_cast<int>(k));
  }
  if (!failing.empty()) {
    const int smallest = failing.front();
    throw SingularError("scheme is irregular: homogeneous Vandermonde system singular at degree " +
                            join(failing),
                        smallest, std::move(failing));
  }
}

Polynomial StagedSolver::solve(const SampleSet& samples) const {
  if (samples.values.size() != scheme_.nodes.size()) {
    throw DimensionMismatch("sample count " + std::to_string(samples.values.size()) +
                            " does not match node count " + std::to_string(scheme_.nodes.size()));
  }
  Polynomial p(scheme_.n, scheme_.d);
  for (std::size_t k = scheme_.d; k >= 1; --k) {
    const Stage& stage = stages_[k];
    std::vector<double> rhs(stage.nodes.size());
    for (std::size_t j = 0; j < stage.nodes.size(); ++j) {
      const Node& node = scheme_.nodes[stage.nodes[j]];
      // p holds only degrees > k here, i.e. the tail P~_{k+1}
      const double correction = p.is_zero() ? 0.0 : apply_functional(node, p);
      rhs[j] = (samples.values[stage.nodes[j]] - correction) * stage.scale[j];
    }
    const auto coeffs = stage.lu->solve(rhs);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] != 0.0) p.set(stage.alphas[j], coeffs[j]);
    }
  }
  const Node& anchor = scheme_.nodes[stages_[0].nodes.front()];
  const double constant = samples.values[stages_[0].nodes.front()] - p(anchor.point);
  p.set(stages_[0].alphas.front(), constant);
  return p;
}

Polynomial solve_staged(const Scheme& scheme, const SampleSet& samples, double pivot_tolerance) {
  if (samples.values.size() != scheme.nodes.size()) {
    throw DimensionMismatch("sample count " + std::to_string(samples.values.size()) +
                            " does not match node count " + std::to_string(scheme.nodes.size()));
  }
  return StagedSolver(scheme, pivot_tolerance).solve(samples);
}

FullSolveResult solve_full(const Scheme& scheme, const std::optional<SampleSet>& samples,
                           double pivot_tolerance) {
  scheme.validate();
  const std::size_t m = poly_space_dim(scheme.n, scheme.d);
  const std::size_t rows = scheme.nodes.size();
  if (samples) {
    if (rows != m) {
      throw SchemeShapeError("full solve needs " + std::to_string(m) + " functionals, scheme has " +
                                 std::to_string(rows),
                             {});
    }
    if (samples->values.size() != rows) {
      throw DimensionMismatch("sample count does not match node count");
    }
  }
  if (rows == 0) {
    FullSolveResult empty;
    empty.singular = true;
    std::vector<double> e(m, 0.0);
    e[0] = 1.0;
    empty.null_polynomial = Polynomial::from_dense(scheme.n, scheme.d, e);
    return empty;
  }

  Matrix a = functional_matrix(scheme);
  std::vector<double> row_scale(rows, 1.0);
  std::vector<double> col_scale(m, 1.0);
  for (std::size_t i = 0; i < rows; ++i) {
    double big = 0.0;
    for (std::size_t j = 0; j < m; ++j) big = std::max(big, std::fabs(a(i, j)));
    if (big > 0.0) row_scale[i] = 1.0 / big;
    for (std::size_t j = 0; j < m; ++j) a(i, j) *= row_scale[i];
  }
  for (std::size_t j = 0; j < m; ++j) {
    double big = 0.0;
    for (std::size_t i = 0; i < rows; ++i) big = std::max(big, std::fabs(a(i, j)));
    if (big > 0.0) col_scale[j] = 1.0 / big;
    for (std::size_t i = 0; i < rows; ++i) a(i, j) *= col_scale[j];
  }

  LuFactorization lu(std::move(a));
  FullSolveResult out;
  out.rank = lu.rank(pivot_tolerance);
  out.singular = out.rank < m;
  out.conditioning = lu.pivot_ratio();

  if (out.singular) {
    auto y = lu.null_vector(pivot_tolerance);
    double norm = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      y[j] *= col_scale[j];
      norm += y[j] * y[j];
    }
    norm = std::sqrt(norm);
    for (double& v : y) v /= norm;
    out.null_polynomial = Polynomial::from_dense(scheme.n, scheme.d, y);
    return out;
  }
  if (samples) {
    std::vector<double> rhs(rows);
    for (std::size_t i = 0; i < rows; ++i) rhs[i] = samples->values[i] * row_scale[i];
    auto y = lu.solve(rhs);
    for (std::size_t j = 0; j < m; ++j) y[j] *= col_scale[j];
    out.polynomial = Polynomial::from_dense(scheme.n, scheme.d, y);
  }
  return out;
}

std::vector<Polynomial> cardinal_basis(const Scheme& scheme, double pivot_tolerance) {
  const StagedSolver solver(scheme, pivot_tolerance);
  std::vector<Polynomial> basis;
  basis.reserve(scheme.nodes.size());
  SampleSet unit{std::vector<double>(scheme.nodes.size(), 0.0)};
  for (std::size_t j = 0; j < scheme.nodes.size(); ++j) {
    unit.values[j] = 1.0;
    basis.push_back(solver.solve(unit));
    unit.values[j] = 0.0;
  }
  return basis;
}

LebesgueSample lebesgue_on_grid(const Scheme& scheme, const Domain& domain, std::size_t grid_size,
                                std::uint64_t seed, double pivot_tolerance) {
  const auto basis = cardinal_basis(scheme, pivot_tolerance);
  Grid grid = make_grid(domain, scheme.n, grid_size, seed);
  if (grid.size() == 0) throw InvalidArgument("empty grid");
  std::vector<std::vector<double>> dense;
  dense.reserve(basis.size());
  for (const auto& l : basis) dense.push_back(l.to_dense());
  GridEvaluator eval(grid, graded_basis(scheme.n, scheme.d));
  auto values = eval.abs_sum(dense);
  return {std::move(grid), std::move(values)};
}

NormingEstimate estimate_norming_constant(const Scheme& scheme, const Domain& domain,
                                          std::size_t grid_size, std::uint64_t seed,
                                          double pivot_tolerance) {
  const auto sample = lebesgue_on_grid(scheme, domain, grid_size, seed, pivot_tolerance);
  NormingEstimate est;
  est.grid_points = sample.grid.size();
  est.grid_size = grid_size;
  est.seed = seed;
  est.value = kernels::active().max_abs(sample.values.data(), sample.values.size());
  const auto it = std::find(sample.values.begin(), sample.values.end(), est.value);
  est.argmax = sample.grid.point(static_cast<std::size_t>(it - sample.values.begin()));
  return est;
}

double estimate_direction_theta(const DirectionSet& ds, const Domain& domain,
                                std::size_t grid_size, std::uint64_t seed, double pivot_tolerance) {
  if (ds.k == 0) {
    // constants against a single evaluation: the cardinal function is 1
    if (ds.directions.size() != 1) {
      throw SchemeShapeError("order 0 needs exactly one functional", {0});
    }
    return 1.0;
  }
  LuFactorization lu(build_normalized_vandermonde(ds));
  if (!lu.regular(pivot_tolerance)) {
    throw SingularError("direction set of order " + std::to_string(ds.k) + " is not unisolvent",
                        static_cast<int>(ds.k), {static_cast<int>(ds.k)});
  }
  const std::size_t m = ds.directions.size();
  std::vector<std::vector<double>> cardinals;
  cardinals.reserve(m);
  std::vector<double> e(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    e[i] = 1.0;
    cardinals.push_back(lu.solve(e));
    e[i] = 0.0;
  }
  Grid grid = make_grid(domain, ds.n, grid_size, seed);
  if (grid.size() == 0) throw InvalidArgument("empty grid");
  GridEvaluator eval(std::move(grid), enumerate_multi_indices(ds.n, ds.k));
  const auto values = eval.abs_sum(cardinals);
  return kernels::active().max_abs(values.data(), values.size());
}

std::vector<double> estimate_scheme_thetas(const Scheme& scheme, const Domain& domain,
                                           std::size_t grid_size, std::uint64_t seed,
                                           double pivot_tolerance) {
  scheme.validate();
  scheme.require_exact();
  std::vector<double> thetas;
  thetas.reserve(scheme.d + 1);
  for (std::size_t k = 0; k <= scheme.d; ++k) {
    thetas.push_back(estimate_direction_theta(directions_of_order(scheme, k), domain, grid_size,
                                              seed, pivot_tolerance));
  }
  return thetas;
}

bool directions_outside_unit_ball(const DirectionSet& ds) {
  if (ds.k == 0) return false;
  return std::any_of(ds.directions.begin(), ds.directions.end(),
                     [](const std::vector<double>& u) { return norm2(u) > 1.0 + 1e-12; });
}

}  // namespace birkhoff
