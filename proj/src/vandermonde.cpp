#include "birkhoff/vandermonde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "birkhoff/error.hpp"
#include "birkhoff/multi_index.hpp"

namespace birkhoff {

namespace {

void require_cardinality(const DirectionSet& ds) {
  const std::size_t want = homogeneous_dim(ds.n, ds.k);
  if (ds.directions.size() != want) {
    throw SchemeShapeError("order " + std::to_string(ds.k) + " has " +
                               std::to_string(ds.directions.size()) + " directions, need " +
                               std::to_string(want),
                           {static_cast<int>(ds.k)});
  }
  for (const auto& u : ds.directions) {
    if (u.size() != ds.n) throw DimensionMismatch("direction dimension does not match n");
  }
}

double norm2(const std::vector<double>& u) {
  double s = 0.0;
  for (double x : u) s += x * x;
  return std::sqrt(s);
}

Matrix vandermonde_of(std::size_t n, std::size_t k, const std::vector<std::vector<double>>& dirs) {
  const auto alphas = enumerate_multi_indices(n, k);
  Matrix a(dirs.size(), alphas.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = 0; j < alphas.size(); ++j) a(i, j) = alphas[j].power(dirs[i]);
  }
  return a;
}

bool relative_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}

}  // namespace

DirectionSet directions_of_order(const Scheme& scheme, std::size_t k) {
  DirectionSet ds{scheme.n, k, {}};
  for (const auto& node : scheme.nodes) {
    if (node.order != k) continue;
    ds.directions.push_back(k == 0 && node.direction.empty() ? std::vector<double>(scheme.n, 0.0)
                                                             : node.direction);
  }
  return ds;
}

std::vector<std::vector<double>> normalized_directions(const DirectionSet& ds) {
  if (ds.k == 0) return ds.directions;
  std::vector<std::vector<double>> out;
  out.reserve(ds.directions.size());
  for (const auto& u : ds.directions) {
    const double len = norm2(u);
    if (len == 0.0) {
      throw DegenerateNode("zero direction among order-" + std::to_string(ds.k) + " directions");
    }
    std::vector<double> v(u);
    for (double& x : v) x /= len;
    out.push_back(std::move(v));
  }
  return out;
}

Matrix build_homogeneous_vandermonde(const DirectionSet& ds) {
  require_cardinality(ds);
  return vandermonde_of(ds.n, ds.k, ds.directions);
}

Matrix build_normalized_vandermonde(const DirectionSet& ds) {
  require_cardinality(ds);
  return vandermonde_of(ds.n, ds.k, normalized_directions(ds));
}

VandermondeDeterminant vandermonde_determinant(const DirectionSet& ds, double pivot_tolerance) {
  LuFactorization lu(build_normalized_vandermonde(ds));
  VandermondeDeterminant out;
  out.conditioning = lu.pivot_ratio();
  out.regular = lu.regular(pivot_tolerance);
  out.determinant = lu.determinant();
  if (ds.k > 0 && out.determinant.sign != 0) {
    // each row was divided by |u_i|^k
    for (const auto& u : ds.directions) {
      out.determinant.log_magnitude += static_cast<double>(ds.k) * std::log(norm2(u));
    }
  }
  return out;
}

SignedLog planar_product_determinant(const DirectionSet& ds) {
  if (ds.n != 2) {
    throw InvalidArgument("planar product formula needs n = 2, got n = " + std::to_string(ds.n));
  }
  if (ds.directions.size() != ds.k + 1) {
    throw SchemeShapeError("planar product formula needs k + 1 = " + std::to_string(ds.k + 1) +
                               " directions, got " + std::to_string(ds.directions.size()),
                           {static_cast<int>(ds.k)});
  }
  SignedLog product{1, 0.0};
  const auto& u = ds.directions;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      product *= SignedLog::from_value(u[i][0] * u[j][1] - u[i][1] * u[j][0]);
    }
  }
  return product;
}

bool RegularityReport::regular() const {
  return std::all_of(per_degree.begin(), per_degree.end(),
                     [](const DegreeRegularity& r) { return r.regular; });
}

std::vector<int> RegularityReport::failing_degrees() const {
  std::vector<int> out;
  for (const auto& r : per_degree) {
    if (!r.regular) out.push_back(static_cast<int>(r.k));
  }
  return out;
}

RegularityReport check_scheme_regularity(const Scheme& scheme, double pivot_tolerance) {
  if (!(pivot_tolerance > 0.0 && pivot_tolerance < 1.0)) {
    throw InvalidArgument("pivot tolerance must lie in (0, 1)");
  }
  scheme.validate();
  scheme.require_exact();

  RegularityReport report;
  report.n = scheme.n;
  report.d = scheme.d;
  report.pivot_tolerance = pivot_tolerance;
  report.per_degree.resize(scheme.d + 1);
  report.per_degree[0].k = 0;  // a single evaluation functional on constants

  for (std::size_t k = 1; k <= scheme.d; ++k) {
    const DirectionSet ds = directions_of_order(scheme, k);
    DegreeRegularity& entry = report.per_degree[k];
    entry.k = k;
    const auto det = vandermonde_determinant(ds, pivot_tolerance);
    entry.regular = det.regular;
    entry.conditioning = det.conditioning;
    entry.determinant = det.determinant;

    if (scheme.n == 2) {
      PlanarCrossCheck check;
      check.product = planar_product_determinant(ds);
      if (entry.regular && check.product.sign != 0) {
        check.magnitude_agrees = relative_close(det.determinant.log_magnitude,
                                                check.product.log_magnitude, 1e-8);
        check.sign_agrees = det.determinant.sign == check.product.sign;
      } else if (entry.regular) {
        check.magnitude_agrees = false;  // exact zero product, yet pivots say regular
      }
      if (!check.magnitude_agrees) {
        entry.warnings.push_back("planar product log-magnitude disagrees with the factorization");
      }
      if (!check.sign_agrees) {
        entry.warnings.push_back("planar product sign disagrees with the factorization");
      }
      entry.planar = check;
    }
  }
  return report;
}

}  // namespace birkhoff
