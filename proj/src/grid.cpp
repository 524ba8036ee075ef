#include "birkhoff/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "birkhoff/error.hpp"
#include "birkhoff/kernels.hpp"

namespace birkhoff {

namespace {

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

double radical_inverse(std::uint64_t i, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (i > 0) {
    result += f * static_cast<double>(i % base);
    i /= base;
    f /= base;
  }
  return result;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> shifts_for(std::uint64_t seed, std::size_t dims) {
  std::vector<double> s(dims, 0.0);
  if (seed == 0) return s;
  for (std::size_t j = 0; j < dims; ++j) {
    s[j] = static_cast<double>(splitmix64(seed * 1000003ULL + j) >> 11) * 0x1.0p-53;
  }
  return s;
}

double frac(double x) { return x - std::floor(x); }

std::vector<double> linspace(double lo, double hi, std::size_t m) {
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) {
    v[i] = (i + 1 == m) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
  }
  return v;
}

Grid box_lattice(std::size_t n, const std::vector<double>& lower, const std::vector<double>& upper,
                 std::size_t size) {
  std::size_t m = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(size), 1.0 / static_cast<double>(n)) + 1e-9));
  m = std::max<std::size_t>(m, 2);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= m;

  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < n; ++i) axes.push_back(linspace(lower[i], upper[i], m));

  std::vector<double> coords(n * total);
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rest = p;
    for (std::size_t i = n; i-- > 0;) {
      coords[i * total + p] = axes[i][rest % m];
      rest /= m;
    }
  }
  return Grid(n, std::move(coords));
}

// Unit sphere point number i of a low-discrepancy sequence.
std::vector<double> sphere_point(std::size_t n, std::uint64_t i, const std::vector<double>& shift) {
  std::vector<double> x(n);
  if (n == 2) {
    const double a = 2.0 * std::numbers::pi * frac(radical_inverse(i, 2) + shift[0]);
    x[0] = std::cos(a);
    x[1] = std::sin(a);
    return x;
  }
  if (n == 3) {
    const double z = 1.0 - 2.0 * frac(radical_inverse(i, 2) + shift[0]);
    const double a = 2.0 * std::numbers::pi * frac(radical_inverse(i, 3) + shift[1]);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    x[0] = r * std::cos(a);
    x[1] = r * std::sin(a);
    x[2] = z;
    return x;
  }
  // normalized Gaussian built from the Halton point (i + 1 keeps coordinates off 0)
  double norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double u = frac(radical_inverse(i + 1, kPrimes[j]) + shift[j]);
    u = std::clamp(u, 1e-12, 1.0 - 1e-12);
    x[j] = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * u - 1.0);
    norm += x[j] * x[j];
  }
  norm = std::sqrt(norm);
  for (double& v : x) v /= norm;
  return x;
}

Grid ball_points(std::size_t n, double radius, const std::vector<double>& center, std::size_t size,
                 std::uint64_t seed) {
  std::vector<double> c = center.empty() ? std::vector<double>(n, 0.0) : center;
  if (n == 1) {
    auto pts = linspace(c[0] - radius, c[0] + radius, std::max<std::size_t>(size, 2));
    return Grid(1, std::move(pts));
  }
  if (n > std::size(kPrimes)) {
    throw InvalidArgument("ball grids support n <= " + std::to_string(std::size(kPrimes)));
  }
  const std::size_t boundary = std::max<std::size_t>(size / 2, 1);
  const std::size_t interior = std::max<std::size_t>(size - boundary, 1);
  const std::size_t total = boundary + interior;
  const auto shift = shifts_for(seed, 2 * n);
  const std::vector<double> sphere_shift(shift.begin(), shift.begin() + n);
  const std::vector<double> cube_shift(shift.begin() + n, shift.end());

  std::vector<double> coords(n * total);
  for (std::size_t p = 0; p < boundary; ++p) {
    const auto x = sphere_point(n, p, sphere_shift);
    for (std::size_t j = 0; j < n; ++j) coords[j * total + p] = c[j] + radius * x[j];
  }
  std::vector<double> x(n);
  std::uint64_t index = 1;
  for (std::size_t p = boundary; p < total; ++index) {
    double r2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = 2.0 * frac(radical_inverse(index, kPrimes[j]) + cube_shift[j]) - 1.0;
      r2 += x[j] * x[j];
    }
    if (r2 > 1.0) continue;
    for (std::size_t j = 0; j < n; ++j) coords[j * total + p] = c[j] + radius * x[j];
    ++p;
  }
  return Grid(n, std::move(coords));
}

}  // namespace

Grid::Grid(std::size_t n, std::vector<double> coords)
    : n_(n), count_(n == 0 ? 0 : coords.size() / n), coords_(std::move(coords)) {
  if (n == 0) throw InvalidArgument("grid dimension must be >= 1");
  if (coords_.size() != n_ * count_) throw DimensionMismatch("grid coordinates are ragged");
}

std::vector<double> Grid::point(std::size_t p) const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = coords_[i * count_ + p];
  return x;
}

Grid make_grid(const Domain& domain, std::size_t n, std::size_t size, std::uint64_t seed) {
  if (size == 0) throw InvalidArgument("grid size must be positive");
  domain.validate(n);
  if (domain.kind == Domain::Kind::Box) return box_lattice(n, domain.lower, domain.upper, size);
  return ball_points(n, domain.radius, domain.center, size, seed);
}

GridEvaluator::GridEvaluator(Grid grid, std::vector<MultiIndex> basis)
    : grid_(std::move(grid)), basis_(std::move(basis)) {
  for (const auto& alpha : basis_) {
    if (alpha.dim() != grid_.n()) throw DimensionMismatch("basis and grid dimensions differ");
    for (unsigned e : alpha.exponents()) max_exponent_ = std::max(max_exponent_, e);
  }
}

void GridEvaluator::fill_table(std::size_t begin, std::size_t count,
                               std::vector<double>& table) const {
  const auto& k = kernels::active();
  const std::size_t n = grid_.n();
  const std::size_t levels = max_exponent_ + 1;
  // powers[(i * levels + e) * count + p] = x_i(p)^e
  std::vector<double> powers(n * levels * count);
  for (std::size_t i = 0; i < n; ++i) {
    double* base = powers.data() + i * levels * count;
    std::fill(base, base + count, 1.0);
    const double* xi = grid_.coordinate(i).data() + begin;
    for (std::size_t e = 1; e < levels; ++e) {
      k.hadamard(base + (e - 1) * count, xi, base + e * count, count);
    }
  }
  table.resize(basis_.size() * count);
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    double* row = table.data() + j * count;
    const auto& alpha = basis_[j];
    const double* first = powers.data() + alpha[0] * count;
    std::copy(first, first + count, row);
    for (std::size_t i = 1; i < n; ++i) {
      k.hadamard(row, powers.data() + (i * levels + alpha[i]) * count, row, count);
    }
  }
}

std::vector<double> GridEvaluator::values(std::span<const double> coeffs) const {
  if (coeffs.size() != basis_.size()) throw DimensionMismatch("coefficient vector size mismatch");
  const auto& k = kernels::active();
  std::vector<double> out(grid_.size());
  std::vector<double> table;
  for (std::size_t begin = 0; begin < grid_.size(); begin += kBlock) {
    const std::size_t count = std::min(kBlock, grid_.size() - begin);
    fill_table(begin, count, table);
    k.lincomb(coeffs.data(), coeffs.size(), table.data(), count, out.data() + begin, count);
  }
  return out;
}

double GridEvaluator::max_abs(std::span<const double> coeffs) const {
  const auto v = values(coeffs);
  return kernels::active().max_abs(v.data(), v.size());
}

std::vector<double> GridEvaluator::abs_sum(
    const std::vector<std::vector<double>>& coeff_vectors) const {
  for (const auto& c : coeff_vectors) {
    if (c.size() != basis_.size()) throw DimensionMismatch("coefficient vector size mismatch");
  }
  const auto& k = kernels::active();
  std::vector<double> acc(grid_.size(), 0.0);
  std::vector<double> table;
  std::vector<double> scratch(kBlock);
  for (std::size_t begin = 0; begin < grid_.size(); begin += kBlock) {
    const std::size_t count = std::min(kBlock, grid_.size() - begin);
    fill_table(begin, count, table);
    for (const auto& c : coeff_vectors) {
      k.lincomb(c.data(), c.size(), table.data(), count, scratch.data(), count);
      k.abs_accumulate(scratch.data(), acc.data() + begin, count);
    }
  }
  return acc;
}

}  // namespace birkhoff
