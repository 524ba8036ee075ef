#include "birkhoff/multi_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "birkhoff/error.hpp"

namespace birkhoff {

unsigned MultiIndex::degree() const noexcept {
  return std::accumulate(exps_.begin(), exps_.end(), 0u);
}

double MultiIndex::power(std::span<const double> u) const {
  if (u.size() != exps_.size()) {
    throw DimensionMismatch("multi-index power: point has dimension " + std::to_string(u.size()) +
                            ", expected " + std::to_string(exps_.size()));
  }
  double result = 1.0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    for (unsigned e = 0; e < exps_[i]; ++e) result *= u[i];
  }
  return result;
}

bool GradedOrder::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da < db;
  // descending lex: larger leading exponent comes first
  return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                      a.exponents().begin(), a.exponents().end());
}

namespace {

std::size_t checked_binomial(std::size_t top, std::size_t bottom) {
  if (bottom > top) return 0;
  bottom = std::min(bottom, top - bottom);
  // r = C(top - bottom + i, i) after step i; each division is exact.
  unsigned __int128 r = 1;
  const std::size_t base = top - bottom;
  for (std::size_t i = 1; i <= bottom; ++i) {
    r = r * (base + i);
    r /= i;
    if (r > std::numeric_limits<std::size_t>::max()) {
      throw OverflowError("binomial coefficient C(" + std::to_string(top) + ", " +
                          std::to_string(bottom) + ") overflows 64 bits");
    }
  }
  return static_cast<std::size_t>(r);
}

void enumerate_into(std::size_t n, std::size_t k, std::vector<unsigned>& prefix,
                    std::vector<MultiIndex>& out) {
  if (n == 1) {
    prefix.push_back(static_cast<unsigned>(k));
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t first = k + 1; first-- > 0;) {
    prefix.push_back(static_cast<unsigned>(first));
    enumerate_into(n - 1, k - first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::size_t homogeneous_dim(std::size_t n, std::size_t k) {
  if (n == 0) throw InvalidArgument("homogeneous_dim: dimension n must be >= 1");
  if (k > std::numeric_limits<std::size_t>::max() - n) {
    throw OverflowError("homogeneous_dim: k + n overflows");
  }
  return checked_binomial(k + n - 1, n - 1);
}

std::size_t poly_space_dim(std::size_t n, std::size_t d) {
  if (n == 0) throw InvalidArgument("poly_space_dim: dimension n must be >= 1");
  if (d > std::numeric_limits<std::size_t>::max() - n) {
    throw OverflowError("poly_space_dim: d + n overflows");
  }
  return checked_binomial(d + n, n);
}

std::vector<MultiIndex> enumerate_multi_indices(std::size_t n, std::size_t k) {
  const std::size_t count = homogeneous_dim(n, k);
  std::vector<MultiIndex> out;
  out.reserve(count);
  std::vector<unsigned> prefix;
  prefix.reserve(n);
  enumerate_into(n, k, prefix, out);
  return out;
}

std::vector<MultiIndex> graded_basis(std::size_t n, std::size_t d) {
  std::vector<MultiIndex> out;
  out.reserve(poly_space_dim(n, d));
  for (std::size_t k = 0; k <= d; ++k) {
    auto level = enumerate_multi_indices(n, k);
    out.insert(out.end(), std::make_move_iterator(level.begin()),
               std::make_move_iterator(level.end()));
  }
  return out;
}

std::size_t graded_offset(std::size_t n, std::size_t k) {
  return k == 0 ? 0 : poly_space_dim(n, k - 1);
}

}  // namespace birkhoff
