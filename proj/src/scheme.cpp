#include "birkhoff/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "birkhoff/error.hpp"
#include "birkhoff/multi_index.hpp"

namespace birkhoff {

Domain Domain::unit_ball() { return Domain{}; }

Domain Domain::ball(double radius, std::vector<double> center) {
  Domain g;
  g.kind = Kind::Ball;
  g.radius = radius;
  g.center = std::move(center);
  return g;
}

Domain Domain::box(std::vector<double> lower, std::vector<double> upper) {
  Domain g;
  g.kind = Kind::Box;
  g.lower = std::move(lower);
  g.upper = std::move(upper);
  return g;
}

void Domain::validate(std::size_t n) const {
  if (kind == Kind::Ball) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw InvalidArgument("ball domain needs a positive finite radius");
    }
    if (!center.empty() && center.size() != n) {
      throw DimensionMismatch("ball center has dimension " + std::to_string(center.size()) +
                              ", expected " + std::to_string(n));
    }
    return;
  }
  if (lower.size() != n || upper.size() != n) {
    throw DimensionMismatch("box bounds must both have dimension " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] < upper[i])) throw InvalidArgument("box domain needs lower < upper");
  }
}

void Scheme::validate() const {
  if (n == 0) throw InvalidArgument("scheme dimension n must be >= 1");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    const std::string where = "node " + std::to_string(i);
    if (node.order > d) {
      throw InvalidArgument(where + " has order " + std::to_string(node.order) +
                            " above the degree " + std::to_string(d));
    }
    if (node.point.size() != n) throw DimensionMismatch(where + ": point dimension mismatch");
    if (node.order >= 1) {
      if (node.direction.size() != n) {
        throw DimensionMismatch(where + ": direction dimension mismatch");
      }
      if (std::all_of(node.direction.begin(), node.direction.end(),
                      [](double x) { return x == 0.0; })) {
        throw DegenerateNode(where + ": zero direction for order " + std::to_string(node.order));
      }
    }
  }
  if (domain) domain->validate(n);
}

std::vector<std::size_t> Scheme::count_by_order() const {
  std::vector<std::size_t> counts(d + 1, 0);
  for (const auto& node : nodes) {
    if (node.order <= d) ++counts[node.order];
  }
  return counts;
}

bool Scheme::is_exact() const {
  const auto counts = count_by_order();
  for (std::size_t k = 0; k <= d; ++k) {
    if (counts[k] != homogeneous_dim(n, k)) return false;
  }
  return true;
}

void Scheme::require_exact() const {
  const auto counts = count_by_order();
  std::vector<int> bad;
  std::string detail;
  for (std::size_t k = 0; k <= d; ++k) {
    const std::size_t want = homogeneous_dim(n, k);
    if (counts[k] != want) {
      bad.push_back(static_cast<int>(k));
      detail += " order " + std::to_string(k) + ": " + std::to_string(counts[k]) + " nodes, need " +
                std::to_string(want) + ";";
    }
  }
  if (!bad.empty()) throw SchemeShapeError("scheme is not exact:" + detail, std::move(bad));
}

std::vector<std::size_t> Scheme::indices_of_order(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].order == k) out.push_back(i);
  }
  return out;
}

double apply_functional(const Node& node, const Polynomial& p) {
  return directional_derivative(p, node.point, node.direction, node.order);
}

SampleSet sample_polynomial(const Scheme& scheme, const Polynomial& p) {
  SampleSet s;
  s.values.reserve(scheme.nodes.size());
  for (const auto& node : scheme.nodes) s.values.push_back(apply_functional(node, p));
  return s;
}

Matrix functional_matrix(const Scheme& scheme) {
  const auto basis = graded_basis(scheme.n, scheme.d);
  Matrix m(scheme.nodes.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    Polynomial mono(scheme.n, scheme.d);
    mono.set(basis[j], 1.0);
    for (std::size_t i = 0; i < scheme.nodes.size(); ++i) {
      m(i, j) = apply_functional(scheme.nodes[i], mono);
    }
  }
  return m;
}

double max_residual(const Scheme& scheme, const Polynomial& p, const SampleSet& samples) {
  if (samples.values.size() != scheme.nodes.size()) {
    throw DimensionMismatch("sample count " + std::to_string(samples.values.size()) +
                            " does not match node count " + std::to_string(scheme.nodes.size()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < scheme.nodes.size(); ++i) {
    worst = std::max(worst, std::fabs(apply_functional(scheme.nodes[i], p) - samples.values[i]));
  }
  return worst;
}

}  // namespace birkhoff
