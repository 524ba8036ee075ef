#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "birkhoff/kernels.hpp"
#include "support.hpp"

using namespace birkhoff;

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_values(testing::Rng& rng, std::size_t count) {
  std::vector<double> v(count);
  for (auto& x : v) x = testing::uniform(rng, -3.0, 3.0);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar table is always available and first") {
  const auto all = kernels::available_kernels();
  REQUIRE_FALSE(all.empty());
  CHECK(all.front() == &kernels::scalar_kernels());
  CHECK(kernels::scalar_kernels().name == "scalar");
}

TEST_CASE("every variant is bit-identical to the scalar reference") {
  const auto& ref = kernels::scalar_kernels();
  testing::Rng rng(99);
  for (const auto* k : kernels::available_kernels()) {
    CAPTURE(k->name);
    // lengths straddle every vector width and tail size
    for (std::size_t count : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 513u}) {
      CAPTURE(count);
      const auto a = random_values(rng, count);
      const auto b = random_values(rng, count);

      std::vector<double> h1(count), h2(count);
      ref.hadamard(a.data(), b.data(), h1.data(), count);
      k->hadamard(a.data(), b.data(), h2.data(), count);
      CHECK(bit_equal(h1, h2));

      auto y1 = b, y2 = b;
      ref.axpy(-0.37, a.data(), y1.data(), count);
      k->axpy(-0.37, a.data(), y2.data(), count);
      CHECK(bit_equal(y1, y2));

      auto acc1 = b, acc2 = b;
      ref.abs_accumulate(a.data(), acc1.data(), count);
      k->abs_accumulate(a.data(), acc2.data(), count);
      CHECK(bit_equal(acc1, acc2));

      const double m1 = ref.max_abs(a.data(), count);
      const double m2 = k->max_abs(a.data(), count);
      CHECK(std::memcmp(&m1, &m2, sizeof(double)) == 0);

      for (std::size_t terms : {1u, 3u, 10u}) {
        const auto coeffs = random_values(rng, terms);
        const auto rows = random_values(rng, terms * count);
        std::vector<double> o1(count), o2(count);
        ref.lincomb(coeffs.data(), terms, rows.data(), count, o1.data(), count);
        k->lincomb(coeffs.data(), terms, rows.data(), count, o2.data(), count);
        CHECK(bit_equal(o1, o2));
      }
    }
  }
}

TEST_CASE("reference semantics") {
  const auto& k = kernels::scalar_kernels();
  const std::vector<double> a{1.0, -2.0, 3.0};
  const std::vector<double> b{4.0, 5.0, -6.0};
  std::vector<double> out(3);
  k.hadamard(a.data(), b.data(), out.data(), 3);
  CHECK(out == std::vector<double>{4.0, -10.0, -18.0});
  auto y = b;
  k.axpy(2.0, a.data(), y.data(), 3);
  CHECK(y == std::vector<double>{6.0, 1.0, 0.0});
  std::vector<double> acc(3, 1.0);
  k.abs_accumulate(a.data(), acc.data(), 3);
  CHECK(acc == std::vector<double>{2.0, 3.0, 4.0});
  CHECK(k.max_abs(a.data(), 3) == 3.0);
  CHECK(k.max_abs(a.data(), 0) == 0.0);
  // rows stored with a stride larger than the count
  const std::vector<double> rows{1.0, 2.0, 99.0, 10.0, 20.0, 99.0};
  const std::vector<double> c{3.0, 0.5};
  std::vector<double> lc(2);
  k.lincomb(c.data(), 2, rows.data(), 3, lc.data(), 2);
  CHECK(lc == std::vector<double>{8.0, 16.0});
}

TEST_CASE("max_abs skips NaN consistently across variants") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> v(37, 0.5);
  v[0] = nan;
  v[5] = -7.0;
  v[36] = nan;
  for (const auto* k : kernels::available_kernels()) {
    CAPTURE(k->name);
    CHECK(k->max_abs(v.data(), v.size()) == 7.0);
  }
}

TEST_CASE("active table is one of the available ones") {
  const auto& act = kernels::active();
  bool found = false;
  for (const auto* k : kernels::available_kernels()) found = found || k == &act;
  CHECK(found);
}

}
