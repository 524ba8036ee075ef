// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "birkhoff/fit.hpp"
#include "birkhoff/grid.hpp"
#include "birkhoff/norming.hpp"
#include "birkhoff/solver.hpp"
#include "birkhoff/vandermonde.hpp"
#include "cli.hpp"
#include "support.hpp"

using namespace birkhoff;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-34s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double coeff_rel_error(const Polynomial& a, const Polynomial& b) {
  const auto da = a.to_dense();
  const auto db = b.to_dense();
  double scale = 1.0, err = 0.0;
  for (std::size_t i = 0; i < db.size(); ++i) {
    scale = std::max(scale, std::fabs(db[i]));
    err = std::max(err, std::fabs(da[i] - db[i]));
  }
  return err / scale;
}

std::uint64_t corpus_seed(std::size_t n, std::size_t d, int i) {
  return 1000003ULL * n + 10007ULL * d + static_cast<std::uint64_t>(i);
}

// Degenerate exact schemes whose direction sets fail at one degree.
std::vector<Scheme> crafted_degenerate() {
  std::vector<Scheme> out;
  testing::Rng rng(4242);
  // n = 2: a parallel (or antiparallel) pair at order k
  for (int i = 0; i < 7; ++i) {
    const std::size_t d = 1 + i % 4;
    const std::size_t k = 1 + i % d;
    auto s = testing::random_exact_scheme(rng, 2, d);
    const auto idx = s.indices_of_order(k);
    auto u = s.nodes[idx[0]].direction;
    for (auto& x : u) x *= (i % 2 ? -1.0 : 3.5);
    s.nodes[idx.back()].direction = u;
    out.push_back(std::move(s));
  }
  // n = 3: order-2 directions on the cone x^2 + y^2 = z^2
  for (int i = 0; i < 7; ++i) {
    const std::size_t d = 2 + i % 3;
    auto s = testing::random_exact_scheme(rng, 3, d);
    const auto idx = s.indices_of_order(2);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const double t = testing::uniform(rng, 0.0, 2.0 * std::numbers::pi);
      const double scale = testing::uniform(rng, 0.2, 3.0);
      s.nodes[idx[j]].direction = {scale * std::cos(t), scale * std::sin(t), scale};
    }
    out.push_back(std::move(s));
  }
  // n = 3: coplanar directions at order 1 or 2
  for (int i = 0; i < 6; ++i) {
    const std::size_t d = 2 + i % 2;
    const std::size_t k = 1 + i % 2;
    auto s = testing::random_exact_scheme(rng, 3, d);
    const auto a = testing::gaussian_vector(rng, 3);
    const auto b = testing::gaussian_vector(rng, 3);
    for (std::size_t j : s.indices_of_order(k)) {
      const double p = testing::uniform(rng), q = testing::uniform(rng);
      s.nodes[j].direction = {p * a[0] + q * b[0], p * a[1] + q * b[1], p * a[2] + q * b[2]};
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool pairwise_independent(const std::vector<std::vector<double>>& dirs) {
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      const double c = dirs[i][0] * dirs[j][1] - dirs[i][1] * dirs[j][0];
      if (std::fabs(c) <= 1e-12 * std::hypot(dirs[i][0], dirs[i][1]) * std::hypot(dirs[j][0], dirs[j][1])) {
        return false;
      }
    }
  }
  return true;
}

// Independent ladder evaluation (closed form, long double, product formula
// for the Chebyshev derivatives).
long double ladder_oracle(const std::vector<double>& theta, std::size_t d) {
  long double fact = 1.0L, prod = 1.0L, sum = 0.0L;
  for (std::size_t l = 0; l <= d; ++l) {
    if (l > 0) fact *= static_cast<long double>(l);
    long double m = 1.0L;
    for (std::size_t j = 0; j < l; ++j) {
      m *= static_cast<long double>(d * d - j * j) / static_cast<long double>(2 * j + 1);
    }
    const long double kappa = theta[l] / fact;
    sum += kappa * prod;
    prod *= 1.0L + m * kappa;
  }
  return sum;
}

}  // namespace

int main() {
  std::printf("criterion results (PASS/FAIL, id, description, measurements)\n");

  report(1, "staged == full oracle", [] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int count = 0, irregular = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t d = 1; d <= 4; ++d) {
        for (int i = 0; i < 100; ++i) {
          testing::Rng rng(corpus_seed(n, d, i));
          const auto s = testing::random_exact_scheme(rng, n, d);
          if (!check_scheme_regularity(s).regular()) {
            ++irregular;
            continue;
          }
          std::vector<double> psi(s.nodes.size());
          for (auto& x : psi) x = testing::uniform(rng);
          const auto staged = solve_staged(s, SampleSet{psi});
          const auto full = solve_full(s, SampleSet{psi});
          if (!full.polynomial) return Outcome{false, "full solve reported singular"};
          worst = std::max(worst, coeff_rel_error(staged, *full.polynomial));
          ++count;
        }
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream s;
    s << count << " schemes, " << irregular << " irregular skipped, max rel diff " << fmt("%.2e", worst)
      << " (tol 1e-8), " << fmt("%.2f", secs) << "s (limit 30s)";
    return Outcome{count == 1200 && worst <= 1e-8 && secs < 30.0, s.str()};
  });

  report(2, "full rank <=> per-degree regular", [] {
    std::vector<Scheme> corpus;
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t d = 1; d <= 4; ++d) {
        for (int i = 0; i < 100; ++i) {
          testing::Rng rng(corpus_seed(n, d, i));
          corpus.push_back(testing::random_exact_scheme(rng, n, d));
        }
      }
    }
    const auto crafted = crafted_degenerate();
    corpus.insert(corpus.end(), crafted.begin(), crafted.end());
    int disagreements = 0, singular = 0, crafted_singular = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const bool rank_deficient = solve_full(corpus[i], std::nullopt).singular;
      const bool irregular = !check_scheme_regularity(corpus[i]).regular();
      if (rank_deficient != irregular) ++disagreements;
      if (rank_deficient) ++singular;
      if (i >= corpus.size() - crafted.size() && rank_deficient && irregular) ++crafted_singular;
    }
    std::ostringstream s;
    s << corpus.size() << " schemes (" << crafted.size() << " crafted, " << crafted_singular
      << " detected singular), " << disagreements << " disagreements";
    return Outcome{disagreements == 0 && crafted_singular == static_cast<int>(crafted.size()), s.str()};
  });

  report(3, "planar: regular <=> non-parallel", [] {
    testing::Rng rng(303);
    std::vector<DirectionSet> sets;
    for (int i = 0; i < 200; ++i) {
      DirectionSet ds{2, 1 + static_cast<std::size_t>(i) % 6, {}};
      for (std::size_t j = 0; j <= ds.k; ++j) ds.directions.push_back(testing::gaussian_vector(rng, 2));
      sets.push_back(std::move(ds));
    }
    for (int i = 0; i < 20; ++i) {
      const std::size_t k = 1 + static_cast<std::size_t>(i) % 6;
      DirectionSet ds{2, k, {}};
      for (std::size_t j = 0; j <= k; ++j) {
        const double a = std::numbers::pi * static_cast<double>(j) / static_cast<double>(k + 1);
        ds.directions.push_back({std::cos(a), std::sin(a)});
      }
      if (i % 4 == 1) ds.directions[k] = {-2.0 * ds.directions[0][0], -2.0 * ds.directions[0][1]};
      if (i % 4 == 2) ds.directions[k] = ds.directions[k - 1];
      if (i % 4 == 3) ds.directions[0] = {1e3, 0.0};
      sets.push_back(std::move(ds));
    }
    int wrong = 0, parallel = 0;
    double worst = 0.0;
    for (const auto& ds : sets) {
      const auto det = vandermonde_determinant(ds);
      const bool independent = pairwise_independent(ds.directions);
      if (!independent) ++parallel;
      if (det.regular != independent) ++wrong;
      if (independent) {
        const auto prod = planar_product_determinant(ds);
        if (prod.sign != det.determinant.sign) ++wrong;
        worst = std::max(worst, std::fabs(prod.log_magnitude - det.determinant.log_magnitude) /
                                    std::max(1.0, std::fabs(prod.log_magnitude)));
      }
    }
    std::ostringstream s;
    s << sets.size() << " sets (" << parallel << " with parallel pairs), " << wrong
      << " verdict/sign mismatches, max log rel diff " << fmt("%.2e", worst) << " (tol 1e-8)";
    return Outcome{wrong == 0 && worst <= 1e-8, s.str()};
  });

  report(4, "verdict independent of points", [] {
    int changed = 0, singular = 0;
    for (int i = 0; i < 100; ++i) {
      testing::Rng rng(400 + static_cast<std::uint64_t>(i));
      const std::size_t n = 1 + static_cast<std::size_t>(i) % 3;
      const std::size_t d = 1 + static_cast<std::size_t>(i / 3) % 4;
      auto s = testing::random_exact_scheme(rng, n, d);
      if (i % 2 == 0 && n >= 2) {
        const std::size_t k = 1 + static_cast<std::size_t>(i) % d;
        const auto idx = s.indices_of_order(k);
        s.nodes[idx.back()].direction = s.nodes[idx.front()].direction;
      }
      auto moved = s;
      for (auto& node : moved.nodes) node.point = testing::point_in_ball(rng, n, 2.0);
      const bool a = solve_full(s, std::nullopt).singular;
      const bool b = solve_full(moved, std::nullopt).singular;
      const bool ra = check_scheme_regularity(s).regular();
      const bool rb = check_scheme_regularity(moved).regular();
      if (a != b || ra != rb) ++changed;
      if (a) ++singular;
    }
    std::ostringstream s;
    s << "100 trials (" << singular << " singular), " << changed << " verdict changes";
    return Outcome{changed == 0, s.str()};
  });

  report(5, "Euler identity", [] {
    testing::Rng rng(505);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(i) % 4;
      const std::size_t k = static_cast<std::size_t>(i / 4) % 7;
      const auto p = testing::random_homogeneous(rng, n, k);
      const auto u = testing::gaussian_vector(rng, n);
      const auto v = testing::gaussian_vector(rng, n);
      double fact = 1.0;
      for (std::size_t j = 2; j <= k; ++j) fact *= static_cast<double>(j);
      const double rhs = fact * static_cast<double>(testing::oracle_eval(testing::to_terms(p), u));
      const double lhs = directional_derivative(p, v, u, k);
      worst = std::max(worst, std::fabs(lhs - rhs) / (1.0 + std::fabs(rhs)));
    }
    return Outcome{worst <= 1e-12, "500 polynomials, max scaled error " + fmt("%.2e", worst) + " (tol 1e-12)"};
  });

  report(6, "Hermite counterexample", [] {
    testing::Rng rng(606);
    double worst = 1.0;
    bool all_singular = true;
    for (int i = 0; i < 20; ++i) {
      const auto p1 = testing::point_in_ball(rng, 2), p2 = testing::point_in_ball(rng, 2);
      Scheme s;
      s.n = 2;
      s.d = 2;
      for (const auto& p : {p1, p2}) {
        s.nodes.push_back(Node{0, p, {}});
        s.nodes.push_back(Node{1, p, {1.0, 0.0}});
        s.nodes.push_back(Node{1, p, {0.0, 1.0}});
      }
      const auto full = solve_full(s, std::nullopt);
      if (!full.singular || !full.null_polynomial) {
        all_singular = false;
        continue;
      }
      const double a = p2[1] - p1[1], b = -(p2[0] - p1[0]), c = -(a * p1[0] + b * p1[1]);
      const std::vector<double> line2{c * c, 2 * a * c, 2 * b * c, a * a, 2 * a * b, b * b};
      const auto z = full.null_polynomial->to_dense();
      double dot = 0.0, nz = 0.0, nl = 0.0;
      for (std::size_t j = 0; j < 6; ++j) {
        dot += z[j] * line2[j];
        nz += z[j] * z[j];
        nl += line2[j] * line2[j];
      }
      worst = std::min(worst, std::fabs(dot) / std::sqrt(nz * nl));
    }
    return Outcome{all_singular && worst > 1.0 - 1e-8,
                   std::string("20 point pairs, all singular: ") + (all_singular ? "yes" : "no") +
                       ", min |cosine| 1 - " + fmt("%.2e", 1.0 - worst) + " (need < 1e-8)"};
  });

  report(7, "Markov constants", [] {
    bool exact = true;
    for (int d = 0; d <= 30; ++d) {
      exact = exact && chebyshev_derivative_at_one(d, 0) == 1.0 &&
              chebyshev_derivative_at_one(d, 1) == static_cast<double>(d * d);
    }
    testing::Rng rng(707);
    double worst_margin = -1e300;
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(i) % 3;
      const std::size_t d = 1 + static_cast<std::size_t>(i / 3) % 5;
      const std::size_t k = 1 + static_cast<std::size_t>(i) % d;
      const auto p = testing::random_polynomial(rng, n, d);
      const auto u = testing::unit_vector(rng, n);
      const GridEvaluator ev(make_grid(Domain::unit_ball(), n, 4096, 0), graded_basis(n, d));
      const double pn = ev.max_abs(p.to_dense());
      const auto dp = directional_derivative_polynomial(p, u, k);
      Polynomial lifted(n, d);
      for (const auto& [alpha, c] : dp.coeffs()) lifted.set(alpha, c);
      const double dn = ev.max_abs(lifted.to_dense());
      const double mk = chebyshev_derivative_at_one(static_cast<int>(d), static_cast<int>(k));
      const double margin = dn / pn - mk;
      worst_margin = std::max(worst_margin, margin);
      if (dn / pn > mk + 1e-6) ++violations;
    }
    return Outcome{exact && violations == 0,
                   std::string("m_0 = 1, m_1 = d^2 for d <= 30: ") + (exact ? "yes" : "no") + "; 100 (P,u,k): " +
                       std::to_string(violations) + " violations, max ||D^k P||/||P|| - m_k = " +
                       fmt("%.3g", worst_margin)};
  });

  report(8, "bound ladder identity + goldens", [] {
    testing::Rng rng(808);
    double worst = 0.0, worst_oracle = 0.0;
    for (int i = 0; i < 500; ++i) {
      const std::size_t d = static_cast<std::size_t>(i) % 21;
      std::vector<double> theta(d + 1);
      for (auto& t : theta) t = testing::uniform(rng, 0.01, 10.0);
      const auto tr = norming_bound(theta, d);
      worst = std::max(worst, std::fabs(tr.bound - tr.closed_form) / tr.closed_form);
      worst_oracle = std::max(worst_oracle, static_cast<double>(std::fabs(tr.bound - ladder_oracle(theta, d)) / tr.bound));
    }
    const std::vector<double> t1{1.0, 1.0}, t2{1.0, 1.0, 1.0};
    const double g1 = static_cast<double>(ladder_oracle(t1, 1));
    const double g2 = static_cast<double>(ladder_oracle(t2, 2));
    const double b1 = norming_bound(t1, 1).bound, b2 = norming_bound(t2, 2).bound;
    const bool goldens = g1 == 3.0 && g2 == 8.0 && b1 == 3.0 && b2 == 8.0;
    std::ostringstream s;
    s << "recurrence vs closed form " << fmt("%.2e", worst) << ", vs oracle " << fmt("%.2e", worst_oracle)
      << " (tol 1e-12); d=1 -> " << b1 << ", d=2 -> " << b2 << " (oracle " << g1 << ", " << g2 << ")";
    return Outcome{worst <= 1e-12 && worst_oracle <= 1e-12 && goldens, s.str()};
  });

  report(9, "bound soundness", [] {
    int violations = 0;
    double min_slack = 1e300;
    for (int i = 0; i < 50; ++i) {
      testing::Rng rng(900 + static_cast<std::uint64_t>(i));
      const std::size_t n = 1 + static_cast<std::size_t>(i) % 3;
      const std::size_t d = 1 + static_cast<std::size_t>(i / 3) % 3;
      Scheme s = testing::random_exact_scheme(rng, n, d);
      for (auto& node : s.nodes) {
        if (node.order > 0) node.direction = testing::unit_vector(rng, n);
      }
      if (!check_scheme_regularity(s).regular()) return Outcome{false, "random scheme irregular"};
      const auto thetas = estimate_scheme_thetas(s, Domain::unit_ball(), 4096, 0);
      const double bound = norming_bound(thetas, d).bound;
      const double est = estimate_norming_constant(s, Domain::unit_ball(), 4096, 0).value;
      if (bound < est - 1e-8) ++violations;
      min_slack = std::min(min_slack, bound / est);
    }
    return Outcome{violations == 0, "50 schemes, " + std::to_string(violations) +
                                        " violations, min bound/estimate " + fmt("%.3g", min_slack)};
  });

  report(10, "Taylor experiment on [0,1]", [] {
    const auto taylor = cli::taylor_experiment(12, "taylor", kDefaultGridSize, 0);
    const auto equi = cli::taylor_experiment(12, "equidistant", kDefaultGridSize, 0);
    bool ok = true;
    for (std::size_t i = 0; i < taylor.size(); ++i) {
      ok = ok && taylor[i].norming <= 2.71829;
      if (i > 0) ok = ok && taylor[i].norming >= taylor[i - 1].norming;
    }
    std::ostringstream s;
    s << "taylor d=1..12 max " << fmt("%.10f", taylor.back().norming) << " (<= 2.71829, nondecreasing: "
      << (ok ? "yes" : "no") << "); equidistant d=12 " << fmt("%.6f", equi.back().norming) << " (reported)";
    return Outcome{ok, s.str()};
  });

  report(11, "robust reconstruction bound", [] {
    testing::Rng rng(1111);
    Scheme s = testing::random_exact_scheme(rng, 2, 2);
    for (std::size_t k = 0; k <= 2; ++k) {
      for (int j = 0; j < 2; ++j) {
        s.nodes.push_back(Node{k, testing::point_in_ball(rng, 2), k ? testing::gaussian_vector(rng, 2) : std::vector<double>{}});
      }
    }
    const auto truth = testing::random_polynomial(rng, 2, 2);
    RobustOptions opt;
    opt.h = 0.01;
    opt.trials = 100;
    opt.seed = 11;
    opt.grid_size = kDefaultGridSize;
    const auto rep = robust_experiment(truth, s, opt);
    int violations = 0;
    for (const auto& t : rep.trials) {
      if (t.grid_error > 2.0 * rep.norming * opt.h) ++violations;
    }
    std::ostringstream o;
    o << "100 trials, N = " << fmt("%.4g", rep.norming) << " (" << rep.norming_source << "), "
      << violations << " violations, argmin holds: " << (rep.argmin_holds ? "yes" : "no")
      << ", max ratio " << fmt("%.4f", rep.max_ratio) << ", mean " << fmt("%.4f", rep.mean_ratio);
    return Outcome{violations == 0 && rep.argmin_holds && rep.trials.size() == 100, o.str()};
  });

  report(12, "Remez thetas", [] {
    bool exact = remez_theta(0.5, 1, 1) == 3.0;
    for (std::size_t n = 1; n <= 5; ++n) {
      for (std::size_t d = 0; d <= 20; ++d) exact = exact && remez_theta(1.0, n, d) == 1.0;
    }
    int breaks = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
      for (int i = 1; i <= 20; ++i) {
        const double w = i / 20.0;
        for (std::size_t d = 1; d <= 20; ++d) {
          const double v = remez_theta(w, n, d);
          if (i > 1 && v > remez_theta((i - 1) / 20.0, n, d)) ++breaks;
          if (d > 1 && v < remez_theta(w, n, d - 1)) ++breaks;
        }
      }
    }
    return Outcome{exact && breaks == 0, std::string("exact values: ") + (exact ? "yes" : "no") +
                                             "; 20x20 (omega, d) grid for n = 1..3: " + std::to_string(breaks) +
                                             " monotonicity breaks"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
