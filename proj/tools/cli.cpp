#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "birkhoff/error.hpp"
#include "birkhoff/fit.hpp"
#include "birkhoff/grid.hpp"
#include "birkhoff/json_io.hpp"
#include "birkhoff/norming.hpp"
#include "birkhoff/solver.hpp"
#include "birkhoff/vandermonde.hpp"

namespace birkhoff::cli {

namespace {

using io::Json;

struct Config {
  std::size_t grid_size = kDefaultGridSize;
  std::uint64_t seed = 0;
  double pivot_tolerance = kDefaultPivotTolerance;
  std::vector<double> box;  // optional [a, b]^n override of the domain

  void validate() const {
    if (grid_size == 0) throw InvalidArgument("--grid must be positive");
    if (!(pivot_tolerance > 0.0 && pivot_tolerance < 1.0)) {
      throw InvalidArgument("--tol must lie in (0, 1)");
    }
    if (!box.empty() && (box.size() != 2 || !(box[0] < box[1]))) {
      throw InvalidArgument("--box expects two increasing numbers a,b");
    }
  }

  Domain domain_for(const Scheme& scheme) const {
    if (box.empty()) return scheme.domain_or_default(Domain::unit_ball());
    return Domain::box(std::vector<double>(scheme.n, box[0]), std::vector<double>(scheme.n, box[1]));
  }
};

std::uint64_t default_seed() {
  const char* env = std::getenv("BIRKHOFF_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || env[0] == '-') {
    throw InvalidArgument(std::string("BIRKHOFF_SEED is not a nonnegative integer: ") + env);
  }
  return v;
}

std::string format_real(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

Scheme load_scheme(const std::string& path) {
  Scheme s = io::decode_scheme(io::read_json_file(path));
  s.validate();
  return s;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// Lebesgue function as SVG: a curve for n = 1, a shaded scatter of the first
// two coordinates otherwise.
void write_svg(const std::string& path, const LebesgueSample& sample) {
  std::ofstream svg(path);
  if (!svg) throw ParseError("cannot write " + path);
  constexpr double w = 640.0, h = 400.0, pad = 40.0;
  const auto& g = sample.grid;
  const auto& v = sample.values;
  const double vmax = *std::max_element(v.begin(), v.end());
  const auto x0 = g.coordinate(0);
  const auto [xlo_it, xhi_it] = std::minmax_element(x0.begin(), x0.end());
  const double xlo = *xlo_it, xhi = *xhi_it;
  const auto sx = [&](double x) { return pad + (x - xlo) / std::max(xhi - xlo, 1e-300) * (w - 2 * pad); };

  svg << std::setprecision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (g.n() == 1) {
    std::vector<std::size_t> order(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x0[a] < x0[b]; });
    const auto sy = [&](double y) { return h - pad - y / vmax * (h - 2 * pad); };
    svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (std::size_t i : order) svg << sx(x0[i]) << ',' << sy(v[i]) << ' ';
    svg << "\"/>\n";
  } else {
    const auto x1 = g.coordinate(1);
    const auto [ylo_it, yhi_it] = std::minmax_element(x1.begin(), x1.end());
    const double ylo = *ylo_it, yhi = *yhi_it;
    const auto sy = [&](double y) { return h - pad - (y - ylo) / std::max(yhi - ylo, 1e-300) * (h - 2 * pad); };
    for (std::size_t i = 0; i < g.size(); ++i) {
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - v[i] / vmax)));
      svg << "<circle cx=\"" << sx(x0[i]) << "\" cy=\"" << sy(x1[i]) << "\" r=\"2\" fill=\"rgb("
          << shade << ',' << shade << ',' << shade << ")\"/>\n";
    }
  }
  svg << "<text x=\"" << pad << "\" y=\"20\" font-family=\"monospace\" font-size=\"12\">max "
      << std::setprecision(10) << vmax << "</text>\n</svg>\n";
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("not a number: '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Scheme univariate_scheme(std::size_t d, std::string_view points) {
  if (points != "taylor" && points != "equidistant" && points != "permuted") {
    throw InvalidArgument("points must be taylor, equidistant or permuted");
  }
  Scheme s;
  s.n = 1;
  s.d = d;
  s.domain = Domain::box({0.0}, {1.0});
  for (std::size_t k = 0; k <= d; ++k) {
    double x = 0.0;
    if (d > 0 && points == "equidistant") x = static_cast<double>(k) / static_cast<double>(d);
    if (d > 0 && points == "permuted") {
      const std::size_t slot = k % 2 == 0 ? k / 2 : d - (k - 1) / 2;
      x = static_cast<double>(slot) / static_cast<double>(d);
    }
    Node node;
    node.order = k;
    node.point = {x};
    if (k >= 1) node.direction = {1.0};
    s.nodes.push_back(std::move(node));
  }
  return s;
}

std::vector<ExperimentRow> taylor_experiment(std::size_t d_max, std::string_view points,
                                             std::size_t grid_size, std::uint64_t seed) {
  if (d_max < 1) throw InvalidArgument("--d-max must be at least 1");
  std::vector<ExperimentRow> rows;
  for (std::size_t d = 1; d <= d_max; ++d) {
    const Scheme s = univariate_scheme(d, points);
    const auto est = estimate_norming_constant(s, *s.domain, grid_size, seed);
    rows.push_back({d, std::string(points), est.value, est.grid_points});
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multivariate Birkhoff interpolation: regularity, solving, norming bounds, minimax fitting", "birkhoff"};
  app.require_subcommand(1);

  Config cfg;
  try {
    cfg.seed = default_seed();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const auto add_config = [&cfg](CLI::App* sub, bool grid) {
    sub->add_option("--tol", cfg.pivot_tolerance, "relative pivot tolerance for regularity");
    if (grid) {
      sub->add_option("--grid", cfg.grid_size, "grid size for sup-norm estimates");
      sub->add_option("--seed", cfg.seed, "grid / noise seed (default $BIRKHOFF_SEED or 0)");
      sub->add_option("--box", cfg.box, "use the cube [a,b]^n as domain")->delimiter(',')->expected(2);
    }
  };

  std::string scheme_path, samples_path, poly_path, out_path, point_text, thetas_text, plot_path;
  std::string points_kind = "taylor";
  std::size_t n = 1, d = 0, d_max = 12, trials = 100;
  std::optional<std::size_t> degree;
  double omega = 0.0, noise_h = 0.0;

  auto* check = app.add_subcommand("check", "per-degree regularity report");
  check->add_option("scheme", scheme_path, "scheme JSON")->required();
  add_config(check, false);

  auto* solve = app.add_subcommand("solve", "staged interpolation on an exact scheme");
  solve->add_option("scheme", scheme_path, "scheme JSON")->required();
  solve->add_option("samples", samples_path, "samples JSON")->required();
  solve->add_option("-o,--output", out_path, "write polynomial here instead of stdout");
  add_config(solve, false);

  auto* eval = app.add_subcommand("eval", "evaluate a polynomial at a point or on a scheme");
  eval->add_option("polynomial", poly_path, "polynomial JSON")->required();
  auto* eval_point = eval->add_option("--point", point_text, "comma-separated point");
  auto* eval_scheme = eval->add_option("--scheme", scheme_path, "emit samples for this scheme");
  eval_point->excludes(eval_scheme);

  auto* bound = app.add_subcommand("bound", "norming bound ladder");
  auto* bound_thetas = bound->add_option("--thetas", thetas_text, "theta_0..theta_d, comma-separated");
  auto* bound_omega = bound->add_option("--omega", omega, "Remez parameter in (0, 1]");
  bound_thetas->excludes(bound_omega);
  bound->add_option("--n", n, "dimension (with --omega)");
  bound->add_option("--d", d, "degree")->required();

  auto* estimate = app.add_subcommand("estimate", "grid estimate of the norming constant");
  estimate->add_option("scheme", scheme_path, "scheme JSON")->required();
  estimate->add_option("--plot", plot_path, "write the Lebesgue function as SVG");
  add_config(estimate, true);

  auto* theta = app.add_subcommand("theta", "per-degree direction thetas and the resulting bound");
  theta->add_option("scheme", scheme_path, "scheme JSON")->required();
  add_config(theta, true);

  auto* fit = app.add_subcommand("fit", "minimax fit over the scheme's functionals");
  fit->add_option("scheme", scheme_path, "scheme JSON")->required();
  fit->add_option("samples", samples_path, "samples JSON")->required();
  fit->add_option("--degree", degree, "fit degree (default: the scheme's d)");
  add_config(fit, false);

  auto* robust = app.add_subcommand("robust", "noisy-reconstruction experiment with polynomial truth");
  robust->add_option("scheme", scheme_path, "scheme JSON")->required();
  robust->add_option("truth", poly_path, "polynomial JSON")->required();
  robust->add_option("--noise", noise_h, "noise amplitude h")->required();
  robust->add_option("--trials", trials, "number of trials");
  add_config(robust, true);

  auto* taylor = app.add_subcommand("taylor-exp", "univariate Taylor / equidistant norming table (CSV)");
  taylor->add_option("--d-max", d_max, "largest degree");
  taylor->add_option("--points", points_kind, "taylor, equidistant or permuted")
      ->check(CLI::IsMember({"taylor", "equidistant", "permuted"}));
  add_config(taylor, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    cfg.validate();

    if (check->parsed()) {
      const auto report = check_scheme_regularity(load_scheme(scheme_path), cfg.pivot_tolerance);
      for (const auto& dr : report.per_degree) {
        for (const auto& w : dr.warnings) err << "warning: degree " << dr.k << ": " << w << '\n';
      }
      emit(out, io::encode(report));
      return report.regular() ? kOk : kSingular;
    }

    if (solve->parsed()) {
      const Scheme s = load_scheme(scheme_path);
      const SampleSet samples = io::decode_samples(io::read_json_file(samples_path));
      const Polynomial p = solve_staged(s, samples, cfg.pivot_tolerance);
      const double res = max_residual(s, p, samples);
      if (out_path.empty()) {
        emit(out, io::encode(p));
        err << "max_residual " << format_real(res) << '\n';
      } else {
        io::write_json_file(out_path, io::encode(p));
        out << "max_residual " << format_real(res) << '\n';
      }
      return kOk;
    }

    if (eval->parsed()) {
      const Polynomial p = io::decode_polynomial(io::read_json_file(poly_path));
      if (!scheme_path.empty()) {
        const Scheme s = load_scheme(scheme_path);
        if (s.n != p.n()) throw DimensionMismatch("polynomial and scheme dimensions differ");
        emit(out, io::encode(sample_polynomial(s, p)));
      } else {
        if (point_text.empty()) throw InvalidArgument("eval needs --point or --scheme");
        const auto x = parse_list(point_text);
        if (x.size() != p.n()) throw DimensionMismatch("point has the wrong dimension");
        out << format_real(p(x)) << '\n';
      }
      return kOk;
    }

    if (bound->parsed()) {
      std::vector<double> thetas;
      if (!thetas_text.empty()) {
        thetas = parse_list(thetas_text);
      } else if (bound_omega->count() > 0) {
        const double t = remez_theta(omega, n, d);
        thetas.assign(d + 1, t);
      } else {
        throw InvalidArgument("bound needs --thetas or --omega");
      }
      emit(out, io::encode(norming_bound(thetas, d)));
      return kOk;
    }

    if (estimate->parsed()) {
      const Scheme s = load_scheme(scheme_path);
      const Domain dom = cfg.domain_for(s);
      const auto sample = lebesgue_on_grid(s, dom, cfg.grid_size, cfg.seed, cfg.pivot_tolerance);
      const auto est = estimate_norming_constant(s, dom, cfg.grid_size, cfg.seed, cfg.pivot_tolerance);
      if (!plot_path.empty()) write_svg(plot_path, sample);
      emit(out, io::encode(est));
      return kOk;
    }

    if (theta->parsed()) {
      const Scheme s = load_scheme(scheme_path);
      s.require_exact();
      for (std::size_t k = 1; k <= s.d; ++k) {
        if (directions_outside_unit_ball(directions_of_order(s, k))) {
          err << "warning: order-" << k << " directions outside the unit ball are normalized\n";
        }
      }
      const auto thetas =
          estimate_scheme_thetas(s, Domain::unit_ball(), cfg.grid_size, cfg.seed, cfg.pivot_tolerance);
      Json j{{"theta", thetas},
             {"grid_size", cfg.grid_size},
             {"seed", cfg.seed},
             {"trace", io::encode(norming_bound(thetas, s.d))}};
      emit(out, j);
      return kOk;
    }

    if (fit->parsed()) {
      const Scheme s = load_scheme(scheme_path);
      const SampleSet samples = io::decode_samples(io::read_json_file(samples_path));
      emit(out, io::encode(minimax_fit({s, samples.values, degree.value_or(s.d)})));
      return kOk;
    }

    if (robust->parsed()) {
      const Scheme s = load_scheme(scheme_path);
      const Polynomial truth = io::decode_polynomial(io::read_json_file(poly_path));
      RobustOptions opt;
      opt.h = noise_h;
      opt.trials = trials;
      opt.seed = cfg.seed;
      opt.grid_size = cfg.grid_size;
      opt.domain = cfg.domain_for(s);
      opt.pivot_tolerance = cfg.pivot_tolerance;
      emit(out, io::encode(robust_experiment(truth, s, opt)));
      return kOk;
    }

    if (taylor->parsed()) {
      if (!cfg.box.empty()) throw InvalidArgument("taylor-exp always uses [0, 1]");
      out << "d,points,norming,grid_points\n";
      for (const auto& row : taylor_experiment(d_max, points_kind, cfg.grid_size, cfg.seed)) {
        out << row.d << ',' << row.points << ',' << format_real(row.norming) << ','
            << row.grid_points << '\n';
      }
      return kOk;
    }
  } catch (const SingularError& e) {
    err << "singular: " << e.what() << '\n';
    return kSingular;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace birkhoff::cli
