#include "birkhoff/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "birkhoff/error.hpp"

namespace birkhoff::io {

namespace {

// Non-finite numbers have no JSON spelling; they are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

double as_real(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

std::size_t as_count(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return j.get<std::size_t>();
  throw ParseError(where + ": expected a nonnegative integer");
}

std::vector<double> as_reals(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_real(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> as_vector(const Json& j, std::size_t n, const std::string& where) {
  auto v = as_reals(j, where);
  if (v.size() != n) {
    throw ParseError(where + ": expected " + std::to_string(n) + " entries, got " +
                     std::to_string(v.size()));
  }
  return v;
}

Json encode_log(const SignedLog& s) {
  return Json{{"sign", s.sign}, {"log_abs", number(s.log_magnitude)}};
}

Json reals(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": invalid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << value.dump(2) << '\n';
  if (!out) throw ParseError("write failed for " + path.string());
}

Json encode(const Polynomial& p) {
  Json coeffs = Json::array();
  for (const auto& [alpha, c] : p.coeffs()) {
    coeffs.push_back(Json{{"alpha", alpha.exponents()}, {"c", number(c)}});
  }
  return Json{{"n", p.n()}, {"d", p.d()}, {"coeffs", std::move(coeffs)}};
}

Polynomial decode_polynomial(const Json& j) {
  const std::string where = "polynomial";
  const std::size_t n = as_count(field(j, "n", where), where + ".n");
  const std::size_t d = as_count(field(j, "d", where), where + ".d");
  if (n == 0) throw ParseError(where + ".n must be positive");
  const Json& list = field(j, "coeffs", where);
  if (!list.is_array()) throw ParseError(where + ".coeffs: expected an array");

  Polynomial::CoeffMap map;
  std::set<std::vector<unsigned>> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = where + ".coeffs[" + std::to_string(i) + "]";
    const Json& a = field(list[i], "alpha", at);
    if (!a.is_array() || a.size() != n) {
      throw ParseError(at + ".alpha: expected " + std::to_string(n) + " exponents");
    }
    std::vector<unsigned> e;
    for (const auto& x : a) e.push_back(static_cast<unsigned>(as_count(x, at + ".alpha")));
    if (!seen.insert(e).second) throw ParseError(at + ": duplicate exponent");
    MultiIndex alpha(e);
    if (alpha.degree() > d) throw ParseError(at + ": exponent degree exceeds d");
    const double c = as_real(field(list[i], "c", at), at + ".c");
    if (c != 0.0) map.emplace(std::move(alpha), c);
  }
  return Polynomial(n, d, std::move(map));
}

Json encode(const Domain& domain) {
  if (domain.kind == Domain::Kind::Box) {
    return Json{{"kind", "box"}, {"lower", domain.lower}, {"upper", domain.upper}};
  }
  Json j{{"kind", "ball"}, {"radius", domain.radius}};
  if (!domain.center.empty()) j["center"] = domain.center;
  return j;
}

Domain decode_domain(const Json& j, std::size_t n) {
  const std::string where = "domain";
  const Json& kind = field(j, "kind", where);
  if (!kind.is_string()) throw ParseError(where + ".kind: expected a string");
  Domain dom;
  if (kind == "ball") {
    dom.kind = Domain::Kind::Ball;
    if (j.contains("radius")) dom.radius = as_real(j["radius"], where + ".radius");
    if (j.contains("center")) dom.center = as_vector(j["center"], n, where + ".center");
  } else if (kind == "box") {
    dom.kind = Domain::Kind::Box;
    dom.lower = as_vector(field(j, "lower", where), n, where + ".lower");
    dom.upper = as_vector(field(j, "upper", where), n, where + ".upper");
  } else {
    throw ParseError(where + ".kind: expected 'ball' or 'box'");
  }
  try {
    dom.validate(n);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string(where) + ": " + e.what());
  }
  return dom;
}

Json encode(const Scheme& scheme) {
  Json nodes = Json::array();
  for (const auto& node : scheme.nodes) {
    Json j{{"order", node.order}, {"point", node.point}};
    if (node.order >= 1) j["direction"] = node.direction;
    nodes.push_back(std::move(j));
  }
  Json j{{"n", scheme.n}, {"d", scheme.d}};
  if (scheme.domain) j["domain"] = encode(*scheme.domain);
  j["nodes"] = std::move(nodes);
  return j;
}

Scheme decode_scheme(const Json& j) {
  const std::string where = "scheme";
  Scheme s;
  s.n = as_count(field(j, "n", where), where + ".n");
  s.d = as_count(field(j, "d", where), where + ".d");
  if (s.n == 0) throw ParseError(where + ".n must be positive");
  if (j.contains("domain")) s.domain = decode_domain(j["domain"], s.n);
  const Json& nodes = field(j, "nodes", where);
  if (!nodes.is_array()) throw ParseError(where + ".nodes: expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string at = where + ".nodes[" + std::to_string(i) + "]";
    Node node;
    node.order = as_count(field(nodes[i], "order", at), at + ".order");
    if (node.order > s.d) throw ParseError(at + ".order exceeds d");
    node.point = as_vector(field(nodes[i], "point", at), s.n, at + ".point");
    const bool has_dir = nodes[i].contains("direction");
    if (node.order >= 1 && !has_dir) throw ParseError(at + ": direction required for order >= 1");
    if (node.order == 0 && has_dir) throw ParseError(at + ": direction not allowed for order 0");
    if (has_dir) node.direction = as_vector(nodes[i]["direction"], s.n, at + ".direction");
    s.nodes.push_back(std::move(node));
  }
  return s;
}

Json encode(const SampleSet& samples) { return Json{{"values", reals(samples.values)}}; }

SampleSet decode_samples(const Json& j) {
  return SampleSet{as_reals(field(j, "values", "samples"), "samples.values")};
}

Json encode(const RegularityReport& report) {
  Json degrees = Json::array();
  for (const auto& dr : report.per_degree) {
    Json e{{"k", dr.k},
           {"regular", dr.regular},
           {"conditioning", number(dr.conditioning)},
           {"determinant", encode_log(dr.determinant)}};
    if (dr.planar) {
      e["planar_product"] = encode_log(dr.planar->product);
      e["planar_magnitude_agrees"] = dr.planar->magnitude_agrees;
      e["planar_sign_agrees"] = dr.planar->sign_agrees;
    }
    e["warnings"] = dr.warnings;
    degrees.push_back(std::move(e));
  }
  return Json{{"n", report.n},
              {"d", report.d},
              {"pivot_tolerance", report.pivot_tolerance},
              {"regular", report.regular()},
              {"failing_degrees", report.failing_degrees()},
              {"per_degree", std::move(degrees)}};
}

Json encode(const NormingBoundTrace& t) {
  return Json{{"d", t.d},
              {"m", reals(t.m)},
              {"theta", reals(t.theta)},
              {"kappa", reals(t.kappa)},
              {"tau", reals(t.tau)},
              {"bound", number(t.bound)},
              {"closed_form", number(t.closed_form)}};
}

Json encode(const NormingEstimate& e) {
  return Json{{"value", number(e.value)},
              {"grid_points", e.grid_points},
              {"grid_size", e.grid_size},
              {"seed", e.seed},
              {"argmax", reals(e.argmax)}};
}

Json encode(const FitResult& r) {
  return Json{{"polynomial", encode(r.polynomial)},
              {"achieved_residual", number(r.achieved_residual)},
              {"iterations", r.iterations},
              {"dual_infeasibility", number(r.dual_infeasibility)}};
}

Json encode(const RobustReport& r) {
  Json trials = Json::array();
  for (const auto& t : r.trials) {
    trials.push_back(Json{{"noise_seed", t.noise_seed},
                          {"residual", number(t.residual)},
                          {"truth_residual", number(t.truth_residual)},
                          {"grid_error", number(t.grid_error)},
                          {"bound", number(t.bound)},
                          {"ratio", number(t.ratio)}});
  }
  Json ideal{{"value", number(r.ideal_error)}};
  if (r.ideal_error_is_estimate) ideal["tag"] = "estimate";
  return Json{{"norming", number(r.norming)},
              {"norming_source", r.norming_source},
              {"h", r.h},
              {"ideal_error", std::move(ideal)},
              {"grid_size", r.grid_size},
              {"seed", r.seed},
              {"trials", std::move(trials)},
              {"summary",
               Json{{"max_ratio", number(r.max_ratio)},
                    {"mean_ratio", number(r.mean_ratio)},
                    {"argmin_holds", r.argmin_holds}}}};
}

}  // namespace birkhoff::io
