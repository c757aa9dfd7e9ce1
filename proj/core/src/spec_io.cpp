#include "horoflow/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "horoflow/counterexample.hpp"
#include "horoflow/errors.hpp"

namespace horoflow {
namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

template <class T>
T value_or(const Json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return get_as<T>(j.at(key), where + "." + key);
}

int coord_index(const Json& j, int q, const std::string& what) {
  const int i = get_as<int>(j, what);
  if (i < 1 || i > q) throw ConfigError(what + ": coordinate index out of range (1-based)");
  return i - 1;
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": malformed JSON";
    throw ConfigError(os.str());
  }
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

AlgebraPtr algebra_from_json(const Json& j) {
  if (j.is_string() || (j.is_object() && j.contains("preset"))) {
    const auto name = get_as<std::string>(j.is_string() ? j : j.at("preset"), "group.preset");
    if (name == "heisenberg") return heisenberg_ptr();
    throw ConfigError("unknown group preset '" + name + "'");
  }
  const auto layers = get_as<std::vector<int>>(require(j, "layers", "group"), "group.layers");
  int q = 0;
  for (int n : layers) q += n;
  std::vector<StructureConstant> constants;
  if (j.contains("brackets")) {
    for (const auto& b : j.at("brackets")) {
      const int i = coord_index(require(b, "i", "group.brackets"), q, "group.brackets.i");
      const int jj = coord_index(require(b, "j", "group.brackets"), q, "group.brackets.j");
      for (const auto& c : require(b, "coeffs", "group.brackets")) {
        const int k = coord_index(require(c, "k", "group.brackets.coeffs"), q, "group.brackets.coeffs.k");
        constants.push_back({i, jj, k, get_as<double>(require(c, "c", "group.brackets.coeffs"), "c")});
      }
    }
  }
  return std::make_shared<const GradedAlgebra>(layers, constants, value_or<std::string>(j, "name", "custom", "group"));
}

ParsedCoefficient coefficient_from_json(const Json& j, const HomogeneousDistance& dst) {
  const int q = dst.algebra().dimension();
  if (j.is_number()) {
    const double c = j.get<double>();
    return {[c](double, std::span<const double>) { return c; }, false};
  }
  if (!j.is_object() || j.size() != 1) throw ConfigError("coefficient: expected an object with exactly one form");
  const auto& [key, body] = *j.items().begin();

  if (key == "constant") {
    const double c = get_as<double>(body, "constant");
    return {[c](double, std::span<const double>) { return c; }, false};
  }
  if (key == "monomial") {
    const double c = value_or<double>(body, "coeff", 1.0, "monomial");
    const auto powers = get_as<std::vector<int>>(require(body, "powers", "monomial"), "monomial.powers");
    if (static_cast<int>(powers.size()) != q) throw ConfigError("monomial: one power per coordinate required");
    return {[c, powers](double, std::span<const double> x) {
              double v = c;
              for (std::size_t i = 0; i < powers.size(); ++i) v *= std::pow(x[i], powers[i]);
              return v;
            },
            false};
  }
  if (key == "sin" || key == "cos") {
    const int i = coord_index(require(body, "coord", key), q, key + ".coord");
    const double w = value_or<double>(body, "scale", 1.0, key);
    if (key == "sin") return {[i, w](double, std::span<const double> x) { return std::sin(w * x[i]); }, false};
    return {[i, w](double, std::span<const double> x) { return std::cos(w * x[i]); }, false};
  }
  if (key == "distance") {
    const GroupElement center = body.contains("center") ? point_from_json(body.at("center"), q, "distance.center")
                                                       : GroupElement::zero(q);
    return {[dst, center](double, std::span<const double> x) {
              return dst(center, GroupElement(Vector(x.begin(), x.end())));
            },
            false};
  }
  if (key == "moving_axis_distance") {
    const double v = value_or<double>(body, "speed", 1.0, key);
    return {[dst, v, q](double t, std::span<const double> x) {
              GroupElement c = GroupElement::zero(q);
              c[0] = v * t;
              return dst(c, GroupElement(Vector(x.begin(), x.end())));
            },
            true};
  }
  if (key == "axis_infimum") {
    if (!dst.algebra().is_heisenberg() || dst.gauge().name() != "koranyi") {
      throw ConfigError("axis_infimum is available on the Heisenberg group with the Korányi distance only");
    }
    return {[](double, std::span<const double> x) { return a_autonomous(x); }, false};
  }
  if (key == "sum" || key == "product") {
    if (!body.is_array() || body.empty()) throw ConfigError(key + ": expected a non-empty array");
    std::vector<Coefficient> parts;
    bool td = false;
    for (const auto& b : body) {
      auto p = coefficient_from_json(b, dst);
      parts.push_back(std::move(p.fn));
      td = td || p.time_dependent;
    }
    const bool is_sum = key == "sum";
    return {[parts, is_sum](double t, std::span<const double> x) {
              double acc = is_sum ? 0.0 : 1.0;
              for (const auto& f : parts) acc = is_sum ? acc + f(t, x) : acc * f(t, x);
              return acc;
            },
            td};
  }
  throw ConfigError("coefficient: unknown form '" + key + "'");
}

VectorField field_from_json(const Json& j, const FramePtr& frame, const HomogeneousDistance& dst) {
  const auto& arr = require(j, "coefficients", "field");
  if (!arr.is_array() || arr.empty()) throw ConfigError("field.coefficients must be a non-empty array");
  if (static_cast<int>(arr.size()) > frame->algebra().horizontal_dimension()) {
    throw ConfigError("field has more coefficients than horizontal generators");
  }
  std::vector<Coefficient> coeffs;
  bool td = false;
  for (const auto& c : arr) {
    auto p = coefficient_from_json(c, dst);
    coeffs.push_back(std::move(p.fn));
    td = td || p.time_dependent;
  }
  return make_horizontal_field(frame, std::move(coeffs), td);
}

GroupElement point_from_json(const Json& j, int dimension, const std::string& what) {
  auto v = get_as<std::vector<double>>(j, what);
  if (static_cast<int>(v.size()) != dimension) {
    throw ConfigError(what + ": expected " + std::to_string(dimension) + " coordinates");
  }
  return GroupElement(std::move(v));
}

Box box_from_json(const Json& j, int dimension) {
  Box b;
  if (j.contains("half_width")) {
    b = Box::cube(dimension, get_as<double>(j.at("half_width"), "box.half_width"));
  } else {
    b.lower = point_from_json(require(j, "lower", "box"), dimension, "box.lower").vector();
    b.upper = point_from_json(require(j, "upper", "box"), dimension, "box.upper").vector();
  }
  try {
    b.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("box: ") + e.what());
  }
  return b;
}

IntegratorConfig integrator_from_json(const Json& j) {
  IntegratorConfig cfg;
  if (j.is_null()) return cfg;
  if (j.contains("method")) cfg.method = method_from_string(get_as<std::string>(j.at("method"), "integrator.method"));
  cfg.abs_tol = value_or(j, "abs_tol", cfg.abs_tol, "integrator");
  cfg.rel_tol = value_or(j, "rel_tol", cfg.rel_tol, "integrator");
  cfg.max_step = value_or(j, "max_step", cfg.max_step, "integrator");
  cfg.min_step = value_or(j, "min_step", cfg.min_step, "integrator");
  cfg.dense_output_grid = value_or(j, "grid", cfg.dense_output_grid, "integrator");
  cfg.max_steps = value_or(j, "max_steps", cfg.max_steps, "integrator");
  cfg.validate();
  return cfg;
}

ProblemSpec problem_from_json(const Json& j, std::uint64_t seed) {
  AlgebraPtr alg = algebra_from_json(require(j, "group", "problem"));
  FramePtr frame = make_frame(alg);
  HomogeneousDistance dst = default_distance(alg, seed);
  VectorField field = field_from_json(require(j, "field", "problem"), frame, dst);
  const int q = alg->dimension();
  Domain domain = Domain::whole_space();
  if (j.contains("domain")) domain = Domain::from_box(box_from_json(j.at("domain"), q));
  CauchyProblem p{std::move(field), point_from_json(require(j, "x0", "problem"), q, "x0"),
                  value_or(j, "horizon", 1.0, "problem"), std::move(domain)};
  IntegratorConfig cfg = integrator_from_json(j.value("integrator", Json()));
  return {alg, frame, dst, std::move(p), cfg};
}

EquilibriumSpec equilibrium_from_json(const Json& j, std::uint64_t seed) {
  AlgebraPtr alg = algebra_from_json(require(j, "group", "equilibrium"));
  FramePtr frame = make_frame(alg);
  HomogeneousDistance dst = default_distance(alg, seed);
  const int q = alg->dimension();
  EquilibriumSpec s{alg,
                    frame,
                    dst,
                    field_from_json(require(j, "field", "equilibrium"), frame, dst),
                    j.contains("xbar") ? point_from_json(j.at("xbar"), q, "xbar") : GroupElement::zero(q),
                    j.contains("box") ? box_from_json(j.at("box"), q) : Box::cube(q, 1.0),
                    value_or(j, "horizon", 1.0, "equilibrium"),
                    value_or(j, "samples", 2000, "equilibrium"),
                    value_or(j, "threshold", 1e6, "equilibrium"),
                    {},
                    integrator_from_json(j.value("integrator", Json()))};
  if (s.samples < 1) throw ConfigError("equilibrium.samples must be >= 1");
  if (j.contains("initial_points")) {
    for (const auto& p : j.at("initial_points")) s.initial_points.push_back(point_from_json(p, q, "initial_points"));
  }
  return s;
}

InvolutiveSpec involutive_from_json(const Json& j, std::uint64_t seed) {
  AlgebraPtr alg = algebra_from_json(require(j, "group", "involutive"));
  FramePtr frame = make_frame(alg);
  HomogeneousDistance dst = default_distance(alg, seed);
  const int q = alg->dimension();
  const int m = alg->horizontal_dimension();
  InvolutiveSpec s{alg, frame, dst, {}, {}, false, GroupElement::zero(q), 1.0, {}, 1e-8, 0.0};
  if (j.contains("generators")) {
    s.weights = get_as<std::vector<Vector>>(j.at("generators"), "generators");
  } else {
    for (const auto& idx : require(j, "generator_indices", "involutive")) {
      Vector w(m, 0.0);
      w[coord_index(idx, m, "generator_indices")] = 1.0;
      s.weights.push_back(std::move(w));
    }
  }
  const auto& coeffs = require(j, "coefficients", "involutive");
  if (!coeffs.is_array() || coeffs.size() != s.weights.size()) {
    throw ConfigError("involutive.coefficients needs one entry per generator");
  }
  for (const auto& c : coeffs) {
    auto p = coefficient_from_json(c, dst);
    s.coefficients.push_back(std::move(p.fn));
    s.time_dependent = s.time_dependent || p.time_dependent;
  }
  s.x0 = j.contains("x0") ? point_from_json(j.at("x0"), q, "x0") : GroupElement::zero(q);
  s.horizon = value_or(j, "horizon", 1.0, "involutive");
  s.integrator = integrator_from_json(j.value("integrator", Json()));
  s.confinement_tol = value_or(j, "confinement_tol", 1e-8, "involutive");
  s.agreement_tol = value_or(j, "agreement_tol", 10.0 * s.integrator.abs_tol, "involutive");
  return s;
}

}  // namespace horoflow
