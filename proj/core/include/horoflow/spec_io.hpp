#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "horoflow/fields.hpp"
#include "horoflow/flow.hpp"
#include "horoflow/gauge.hpp"
#include "horoflow/ode.hpp"
#include "horoflow/sampling.hpp"
#include "horoflow/uniqueness.hpp"

namespace horoflow {

using Json = nlohmann::json;

// Parses JSON text; syntax errors become ConfigError carrying line and column.
Json parse_json(std::string_view text, const std::string& source = "<input>");
Json load_json_file(const std::filesystem::path& path);

// {"layers": [n1, ...], "brackets": [{"i": 1, "j": 2, "coeffs": [{"k": 3, "c": 2}]}]}
// with 1-based indices, or {"preset": "heisenberg"}. Validation failures
// propagate as AlgebraError naming the violated identity.
AlgebraPtr algebra_from_json(const Json& j);

// Coefficient forms, all functions of (t, x):
//   {"constant": c}
//   {"monomial": {"coeff": c, "powers": [k1, ..., kq]}}
//   {"sin": {"coord": i, "scale": w}}, {"cos": {...}}       (1-based coord)
//   {"distance": {"center": [..]}}                           d(center, x)
//   {"moving_axis_distance": {"speed": v}}                   d((v t, 0, ..., 0), x)
//   {"axis_infimum": {}}                                     inf_s d((s,0,0), x), Heisenberg only
//   {"sum": [..]}, {"product": [..]}
struct ParsedCoefficient {
  Coefficient fn;
  bool time_dependent = false;
};
ParsedCoefficient coefficient_from_json(const Json& j, const HomogeneousDistance& dst);

// {"coefficients": [c1, ..., cm]} with one entry per horizontal generator used.
VectorField field_from_json(const Json& j, const FramePtr& frame, const HomogeneousDistance& dst);

GroupElement point_from_json(const Json& j, int dimension, const std::string& what);
Box box_from_json(const Json& j, int dimension);
IntegratorConfig integrator_from_json(const Json& j);

struct ProblemSpec {
  AlgebraPtr algebra;
  FramePtr frame;
  HomogeneousDistance distance;
  CauchyProblem problem;
  IntegratorConfig integrator;
};

// {"group": .., "field": .., "x0": [..], "horizon": T, "domain": {"lower", "upper"}?, "integrator": {..}?}
ProblemSpec problem_from_json(const Json& j, std::uint64_t seed = 1);

struct EquilibriumSpec {
  AlgebraPtr algebra;
  FramePtr frame;
  HomogeneousDistance distance;
  VectorField field;
  GroupElement xbar;
  Box box;
  double horizon = 1.0;
  int samples = 2000;
  double threshold = 1e6;
  std::vector<GroupElement> initial_points;
  IntegratorConfig integrator;
};

// {"group", "field", "xbar", "box", "horizon", "samples", "threshold", "initial_points", "integrator"}
EquilibriumSpec equilibrium_from_json(const Json& j, std::uint64_t seed = 1);

struct InvolutiveSpec {
  AlgebraPtr algebra;
  FramePtr frame;
  HomogeneousDistance distance;
  std::vector<Vector> weights;
  std::vector<Coefficient> coefficients;
  bool time_dependent = false;
  GroupElement x0;
  double horizon = 1.0;
  IntegratorConfig integrator;
  double confinement_tol = 1e-8;
  double agreement_tol = 0.0;  // defaults to 10 abs_tol
};

// {"group", "generators": [[w..], ..] or "generator_indices": [1, ..],
//  "coefficients": [one per generator], "x0", "horizon", "integrator",
//  "confinement_tol", "agreement_tol"}
InvolutiveSpec involutive_from_json(const Json& j, std::uint64_t seed = 1);

}  // namespace horoflow
