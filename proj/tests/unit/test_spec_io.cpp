#include <gtest/gtest.h>

#include <cmath>

#include <horoflow/errors.hpp>
#include <horoflow/spec_io.hpp>

using namespace horoflow;

TEST(Json, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_json("{\n  \"a\": 1,\n  \"b\": ]\n}", "cfg.json");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("cfg.json:3:8"), std::string::npos) << e.what();
  }
}

TEST(Json, MissingFile) { EXPECT_THROW(load_json_file("/nonexistent/horoflow.json"), ConfigError); }

TEST(GroupSpec, OneBasedHeisenberg) {
  const Json j = parse_json(R"({"layers": [2, 1], "brackets": [{"i": 1, "j": 2, "coeffs": [{"k": 3, "c": 2}]}]})");
  const AlgebraPtr a = algebra_from_json(j);
  EXPECT_TRUE(a->is_heisenberg());
  EXPECT_DOUBLE_EQ(a->structure_constant(1, 0, 2), -2.0);
  EXPECT_TRUE(algebra_from_json(parse_json(R"({"preset": "heisenberg"})"))->is_heisenberg());
  EXPECT_THROW(algebra_from_json(parse_json(R"({"preset": "engel"})")), ConfigError);
}

TEST(GroupSpec, ViolationsReported) {
  EXPECT_THROW(algebra_from_json(parse_json(R"({"layers": [2, 1], "brackets": [{"i": 1, "j": 2, "coeffs": [{"k": 1, "c": 1}]}]})")),
               AlgebraError);
  EXPECT_THROW(algebra_from_json(parse_json(R"({"layers": [2, 1], "brackets": [{"i": 1, "j": 4, "coeffs": []}]})")),
               ConfigError);
  EXPECT_THROW(algebra_from_json(parse_json(R"({"brackets": []})")), ConfigError);
}

TEST(Coefficients, AllForms) {
  const HomogeneousDistance d = default_distance(heisenberg_ptr());
  const std::vector<double> x{0.5, -1.0, 2.0};
  auto eval = [&](const char* text, double t = 0.0) {
    return coefficient_from_json(parse_json(text), d).fn(t, x);
  };
  EXPECT_DOUBLE_EQ(eval(R"({"constant": 3})"), 3.0);
  EXPECT_DOUBLE_EQ(eval("2.5"), 2.5);
  EXPECT_DOUBLE_EQ(eval(R"({"monomial": {"coeff": 2, "powers": [1, 2, 0]}})"), 2.0 * 0.5 * 1.0);
  EXPECT_DOUBLE_EQ(eval(R"({"sin": {"coord": 1}})"), std::sin(0.5));
  EXPECT_DOUBLE_EQ(eval(R"({"cos": {"coord": 2, "scale": 2}})"), std::cos(-2.0));
  EXPECT_DOUBLE_EQ(eval(R"({"distance": {}})"), koranyi_norm({0.5, -1.0, 2.0}));
  EXPECT_NEAR(eval(R"({"moving_axis_distance": {}})", 0.3), koranyi_norm({0.2, -1.0, 2.3}), 1e-15);
  EXPECT_GT(eval(R"({"axis_infimum": {}})"), 0.0);
  EXPECT_DOUBLE_EQ(eval(R"({"sum": [1, {"constant": 2}]})"), 3.0);
  EXPECT_DOUBLE_EQ(eval(R"({"product": [3, {"constant": 2}]})"), 6.0);
  EXPECT_TRUE(coefficient_from_json(parse_json(R"({"sum": [1, {"moving_axis_distance": {}}]})"), d).time_dependent);
  EXPECT_THROW(eval(R"({"tan": {}})"), ConfigError);
  EXPECT_THROW(eval(R"({"sin": {"coord": 4}})"), ConfigError);
  EXPECT_THROW(eval(R"({"monomial": {"powers": [1]}})"), ConfigError);
}

TEST(Problem, LoadsAndValidates) {
  const Json j = parse_json(R"({
    "group": {"preset": "heisenberg"},
    "field": {"coefficients": [1, 1]},
    "x0": [0, 0, 0],
    "horizon": 2,
    "domain": {"half_width": 5},
    "integrator": {"method": "rk4", "max_step": 0.01, "grid": 201}
  })");
  const ProblemSpec s = problem_from_json(j);
  EXPECT_EQ(s.problem.horizon, 2.0);
  EXPECT_EQ(s.integrator.method, Method::rk4);
  EXPECT_EQ(s.integrator.dense_output_grid, 201);
  EXPECT_NO_THROW(s.problem.validate());
  const Trajectory tr = integrate(s.problem, s.integrator);
  EXPECT_NEAR(tr.states.back()[0], 2.0, 1e-12);
}

TEST(Problem, BadShapesRejected) {
  EXPECT_THROW(problem_from_json(parse_json(R"({"group": "heisenberg", "field": {"coefficients": [1]}, "x0": [0, 0]})")),
               ConfigError);
  EXPECT_THROW(problem_from_json(parse_json(R"({"group": "heisenberg", "field": {"coefficients": [1, 1, 1]}, "x0": [0, 0, 0]})")),
               ConfigError);
  EXPECT_THROW(integrator_from_json(parse_json(R"({"abs_tol": -1})")), ConfigError);
  EXPECT_THROW(integrator_from_json(parse_json(R"({"method": "euler"})")), ConfigError);
  EXPECT_THROW(box_from_json(parse_json(R"({"lower": [1, 1, 1], "upper": [0, 0, 0]})"), 3), ConfigError);
}

TEST(Equilibrium, Defaults) {
  const EquilibriumSpec s = equilibrium_from_json(parse_json(R"({"group": "heisenberg", "field": {"coefficients": [{"distance": {}}]}})"));
  EXPECT_EQ(s.xbar, GroupElement::zero(3));
  EXPECT_EQ(s.samples, 2000);
  EXPECT_TRUE(s.initial_points.empty());
}

TEST(Involutive, GeneratorForms) {
  const InvolutiveSpec a = involutive_from_json(parse_json(
      R"({"group": "heisenberg", "generator_indices": [1], "coefficients": [{"sin": {"coord": 1}}], "x0": [0, 1, 0]})"));
  EXPECT_EQ(a.weights, (std::vector<Vector>{{1.0, 0.0}}));
  EXPECT_DOUBLE_EQ(a.agreement_tol, 10.0 * a.integrator.abs_tol);
  const InvolutiveSpec b = involutive_from_json(
      parse_json(R"({"group": "heisenberg", "generators": [[0.6, 0.8]], "coefficients": [1]})"));
  EXPECT_EQ(b.weights.size(), 1u);
  EXPECT_THROW(involutive_from_json(parse_json(R"({"group": "heisenberg", "generator_indices": [1], "coefficients": []})")),
               ConfigError);
}
