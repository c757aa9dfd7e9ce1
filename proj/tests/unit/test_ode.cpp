#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <horoflow/errors.hpp>
#include <horoflow/ode.hpp>

using namespace horoflow;

namespace {

OdeSystem scalar(std::function<double(double, double)> f) {
  OdeSystem s;
  s.dim = 1;
  s.rhs = [f](double t, std::span<const double> y, std::span<double> dy) { dy[0] = f(t, y[0]); };
  return s;
}

double max_error(const OdeSolution& sol, const std::function<double(double)>& exact) {
  double e = 0.0;
  for (std::size_t k = 0; k < sol.times.size(); ++k) e = std::max(e, std::abs(sol.states[k][0] - exact(sol.times[k])));
  return e;
}

}  // namespace

TEST(Dopri5, ExponentialGrowthWithDenseOutput) {
  IntegratorConfig cfg;
  cfg.dense_output_grid = 101;
  const OdeSolution sol = solve_ode(scalar([](double, double y) { return y; }), {1.0}, 1.0, cfg);
  ASSERT_EQ(sol.times.size(), 101u);
  EXPECT_DOUBLE_EQ(sol.times.back(), 1.0);
  EXPECT_LE(max_error(sol, [](double t) { return std::exp(t); }), 1e-8);
  EXPECT_FALSE(sol.exit_time.has_value());
  EXPECT_GT(sol.stats.accepted, 0);
}

TEST(Dopri5, TighterToleranceReducesError) {
  auto run = [](double tol) {
    IntegratorConfig cfg;
    cfg.abs_tol = cfg.rel_tol = tol;
    cfg.max_step = 1.0;
    const OdeSolution sol = solve_ode(scalar([](double t, double y) { return -2.0 * t * y; }), {1.0}, 2.0, cfg);
    return max_error(sol, [](double t) { return std::exp(-t * t); });
  };
  EXPECT_LT(run(1e-10), run(1e-6));
  EXPECT_LE(run(1e-10), 1e-8);
}

TEST(Rk4, FourthOrderConvergence) {
  auto err = [](double h) {
    IntegratorConfig cfg;
    cfg.method = Method::rk4;
    cfg.max_step = h;
    cfg.dense_output_grid = 2;
    const OdeSolution sol = solve_ode(scalar([](double t, double y) { return -2.0 * t * y; }), {1.0}, 1.0, cfg);
    return std::abs(sol.states.back()[0] - std::exp(-1.0));
  };
  double prev = err(0.1);
  for (double h : {0.05, 0.025, 0.0125}) {
    const double e = err(h);
    EXPECT_GT(prev / e, 12.0);
    prev = e;
  }
}

TEST(Solver, LocatesDomainExit) {
  OdeSystem s = scalar([](double, double) { return 1.0; });
  s.inside = [](std::span<const double> y) { return y[0] < 2.0; };
  IntegratorConfig cfg;
  cfg.dense_output_grid = 51;
  const OdeSolution sol = solve_ode(s, {0.0}, 5.0, cfg);
  ASSERT_TRUE(sol.exit_time.has_value());
  EXPECT_NEAR(*sol.exit_time, 2.0, 1e-9);
  EXPECT_NEAR(sol.exit_state[0], 2.0, 1e-9);
  EXPECT_LE(sol.times.back(), 2.0);
  for (const auto& st : sol.states) EXPECT_LT(st[0], 2.0);
}

TEST(Solver, InitialPointOutsideDomain) {
  OdeSystem s = scalar([](double, double) { return 1.0; });
  s.inside = [](std::span<const double> y) { return y[0] < 0.0; };
  EXPECT_THROW(solve_ode(s, {1.0}, 1.0, {}), DomainError);
}

TEST(Solver, BlowUpRaisesIntegrationError) {
  EXPECT_THROW(solve_ode(scalar([](double, double y) { return y * y; }), {1.0}, 2.0, {}), IntegrationError);
}

TEST(Solver, NonFiniteRightHandSide) {
  EXPECT_THROW(solve_ode(scalar([](double t, double) { return t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }),
                         {0.0}, 1.0, {}),
               IntegrationError);
}

TEST(Config, Validation) {
  IntegratorConfig cfg;
  cfg.abs_tol = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.min_step = 1.0;
  cfg.max_step = 0.1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.dense_output_grid = 1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(solve_ode(scalar([](double, double) { return 0.0; }), {0.0}, -1.0, {}), ConfigError);
  EXPECT_THROW(solve_ode(scalar([](double, double) { return 0.0; }), {0.0, 1.0}, 1.0, {}), DimensionError);
}

TEST(Config, MethodNames) {
  EXPECT_EQ(method_from_string("rk4"), Method::rk4);
  EXPECT_EQ(method_from_string("adaptive"), Method::dopri5);
  EXPECT_EQ(to_string(Method::dopri5), "dopri5");
  EXPECT_THROW(method_from_string("euler"), ConfigError);
}
