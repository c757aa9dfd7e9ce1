#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <horoflow/counterexample.hpp>
#include <horoflow/errors.hpp>
#include <horoflow/gauge.hpp>

using namespace horoflow;

namespace {

// 6 min over s of ((s^2 + (t u/18)^2)^2 + (v/36 + s t u/18)^2)^{1/4} on a grid.
double f_grid(double t, double u, double v, int n = 1000001, double half = 10.0) {
  const double b = t * u / 18.0;
  double best = std::numeric_limits<double>::infinity();
  const double step = 2.0 * half / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double s = -half + i * step;
    const double p = s * s + b * b, r = v / 36.0 + s * b;
    best = std::min(best, p * p + r * r);
  }
  return 6.0 * std::pow(best, 0.25);
}

}  // namespace

TEST(Coefficients, TimeDependentIsKoranyiDistanceToMovingPoint) {
  const AlgebraPtr h = heisenberg_ptr();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double t = std::abs(u(rng));
    const GroupElement x{u(rng), u(rng), u(rng)};
    const double expected = koranyi_norm(bch_multiply(*h, inverse(GroupElement{t, 0.0, 0.0}), x));
    EXPECT_NEAR(a_time_dependent(t, x.coords()), expected, 1e-12);
  }
}

TEST(Coefficients, AxisDistanceMatchesBruteForce) {
  const AlgebraPtr h = heisenberg_ptr();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    const GroupElement x{u(rng), u(rng), u(rng)};
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 400000; ++i) {
      const double s = -4.0 + i * 2e-5;
      best = std::min(best, koranyi_norm(bch_multiply(*h, inverse(GroupElement{s, 0.0, 0.0}), x)));
    }
    const AxisDistance d = axis_distance(x.coords());
    EXPECT_NEAR(d.value, best, 1e-8);
    EXPECT_NEAR(koranyi_norm(bch_multiply(*h, inverse(GroupElement{d.argmin, 0.0, 0.0}), x)), d.value, 1e-12);
  }
}

TEST(Coefficients, AutonomousVanishesOnAxis) {
  const double x[] = {3.0, 0.0, 0.0};
  EXPECT_NEAR(a_autonomous(x), 0.0, 1e-12);
}

TEST(AutonomousF, ClosedFormAtZeroTime) {
  for (double u = 0.0; u <= 3.0; u += 0.25) {
    for (double v = 0.0; v <= 3.0; v += 0.25) EXPECT_NEAR(autonomous_f(0.0, u, v), std::sqrt(v), 1e-10);
  }
  EXPECT_THROW(autonomous_f(-0.1, 1.0, 1.0), DomainError);
}

TEST(AutonomousF, BoundedByTimeDependentG) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0), u03(0.0, 3.0);
  for (int k = 0; k < 2000; ++k) {
    const double t = u01(rng), u = u03(rng), v = u03(rng);
    EXPECT_LE(autonomous_f(t, u, v), time_dependent_g(t, u, v) + 1e-14);
  }
}

TEST(AutonomousF, AgreesWithGridOracle) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u01(0.0, 1.0), u03(0.0, 3.0);
  for (int k = 0; k < 10; ++k) {
    const double t = u01(rng), u = u03(rng), v = u03(rng);
    EXPECT_NEAR(autonomous_f(t, u, v), f_grid(t, u, v), 1e-8) << t << " " << u << " " << v;
  }
}

TEST(AutonomousF, ContinuousAtZeroTime) {
  double prev = std::abs(autonomous_f(0.1, 2.0, 1.5) - std::sqrt(1.5));
  for (double t : {0.05, 0.025, 0.0125}) {
    const double gap = std::abs(autonomous_f(t, 2.0, 1.5) - std::sqrt(1.5));
    EXPECT_LE(gap, prev + 1e-15);
    prev = gap;
  }
  EXPECT_LE(prev, 0.0125);
}

TEST(SingularSystem, StationaryAtStart) {
  for (Variant var : {Variant::time_dependent, Variant::autonomous}) {
    for (double eps : {0.1, 1e-3, 1e-6}) {
      const auto d = uv_rhs({var, eps}, 0.0, 1.0, 1.0);
      EXPECT_EQ(d[0], 0.0);
      EXPECT_EQ(d[1], 0.0);
    }
  }
  EXPECT_THROW(uv_rhs({Variant::time_dependent, 0.0}, 0.0, 1.0, 1.0), DomainError);
}

TEST(SingularSystem, Lambdas) {
  EXPECT_DOUBLE_EQ(SingularUVSystem::lambda1, 0.5);
  EXPECT_DOUBLE_EQ(SingularUVSystem::lambda2, 0.75);
}

TEST(Comparison, ConstantSolutionPassesWithExpectedMargin) {
  std::vector<double> t{0.0, 0.1, 0.2}, z(3, 1.5);
  const ComparisonResult r = comparison_monitor(t, z, 0.01, 1.5, 1.0, 1.0, 0.0, ComparisonVariant::general);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.worst_margin, 1.5 * std::expm1(0.01), 1e-15);
  EXPECT_EQ(r.worst_time, 0.0);
}

TEST(Comparison, ViolationFails) {
  std::vector<double> t{0.0, 0.1, 0.2}, z{1.0, 1.0, 5.0};
  const ComparisonResult r = comparison_monitor(t, z, 0.01, 1.5, 1.0, 1.0, 0.0, ComparisonVariant::general);
  EXPECT_FALSE(r.passed);
  EXPECT_LT(r.worst_margin, 0.0);
  EXPECT_DOUBLE_EQ(r.worst_time, 0.2);
}

TEST(Comparison, NegativeVariant) {
  std::vector<double> t{0.0, 0.5}, z{-1.0, -0.6};
  EXPECT_TRUE(comparison_monitor(t, z, 0.0, -1.0, 1.0, 0.0, 1.0, ComparisonVariant::c3_zero_c1_nonpositive).passed);
  EXPECT_THROW(comparison_monitor(t, z, 0.0, 1.0, 1.0, 0.0, 1.0, ComparisonVariant::c3_zero_c1_nonpositive),
               MonitorError);
  EXPECT_THROW(comparison_monitor(t, z, 0.0, 1.0, 0.0, 0.0, 1.0, ComparisonVariant::general), MonitorError);
}

TEST(Comparison, ExpBoundConstantIsTight) {
  const double tau = 0.3, eps = 0.01;
  const double c = exp_bound_constant(tau, eps);
  for (double t = 0.0; t <= tau; t += 0.01) EXPECT_LE(1.5 * std::exp(t + eps), 1.5 + c * (t + eps) + 1e-14);
  EXPECT_NEAR(1.5 * std::exp(tau + eps), 1.5 + c * (tau + eps), 1e-14);
}

TEST(Regularized, MonitorsHoldOnSingleRung) {
  const IntegratorConfig cfg = uv_integrator_config(0.3, 512);
  for (Variant var : {Variant::time_dependent, Variant::autonomous}) {
    const RegularizedSolve r = solve_regularized({var, 1e-3}, 0.3, cfg);
    EXPECT_TRUE(r.monitor.passed) << (r.monitor.violations.empty() ? "" : r.monitor.violations.front());
    EXPECT_GE(r.monitor.min_u, -1e-9);
    EXPECT_GE(r.monitor.min_v, -1e-9);
    EXPECT_TRUE(r.monitor.sum_bound.passed);
    EXPECT_EQ(r.trajectory.times.size(), 512u);
    EXPECT_EQ(r.monitor.c5.has_value(), var == Variant::autonomous);
  }
}

TEST(Regularized, RejectsBadParameters) {
  const IntegratorConfig cfg = uv_integrator_config(0.3, 64);
  EXPECT_THROW(solve_regularized({Variant::time_dependent, 0.0}, 0.3, cfg), ConfigError);
  EXPECT_THROW(solve_regularized({Variant::time_dependent, 0.1}, 1.5, cfg), ConfigError);
}

TEST(Ladder, SpecValidation) {
  LadderSpec s;
  EXPECT_NO_THROW(s.validate());
  s.eps0 = 0.5;
  EXPECT_THROW(s.validate(), ConfigError);
  s = {};
  s.ratio = 1.0;
  EXPECT_THROW(s.validate(), ConfigError);
  s = {};
  s.rungs = 3;
  EXPECT_THROW(s.validate(), ConfigError);
  s = {};
  s.tau = 0.0;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Ladder, TooFewRungsDoesNotDeclareLimit) {
  LadderSpec s;
  s.rungs = 4;
  s.grid = 256;
  s.tol = 1e-9;
  const EpsilonLadder l = epsilon_limit(s, uv_integrator_config(s.tau, s.grid));
  EXPECT_FALSE(l.converged);
  EXPECT_FALSE(l.limit.has_value());
  EXPECT_EQ(l.sup_differences.size(), 3u);
  const NonuniquenessReport r = nonuniqueness_report(s, uv_integrator_config(s.tau, s.grid));
  EXPECT_FALSE(r.verdict);
  EXPECT_FALSE(r.failures.empty());
}

TEST(Ladder, GridMismatchRejected) {
  LadderSpec s;
  EXPECT_THROW(epsilon_limit(s, uv_integrator_config(s.tau, 100)), ConfigError);
}

TEST(Ladder, ParallelMatchesSerial) {
  LadderSpec s;
  s.rungs = 6;
  s.grid = 256;
  s.tol = 1.0;
  const IntegratorConfig cfg = uv_integrator_config(s.tau, s.grid);
  const EpsilonLadder a = epsilon_limit(s, cfg, 1), b = epsilon_limit(s, cfg, 3);
  EXPECT_EQ(a.sup_differences, b.sup_differences);
  ASSERT_TRUE(a.limit && b.limit);
  EXPECT_EQ(a.limit->u, b.limit->u);
}

TEST(Reconstruction, FirstCoordinateIsTime) {
  UVTrajectory uv;
  for (int k = 0; k < 10; ++k) {
    uv.times.push_back(0.1 * k);
    uv.u.push_back(1.0);
    uv.v.push_back(1.0);
  }
  const Trajectory g = reconstruct_gamma(uv);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double t = uv.times[k];
    EXPECT_EQ(g.states[k][0], t);
    EXPECT_DOUBLE_EQ(g.states[k][1], t * t * t / 18.0);
    EXPECT_DOUBLE_EQ(g.states[k][2], t * t * t * t / 36.0);
  }
  const Trajectory triv = trivial_solution(uv.times);
  EXPECT_EQ(triv.states[5], (GroupElement{0.5, 0.0, 0.0}));
}

TEST(Field, CounterexampleFieldSolvedByBothCurves) {
  const VectorField b = counterexample_field(Variant::time_dependent);
  EXPECT_TRUE(b.time_dependent());
  EXPECT_FALSE(counterexample_field(Variant::autonomous).time_dependent());
  // On the trivial curve the second coefficient vanishes.
  const double x[] = {0.2, 0.0, 0.0};
  EXPECT_EQ(b.coefficient(1, 0.2, x), 0.0);
  EXPECT_EQ(b.coefficient(0, 0.2, x), 1.0);
}
