#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <horoflow/errors.hpp>
#include <horoflow/minimize.hpp>

using namespace horoflow;

TEST(MinimizeConvex, ShiftedParabola) {
  const ScalarMinimum m = minimize_convex([](double s) { return (s - 7.5) * (s - 7.5) + 1.0; },
                                          [](double s) { return 2.0 * (s - 7.5); });
  // The argmin of a quadratic is only resolvable to about sqrt(machine eps).
  EXPECT_NEAR(m.argmin, 7.5, 1e-7);
  EXPECT_NEAR(m.value, 1.0, 1e-15);
}

TEST(MinimizeConvex, NonCoerciveFails) {
  EXPECT_THROW(minimize_convex([](double s) { return s; }, [](double) { return 1.0; }), Error);
}

TEST(MinimizeQuartic, AgreesWithDenseGrid) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ua(0.0, 2.0), ub(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const double a = ua(rng), b = ub(rng), c = ub(rng);
    auto f = [&](double s) { return (s * s + a) * (s * s + a) + (b * s + c) * (b * s + c); };
    double best = f(-5.0);
    for (int i = 0; i <= 200000; ++i) best = std::min(best, f(-5.0 + i * 5e-5));
    const ScalarMinimum m = minimize_quartic(a, b, c);
    EXPECT_LE(m.value, best + 1e-12);
    EXPECT_NEAR(m.value, best, 1e-8);
    EXPECT_NEAR(m.value, f(m.argmin), 1e-14);
  }
}

TEST(MinimizeQuartic, DegenerateCases) {
  EXPECT_NEAR(minimize_quartic(0.0, 0.0, 3.0).value, 9.0, 1e-15);
  EXPECT_NEAR(minimize_quartic(0.0, 0.0, 3.0).argmin, 0.0, 1e-3);
  EXPECT_NEAR(minimize_quartic(1.0, 0.0, 0.0).value, 1.0, 1e-15);
}
