#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <horoflow/errors.hpp>
#include <horoflow/fields.hpp>
#include <horoflow/gauge.hpp>

using namespace horoflow;

namespace {

Polynomial var(int i) { return Polynomial::variable(3, i); }
Polynomial cst(double c) { return Polynomial::constant(3, c); }

GradedAlgebra engel() { return GradedAlgebra({2, 1, 1}, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}, "engel"); }

}  // namespace

TEST(ComputeP, HeisenbergFieldsExact) {
  const GradedAlgebra h = heisenberg();
  const LeftInvariantField x1 = compute_p(h, 0), x2 = compute_p(h, 1), x3 = compute_p(h, 2);
  EXPECT_EQ(x1.row(), (std::vector<Polynomial>{cst(1.0), Polynomial(3), cst(-1.0) * var(1)}));
  EXPECT_EQ(x2.row(), (std::vector<Polynomial>{Polynomial(3), cst(1.0), var(0)}));
  EXPECT_EQ(x3.row(), (std::vector<Polynomial>{Polynomial(3), Polynomial(3), cst(1.0)}));
  EXPECT_THROW(compute_p(h, 3), DimensionError);
}

TEST(ComputeP, GradedHomogeneity) {
  for (const GradedAlgebra& g : {heisenberg(), engel()}) {
    const auto& deg = g.degrees();
    for (int i = 0; i < g.dimension(); ++i) {
      const LeftInvariantField f = compute_p(g, i);
      for (int j = 0; j < g.dimension(); ++j) {
        const int w = f.p(j).weighted_degree(deg);
        if (f.p(j).is_zero()) continue;
        EXPECT_EQ(w, deg[j] - deg[i]) << g.name() << " p_" << i << "^" << j;
      }
      // p_i^j = delta_ij for d_j <= d_i.
      for (int j = 0; j < g.dimension(); ++j) {
        if (deg[j] > deg[i]) continue;
        if (i == j) EXPECT_EQ(f.p(j), Polynomial::constant(g.dimension(), 1.0));
        else EXPECT_TRUE(f.p(j).is_zero());
      }
    }
  }
}

TEST(ComputeP, LeftInvariantDerivativeOfTranslation) {
  const GradedAlgebra g = engel();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const GroupElement y{u(rng), u(rng), u(rng), u(rng)};
    for (int i = 0; i < 4; ++i) {
      const Vector xi = compute_p(g, i).evaluate(y.coords());
      // d/ds y (s e_i) at s = 0 by a central difference (the product is polynomial in s).
      GroupElement e = GroupElement::zero(4);
      const double s = 1e-4;
      e[i] = s;
      const GroupElement plus = bch_multiply(g, y, e);
      e[i] = -s;
      const GroupElement minus = bch_multiply(g, y, e);
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(xi[j], (plus[j] - minus[j]) / (2 * s), 1e-7);
    }
  }
}

TEST(VectorField, EvaluatesCombination) {
  const FramePtr frame = make_frame(heisenberg_ptr());
  const VectorField b = make_horizontal_field(
      frame, {[](double, std::span<const double>) { return 2.0; }, [](double t, std::span<const double>) { return t; }});
  EXPECT_TRUE(b.is_horizontal());
  const Vector v = b.evaluate(3.0, std::vector<double>{1.0, 4.0, 0.0});
  EXPECT_DOUBLE_EQ(v[0], 2.0);
  EXPECT_DOUBLE_EQ(v[1], 3.0);
  EXPECT_DOUBLE_EQ(v[2], 2.0 * -4.0 + 3.0 * 1.0);
}

TEST(VectorField, RejectsTooManyHorizontalCoefficients) {
  const FramePtr frame = make_frame(heisenberg_ptr());
  Coefficient one = [](double, std::span<const double>) { return 1.0; };
  EXPECT_THROW(make_horizontal_field(frame, {one, one, one}), DimensionError);
}

TEST(VectorField, DomainChecked) {
  const FramePtr frame = make_frame(heisenberg_ptr());
  const VectorField b = make_horizontal_field(frame, {[](double, std::span<const double>) { return 1.0; }});
  const Domain dom = Domain::from_box(Box::cube(3, 1.0));
  EXPECT_NO_THROW(evaluate_field(b, 0.0, {0.5, 0.0, 0.0}, dom));
  EXPECT_THROW(evaluate_field(b, 0.0, {2.0, 0.0, 0.0}, dom), DomainError);
}

TEST(Derivation, RoundTripRecoversCoefficients) {
  const FramePtr frame = make_frame(heisenberg_ptr());
  const VectorField b = make_horizontal_field(
      frame, {[](double, std::span<const double> x) { return std::sin(x[0]) + x[2]; },
              [](double, std::span<const double> x) { return x[0] * x[1] - 0.5; }});
  const Derivation d = derivation_of(b);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const GroupElement xbar{u(rng), u(rng), u(rng)};
    const Vector a = recover_coefficients(d, *frame, xbar);
    EXPECT_NEAR(a[0], std::sin(xbar[0]) + xbar[2], 1e-12);
    EXPECT_NEAR(a[1], xbar[0] * xbar[1] - 0.5, 1e-12);
  }
}

TEST(Derivation, VerticalDerivationIsRejected) {
  const FramePtr frame = make_frame(heisenberg_ptr());
  Derivation vertical{[](const TestFunction& f, std::span<const double> x) { return f.gradient(x)[2]; },
                      [](std::span<const double>) { return 1.0; }};
  EXPECT_THROW(recover_coefficients(vertical, *frame, {0.3, -0.2, 1.0}), MonitorError);
}

TEST(Derivation, ProductRule) {
  const FramePtr frame = make_frame(heisenberg_ptr());
  const VectorField b = make_horizontal_field(
      frame, {[](double, std::span<const double>) { return 1.0; }, [](double, std::span<const double>) { return 2.0; }});
  const TestFunction f = coordinate_function(3, 2), g = coordinate_function(3, 0);
  const std::vector<double> x{0.5, -1.0, 2.0};
  const double lhs = apply_derivation(b, product(f, g), x);
  const double rhs = apply_derivation(b, f, x) * g.value(x) + f.value(x) * apply_derivation(b, g, x);
  EXPECT_NEAR(lhs, rhs, 1e-14);
}

TEST(Lipschitz, HorizontalCoordinateHasConstantAtMostOne) {
  const HomogeneousDistance d = default_distance(heisenberg_ptr());
  const double l = estimate_lipschitz([](double, std::span<const double> x) { return x[0]; }, d, Box::cube(3, 2.0),
                                      400, 1);
  EXPECT_LE(l, 1.0 + 1e-12);
  EXPECT_GT(l, 0.5);
}

TEST(Lipschitz, VerticalCoordinateGrowsWithHorizontalExtent) {
  const HomogeneousDistance d = default_distance(heisenberg_ptr());
  Coefficient x3 = [](double, std::span<const double> x) { return x[2]; };
  const double narrow = estimate_lipschitz(x3, d, Box{{-0.1, -0.1, -1.0}, {0.1, 0.1, 1.0}}, 400, 1);
  const double wide = estimate_lipschitz(x3, d, Box{{-10.0, -10.0, -1.0}, {10.0, 10.0, 1.0}}, 400, 1);
  const double mid = estimate_lipschitz(x3, d, Box{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}}, 400, 1);
  // |x3 - y3| <= d^2 + 2 R d on [-R, R]^2 x [-1, 1]: the estimate grows with R.
  EXPECT_GT(mid, narrow);
  EXPECT_GT(wide, 2.0 * mid);
  EXPECT_LE(narrow, std::sqrt(2.0) + 0.4);
  // A vertical pair alone: |1 - (-1)| / sqrt(2).
  EXPECT_NEAR(2.0 / d({0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}), std::sqrt(2.0), 1e-15);
}

TEST(Lipschitz, DegenerateInputsRejected) {
  const HomogeneousDistance d = default_distance(heisenberg_ptr());
  Coefficient c = [](double, std::span<const double>) { return 1.0; };
  EXPECT_THROW(estimate_lipschitz(c, d, Box{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}, 10, 1), DomainError);
  EXPECT_THROW(estimate_lipschitz(c, d, Box::cube(3, 1.0), 1, 1), Error);
  EXPECT_DOUBLE_EQ(estimate_lipschitz(c, d, Box::cube(3, 1.0), 50, 1), 0.0);
}
