#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <horoflow/errors.hpp>
#include <horoflow/group.hpp>

using namespace horoflow;

namespace {

GroupElement heisenberg_law(const GroupElement& x, const GroupElement& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1] - x[1] * y[0]};
}

// Layers (2,1,1): [e1,e2] = e3, [e1,e3] = e4.
GradedAlgebra engel() { return GradedAlgebra({2, 1, 1}, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}, "engel"); }

Vector engel_bracket(const Vector& x, const Vector& y) {
  const double b12 = x[0] * y[1] - x[1] * y[0];
  const double b13 = x[0] * y[2] - x[2] * y[0];
  return {0.0, 0.0, b12, b13};
}

// Step-3 BCH: x + y + [x,y]/2 + ([x,[x,y]] + [y,[y,x]])/12.
GroupElement engel_law(const GroupElement& x, const GroupElement& y) {
  const Vector xv = x.vector(), yv = y.vector();
  const Vector xy = engel_bracket(xv, yv), yx = engel_bracket(yv, xv);
  const Vector xxy = engel_bracket(xv, xy), yyx = engel_bracket(yv, yx);
  Vector r(4);
  for (int i = 0; i < 4; ++i) r[i] = xv[i] + yv[i] + 0.5 * xy[i] + (xxy[i] + yyx[i]) / 12.0;
  return GroupElement(r);
}

GroupElement random_point(std::mt19937_64& rng, int q, double w = 10.0) {
  std::uniform_real_distribution<double> u(-w, w);
  Vector v(q);
  for (double& c : v) c = u(rng);
  return GroupElement(v);
}

double max_abs_diff(const GroupElement& a, const GroupElement& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Heisenberg, PresetShape) {
  const GradedAlgebra h = heisenberg();
  EXPECT_EQ(h.dimension(), 3);
  EXPECT_EQ(h.step(), 2);
  EXPECT_EQ(h.horizontal_dimension(), 2);
  EXPECT_EQ(h.degrees(), (std::vector<int>{1, 1, 2}));
  EXPECT_DOUBLE_EQ(h.structure_constant(0, 1, 2), 2.0);
  EXPECT_DOUBLE_EQ(h.structure_constant(1, 0, 2), -2.0);
  EXPECT_TRUE(h.is_heisenberg());
  EXPECT_TRUE(h.integer_valued());
}

TEST(Heisenberg, ProductMatchesClosedForm) {
  const GradedAlgebra h = heisenberg();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const GroupElement x = random_point(rng, 3), y = random_point(rng, 3);
    EXPECT_LE(max_abs_diff(bch_multiply(h, x, y), heisenberg_law(x, y)), 1e-12);
  }
}

TEST(Heisenberg, InverseAndIdentity) {
  const GradedAlgebra h = heisenberg();
  const GroupElement x{1.5, -2.0, 3.0};
  EXPECT_EQ(inverse(x), (GroupElement{-1.5, 2.0, -3.0}));
  EXPECT_LE(max_abs_diff(bch_multiply(h, x, inverse(x)), GroupElement::zero(3)), 0.0);
  EXPECT_EQ(bch_multiply(h, x, GroupElement::zero(3)), x);
}

TEST(Heisenberg, CosetOfFirstAxis) {
  const GradedAlgebra h = heisenberg();
  EXPECT_LE(max_abs_diff(bch_multiply(h, {0.0, 1.0, 0.0}, {0.7, 0.0, 0.0}), {0.7, 1.0, -0.7}), 1e-15);
}

TEST(StepThree, ProductMatchesTruncatedSeries) {
  const GradedAlgebra g = engel();
  EXPECT_EQ(g.step(), 3);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const GroupElement x = random_point(rng, 4, 3.0), y = random_point(rng, 4, 3.0);
    const GroupElement a = bch_multiply(g, x, y), b = engel_law(x, y);
    EXPECT_LE(max_abs_diff(a, b), 1e-12 * std::max(1.0, std::abs(b[3])));
  }
}

TEST(StepThree, AssociativeAndDilationCompatible) {
  const GradedAlgebra g = engel();
  std::mt19937_64 rng(6);
  for (int k = 0; k < 200; ++k) {
    const GroupElement x = random_point(rng, 4, 2.0), y = random_point(rng, 4, 2.0), z = random_point(rng, 4, 2.0);
    EXPECT_LE(max_abs_diff(bch_multiply(g, bch_multiply(g, x, y), z), bch_multiply(g, x, bch_multiply(g, y, z))),
              1e-11);
    const double r = 0.37;
    EXPECT_LE(max_abs_diff(dilate(g, r, bch_multiply(g, x, y)), bch_multiply(g, dilate(g, r, x), dilate(g, r, y))),
              1e-12);
  }
}

TEST(StepThree, BracketMatchesStructureConstants) {
  const GradedAlgebra g = engel();
  const Vector x{1.0, 2.0, 3.0, 4.0}, y{-1.0, 0.5, 2.0, 0.0};
  const Vector b = bracket(g, x, y);
  const Vector expected = engel_bracket(x, y);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(b[i], expected[i]);
}

TEST(Dilation, ScalesByDegree) {
  const GradedAlgebra g = engel();
  const GroupElement x{1.0, 1.0, 1.0, 1.0};
  EXPECT_EQ(dilate(g, 2.0, x), (GroupElement{2.0, 2.0, 4.0, 8.0}));
  EXPECT_THROW(dilate(g, 0.0, x), DomainError);
  EXPECT_THROW(dilate(g, -1.0, x), DomainError);
  EXPECT_THROW(Dilation(-2.0), DomainError);
}

TEST(Validation, RejectsBrokenGrading) {
  EXPECT_THROW(GradedAlgebra({2, 1}, {{0, 1, 0, 1.0}}), AlgebraError);
}

TEST(Validation, RejectsInconsistentAntisymmetry) {
  EXPECT_THROW(GradedAlgebra({2, 1}, {{0, 1, 2, 1.0}, {1, 0, 2, 1.0}}), AlgebraError);
}

TEST(Validation, RejectsJacobiFailure) {
  // [e1,e2]=f12, [e2,e3]=f23, [e3,e1]=f31, [e1,f23]=g alone breaks Jacobi.
  const std::vector<StructureConstant> c{{0, 1, 3, 1.0}, {1, 2, 4, 1.0}, {2, 0, 5, 1.0}, {0, 4, 6, 1.0}};
  EXPECT_THROW(GradedAlgebra({3, 3, 1}, c), AlgebraError);
}

TEST(Validation, AcceptsJacobiConsistentStepThree) {
  // Free step-3 relations on two generators satisfy Jacobi.
  EXPECT_NO_THROW(engel());
  const std::vector<StructureConstant> c{{0, 1, 3, 1.0}, {1, 2, 4, 1.0}, {2, 0, 5, 1.0},
                                         {0, 4, 6, 1.0}, {1, 5, 6, 1.0}, {2, 3, 6, -2.0}};
  EXPECT_NO_THROW(GradedAlgebra({3, 3, 1}, c));
}

TEST(Validation, RejectsIndexOutOfRange) {
  EXPECT_THROW(GradedAlgebra({2, 1}, {{0, 1, 5, 1.0}}), Error);
}

TEST(GroupCheck, HeisenbergIdentitiesHold) {
  const GroupCheckReport r = check_group(heisenberg(), 2000, 3);
  EXPECT_LE(r.associativity_max_err, 1e-12);
  EXPECT_LE(r.automorphism_max_err, 1e-12);
  EXPECT_EQ(r.inverse_max_err, 0.0);
  EXPECT_EQ(r.samples, 2000);
}

TEST(SymbolicProduct, AgreesWithNumericProduct) {
  const GradedAlgebra g = engel();
  const GroupElement z{0.3, -1.2, 2.0, 0.7};
  const auto lt = left_translation(g, z);
  const double y[] = {1.1, 0.4, -0.5, 2.0};
  const GroupElement num = bch_multiply(g, z, GroupElement(Vector(y, y + 4)));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(lt[i].evaluate(y), num[i], 1e-13);
}
