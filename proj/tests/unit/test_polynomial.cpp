#include <gtest/gtest.h>

#include <horoflow/polynomial.hpp>

using horoflow::Polynomial;

namespace {

Polynomial x(int i) { return Polynomial::variable(3, i); }

}  // namespace

TEST(Polynomial, ArithmeticAndEvaluation) {
  const Polynomial p = x(0) * x(1) * 2.0 + x(2) - Polynomial::constant(3, 1.5);
  const double pt[] = {2.0, -3.0, 0.5};
  EXPECT_DOUBLE_EQ(p.evaluate(pt), 2.0 * 2.0 * -3.0 + 0.5 - 1.5);
  EXPECT_EQ(p.terms().size(), 3u);
}

TEST(Polynomial, CancellationDropsTerms) {
  const Polynomial p = x(0) * x(1) - x(1) * x(0);
  EXPECT_TRUE(p.is_zero());
}

TEST(Polynomial, Derivative) {
  const Polynomial p = x(0) * x(0) * x(1) * 3.0 + x(2);
  const Polynomial d0 = p.derivative(0);
  EXPECT_EQ(d0, x(0) * x(1) * 6.0);
  EXPECT_EQ(p.derivative(2), Polynomial::constant(3, 1.0));
  EXPECT_TRUE(Polynomial::constant(3, 4.0).derivative(1).is_zero());
}

TEST(Polynomial, SubstituteAndTruncate) {
  const Polynomial p = x(0) * x(2) + x(1);
  const Polynomial s = p.substitute(2, 2.0);
  EXPECT_EQ(s, x(0) * 2.0 + x(1));
  const Polynomial t = s.truncate_vars(2);
  EXPECT_EQ(t.num_vars(), 2);
  const double pt[] = {1.0, 4.0};
  EXPECT_DOUBLE_EQ(t.evaluate(pt), 6.0);
}

TEST(Polynomial, WeightedDegree) {
  const int w[] = {1, 1, 2};
  EXPECT_EQ((x(0) * x(1) + x(2)).weighted_degree(w), 2);
  EXPECT_EQ((x(0) + x(2)).weighted_degree(w), -2);
  EXPECT_EQ(Polynomial(3).weighted_degree(w), -1);
  EXPECT_EQ(Polynomial::constant(3, 1.0).weighted_degree(w), 0);
}

TEST(Polynomial, ToStringMentionsVariables) {
  const std::string s = (x(0) * x(1) * -1.0).to_string();
  EXPECT_NE(s.find("x1"), std::string::npos);
  EXPECT_NE(s.find("x2"), std::string::npos);
}
