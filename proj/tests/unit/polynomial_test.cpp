#include "generators.hpp"

#include "gluedforms/parser.hpp"
#include "gluedforms/polynomial.hpp"

#include <gtest/gtest.h>

using namespace gluedforms;

TEST(Polynomial, CanonicalFormIgnoresOrderAndGrouping) {
  auto a = to_exact_polynomial(parse_expr("(x0 + x1)^2", 2));
  auto b = to_exact_polynomial(parse_expr("x1^2 + 2*x0*x1 + x0*x0", 2));
  ASSERT_TRUE(a && b);
  EXPECT_EQ(*a, *b);
  EXPECT_EQ(a->total_degree(), 2);
}

TEST(Polynomial, RejectsNonPolynomials) {
  EXPECT_FALSE(to_exact_polynomial(parse_expr("sin(x0)", 1)));
  EXPECT_FALSE(to_exact_polynomial(parse_expr("1/x0", 1)));
  EXPECT_FALSE(to_exact_polynomial(parse_expr("x0^-1", 1)));
  EXPECT_FALSE(to_exact_polynomial(parse_expr("0.5*x0", 1)));
  EXPECT_TRUE(to_exact_polynomial(parse_expr("x0/2", 1)));
  EXPECT_TRUE(to_exact_polynomial(parse_expr("x0*2^-1", 1)));
}

TEST(Polynomial, FloatPolynomial) {
  auto p = to_float_polynomial(parse_expr("0.5*x0 + x0/2", 1));
  ASSERT_TRUE(p);
  Monomial m{1};
  EXPECT_DOUBLE_EQ(p->coefficient(m), 1.0);
}

TEST(Polynomial, CancellationGivesZero) {
  auto p = to_exact_polynomial(parse_expr("x0*x1 - x1*x0", 2));
  ASSERT_TRUE(p);
  EXPECT_TRUE(p->is_zero());
  EXPECT_TRUE(canonical(parse_expr("x0 - x0", 1)).is_zero());
}

TEST(Polynomial, ToExprIsReadable) {
  EXPECT_EQ(canonical(parse_expr("x0^2 - x0", 1)).str(), "x0^2 - x0");
  EXPECT_EQ(canonical(parse_expr("x1 + x0", 2)).str(), "x0 + x1");
  EXPECT_EQ(canonical(parse_expr("3 - 2*x0", 1)).str(), "(-2)*x0 + 3");
}

TEST(PolynomialProperty, MatchesTestSideArithmetic) {
  gftest::Gen gen(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = gen.poly(3, 3, 5);
    const auto b = gen.poly(3, 3, 5);
    const auto prod = to_exact_polynomial(Expr::mul(a.expr(), b.expr()));
    const auto sum = to_exact_polynomial(Expr::add(a.expr(), b.expr()));
    ASSERT_TRUE(prod && sum);
    const auto pt = gen.point(3);
    EXPECT_EQ(prod->evaluate(pt), (a * b).at(pt));
    EXPECT_EQ(sum->evaluate(pt), (a + b).at(pt));
    EXPECT_EQ(prod->terms().size(), (a * b).terms.size());
  }
}

TEST(PolynomialProperty, CanonicalIsIdempotent) {
  gftest::Gen gen(22);
  for (int trial = 0; trial < 30; ++trial) {
    const Expr e = Expr::mul(gen.poly(2, 3).expr(), Expr::add(gen.poly(2, 2).expr(), Expr::variable(0)));
    const Expr c = canonical(e);
    EXPECT_EQ(canonical(c), c);
  }
}
