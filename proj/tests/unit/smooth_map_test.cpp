#include "generators.hpp"

#include "gluedforms/errors.hpp"
#include "gluedforms/parser.hpp"
#include "gluedforms/smooth_map.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gluedforms;

namespace {

SmoothMap map_of(std::size_t dim, std::vector<std::string> comps) {
  std::vector<Expr> es;
  for (const auto& c : comps) es.push_back(parse_expr(c, dim));
  return SmoothMap(dim, es);
}

ScalarMatrix mat(const std::vector<std::vector<Rational>>& rows) {
  ScalarMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = Scalar(rows[r][c]);
  return m;
}

// Jacobian of a polynomial map computed on the test side.
ScalarMatrix oracle_jacobian(const std::vector<gftest::TestPoly>& comps, const std::vector<Rational>& at) {
  const std::size_t n = at.size();
  ScalarMatrix j(comps.size(), n);
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t v = 0; v < n; ++v) {
      gftest::TestPoly d{n, {}};
      for (const auto& [e, c] : comps[i].terms)
        if (e[v] > 0) {
          auto f = e;
          --f[v];
          d.add(f, c * e[v]);
        }
      j(i, v) = Scalar(d.at(at));
    }
  return j;
}

}  // namespace

TEST(SmoothMap, ComposeExample) {
  auto outer = map_of(2, {"x0 + x1", "x0*x1"});
  auto inner = map_of(1, {"x0", "2*x0"});
  auto c = compose(outer, inner);
  EXPECT_EQ(c.domain_dim(), 1u);
  EXPECT_TRUE(maps_equal(c, map_of(1, {"3*x0", "2*x0^2"})).equal);
  EXPECT_THROW(compose(inner, outer), DimensionError);
}

TEST(SmoothMap, JacobianExamples) {
  Point origin{Scalar(0)};
  EXPECT_EQ(jacobian(map_of(1, {"0", "x0"}), origin), mat({{0}, {1}}));
  Point one{Scalar(1), Scalar(1)};
  EXPECT_EQ(jacobian(map_of(2, {"x0^2 + x1", "x0*x1"}), one), mat({{2, 1}, {1, 1}}));
}

TEST(SmoothMap, JacobianMatchesFiniteDifferences) {
  auto m = map_of(2, {"sin(x0)*x1", "exp(x0 - x1)"});
  const double p[2] = {0.3, -0.7};
  Point at{Scalar::real(p[0]), Scalar::real(p[1])};
  auto j = jacobian(m, at);
  const double h = 1e-6;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t v = 0; v < 2; ++v) {
      std::vector<double> plus(p, p + 2), minus(p, p + 2);
      plus[v] += h;
      minus[v] -= h;
      const double fd = (evaluate_float(m[i], plus) - evaluate_float(m[i], minus)) / (2 * h);
      EXPECT_NEAR(j(i, v).to_double(), fd, 1e-6);
    }
}

TEST(SmoothMap, ConstructionChecks) {
  EXPECT_THROW(map_of(2, {"x2"}), ParseError);
  EXPECT_THROW(SmoothMap(1, {Expr::variable(1)}), DimensionError);
  EXPECT_THROW(SmoothMap(1, {Expr::div(Expr(1), Expr::sub(Expr::variable(0), Expr::variable(0)))}), InvariantViolation);
}

TEST(SmoothMap, AffinityAndHelpers) {
  EXPECT_TRUE(map_of(2, {"2*x0 - x1 + 3", "x1/4"}).is_affine());
  EXPECT_FALSE(map_of(2, {"x0*x1"}).is_affine());
  EXPECT_FALSE(map_of(1, {"0.5*x0"}).is_affine());
  Point p{Scalar(2), Scalar(-3)};
  EXPECT_EQ(SmoothMap::identity(2)(p), p);
  EXPECT_EQ(SmoothMap::constant(2, {Scalar(7)})(p), (Point{Scalar(7)}));
}

TEST(SmoothMapProperty, ChainRule) {
  gftest::Gen gen(51);
  for (int trial = 0; trial < 50; ++trial) {
    const auto gp = gen.polys(2, 2, 3);
    const auto hp = gen.polys(2, 2, 2);
    const SmoothMap g(2, gftest::exprs(gp));
    const SmoothMap h(2, gftest::exprs(hp));
    const auto at = gen.point(2);
    const Point pt(at.begin(), at.end());
    const Point hx = h(pt);
    std::vector<Rational> hx_exact;
    for (const auto& s : hx) hx_exact.push_back(s.exact());
    EXPECT_EQ(jacobian(compose(g, h), pt), oracle_jacobian(gp, hx_exact) * oracle_jacobian(hp, at));
  }
}

TEST(SmoothMapProperty, CompositionIsAssociative) {
  gftest::Gen gen(52);
  for (int trial = 0; trial < 30; ++trial) {
    const SmoothMap a(2, gftest::exprs(gen.polys(2, 2, 2)));
    const SmoothMap b(2, gftest::exprs(gen.polys(2, 2, 2)));
    const SmoothMap c(2, gftest::exprs(gen.polys(2, 2, 2)));
    auto r = maps_equal(compose(a, compose(b, c)), compose(compose(a, b), c));
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.mode, VerdictMode::Exact);
  }
}
