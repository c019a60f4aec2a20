#include "generators.hpp"

#include "gluedforms/errors.hpp"
#include "gluedforms/parser.hpp"
#include "gluedforms/space.hpp"

#include <gtest/gtest.h>

using namespace gluedforms;

namespace {

SmoothMap map_of(std::size_t dim, std::vector<std::string> comps, char prefix = 'x') {
  std::vector<Expr> es;
  for (const auto& c : comps) es.push_back(parse_expr(c, dim, prefix));
  return SmoothMap(dim, es);
}

GluedPoint at(Side s, ExactPoint c) { return GluedPoint{PiecePoint{s, std::move(c)}, false}; }

}  // namespace

TEST(Space, YAxisClassification) {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  EXPECT_EQ(classify_point(X, at(Side::P2, {0, 5})), PointClass::GlueLocus);
  EXPECT_EQ(classify_point(X, at(Side::P1, {0, 5})), PointClass::GlueLocus);
  EXPECT_EQ(classify_point(X, at(Side::P1, {1, 5})), PointClass::Interior1);
  EXPECT_EQ(classify_point(X, at(Side::P2, {Rational(1, 2), 0})), PointClass::Interior2);
}

TEST(Space, CanonicalLocusPointsLiveInPieceTwo) {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  auto c = canonicalize(X, at(Side::P1, {0, 5}));
  EXPECT_TRUE(c.canonical);
  EXPECT_EQ(c.rep, (PiecePoint{Side::P2, {0, 5}}));
  auto lifts = lift_point(X, at(Side::P2, {0, 5}));
  ASSERT_EQ(lifts.size(), 2u);
  EXPECT_EQ(lifts[0], (PiecePoint{Side::P1, {0, 5}}));
  EXPECT_EQ(lifts[1], (PiecePoint{Side::P2, {0, 5}}));
  EXPECT_EQ(lift_point(X, at(Side::P1, {1, 5})).size(), 1u);
}

TEST(Space, WedgeHasOneLocusPoint) {
  const auto scene = gftest::fixture("wedge");
  const auto& X = scene.glued("GX");
  EXPECT_EQ(classify_point(X, at(Side::P1, {0, 0})), PointClass::GlueLocus);
  EXPECT_EQ(classify_point(X, at(Side::P2, {0, 1})), PointClass::Interior2);
  EXPECT_EQ(X.gluing.domain().dim(), 0u);
}

TEST(Space, AffineLeftInverse) {
  auto m = map_of(1, {"2*t0 + 1", "t0 - 3"}, 't');
  auto inv = affine_left_inverse(m);
  EXPECT_EQ(inv.domain_dim(), 2u);
  EXPECT_TRUE(maps_equal(compose(inv, m), SmoothMap::identity(1)).equal);
  EXPECT_THROW(affine_left_inverse(map_of(1, {"t0^2", "0"}, 't')), InvariantViolation);
  EXPECT_THROW(affine_left_inverse(map_of(2, {"t0 + t1", "t0 + t1"}, 't')), InvariantViolation);
}

TEST(Space, SubsetInvariants) {
  EuclideanPiece r2{"X", 2};
  auto param = map_of(1, {"0", "t0"}, 't');
  EXPECT_NO_THROW(AffineSubset(r2, param, map_of(2, {"x1"})));
  EXPECT_THROW(AffineSubset(r2, param, map_of(2, {"x0"})), InvariantViolation);
  EXPECT_THROW(AffineSubset(r2, map_of(1, {"t0^2", "0"}, 't'), map_of(2, {"x0"})), InvariantViolation);
  AffineSubset y(r2, param, map_of(2, {"x1"}));
  EXPECT_TRUE(y.contains({0, 7}));
  EXPECT_FALSE(y.contains({1, 7}));
  EXPECT_EQ(y.parameters_of({0, 7}), (ExactPoint{7}));
  EXPECT_EQ(y.point_at({Rational(1, 3)}), (ExactPoint{0, Rational(1, 3)}));
}

TEST(Space, GluingMapInvariants) {
  EuclideanPiece a{"A", 2}, b{"B", 2};
  AffineSubset y(a, map_of(1, {"0", "t0"}, 't'), map_of(2, {"x1"}));
  AffineSubset fy(b, map_of(1, {"t0", "0"}, 't'), map_of(2, {"x0"}));
  // f(0, t) = (2t + 1, 0)
  GluingMap f(y, map_of(1, {"2*t0 + 1", "0"}, 't'), fy, map_of(1, {"(t0 - 1)/2"}, 't'));
  EXPECT_EQ(f.apply({0, 3}), (ExactPoint{7, 0}));
  EXPECT_EQ(f.apply_inverse({7, 0}), (ExactPoint{0, 3}));
  EXPECT_EQ(f.parameters_of_image({7, 0}), (ExactPoint{3}));
  EXPECT_THROW(GluingMap(y, map_of(1, {"2*t0 + 1", "0"}, 't'), fy, map_of(1, {"t0"}, 't')), InvariantViolation);
  EXPECT_THROW(GluingMap(y, map_of(1, {"t0^3", "0"}, 't'), fy, map_of(1, {"t0"}, 't')), InvariantViolation);
}

TEST(Space, FEquivalence) {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  auto on_axis1 = make_plot(X, Side::P1, map_of(1, {"0", "x0"}));
  auto on_axis2 = make_plot(X, Side::P2, map_of(1, {"0", "x0"}));
  auto off_axis2 = make_plot(X, Side::P2, map_of(1, {"x0", "0"}));
  EXPECT_TRUE(f_equivalent(X, on_axis1, on_axis2).equal);
  EXPECT_TRUE(f_equivalent(X, on_axis2, on_axis1).equal);
  EXPECT_FALSE(f_equivalent(X, on_axis1, off_axis2).equal);
  EXPECT_TRUE(f_equivalent(X, off_axis2, off_axis2).equal);
  EXPECT_THROW(make_plot(X, Side::P1, map_of(1, {"x0"})), DimensionError);
}

TEST(SpaceProperty, CanonicalizeIsIdempotentAndClassPreserving) {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  gftest::Gen gen(61);
  for (int trial = 0; trial < 50; ++trial) {
    ExactPoint p = gen.point(2);
    if (gen.coin()) p[0] = 0;
    const Side s = gen.coin() ? Side::P1 : Side::P2;
    const auto x = at(s, p);
    const auto c = canonicalize(X, x);
    EXPECT_EQ(classify_point(X, c), classify_point(X, x));
    EXPECT_EQ(canonicalize(X, c).rep, c.rep);
    EXPECT_EQ(classify_point(X, x) == PointClass::GlueLocus, p[0] == 0);
  }
}
