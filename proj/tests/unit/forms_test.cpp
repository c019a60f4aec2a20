#include "generators.hpp"

#include "gluedforms/errors.hpp"
#include "gluedforms/forms.hpp"
#include "gluedforms/parser.hpp"

#include <gtest/gtest.h>

using namespace gluedforms;

namespace {

SmoothMap map_of(std::size_t dim, std::vector<std::string> comps) {
  std::vector<Expr> es;
  for (const auto& c : comps) es.push_back(parse_expr(c, dim));
  return SmoothMap(dim, es);
}

OneForm form_of(const EuclideanPiece& piece, const char* text) {
  return make_form(piece, parse_form_coefficients(text, piece.dim));
}

PulledForm pulled_of(std::size_t dim, const char* text) {
  return make_pulled_form(dim, parse_form_coefficients(text, dim));
}

bool exactly(const EqualityResult& r) { return r.equal && r.mode == VerdictMode::Exact; }

}  // namespace

TEST(Forms, PullbackExamples) {
  EuclideanPiece r2{"X", 2};
  // (x1 dx0)(t -> (t, t^2)) = t^2 dt
  auto p = pullback(form_of(r2, "x1 dx0"), map_of(1, {"x0", "x0^2"}));
  EXPECT_TRUE(exactly(forms_equal(p, pulled_of(1, "x0^2 dx0"))));
  // (x0 dx1)(polar-like map) picks up both partials
  auto q = pullback(form_of(r2, "x0 dx1"), map_of(2, {"x0", "x0*x1"}));
  EXPECT_TRUE(exactly(forms_equal(q, pulled_of(2, "x0*x1 dx0 + x0^2 dx1"))));
  EXPECT_THROW(pullback(form_of(r2, "dx0"), map_of(1, {"x0"})), DimensionError);
}

TEST(Forms, YAxisRestrictions) {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  EXPECT_EQ(restrict_to_Y(X, scene.form("w1")).str(), "x0^2 dx0");
  EXPECT_EQ(pull_through_f(X, scene.form("w2")).str(), "x0^2 dx0");
  EXPECT_EQ(pull_through_f(X, scene.form("w3")).str(), "x0 dx0");
}

TEST(Forms, CheckCompatibleExamples) {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  auto ok = check_compatible(X, scene.form("w1"), scene.form("w2"));
  EXPECT_TRUE(ok.compatible);
  EXPECT_EQ(ok.mode, VerdictMode::Exact);
  EXPECT_FALSE(check_compatible(X, scene.form("w1"), scene.form("w3")).compatible);
  try {
    glue_forms(X, scene.form("w1"), scene.form("w3"));
    FAIL() << "expected IncompatibleForms";
  } catch (const IncompatibleForms& e) {
    EXPECT_EQ(e.difference().str(), "(x0^2 - x0) dx0");
  }
  EXPECT_THROW(check_compatible(X, scene.form("w2"), scene.form("w1")), DimensionError);
}

TEST(Forms, WedgeEveryPairIsCompatible) {
  const auto scene = gftest::fixture("wedge");
  const auto& X = scene.glued("GX");
  auto r = check_compatible(X, scene.form("w1"), scene.form("w2"));
  EXPECT_TRUE(r.compatible);
  EXPECT_EQ(r.restricted.domain_dim, 0u);
}

TEST(Forms, GlueSplitAndEvaluate) {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  auto fp = glue_forms(X, scene.form("w1"), scene.form("w2"));
  EXPECT_TRUE(fp.verified());
  auto [a, b] = split_glued_form(fp);
  EXPECT_EQ(a, scene.form("w1"));
  EXPECT_EQ(b, scene.form("w2"));
  auto on1 = evaluate_on_plot(fp, make_plot(X, Side::P1, map_of(1, {"0", "x0"})));
  auto on2 = evaluate_on_plot(fp, make_plot(X, Side::P2, map_of(1, {"0", "x0"})));
  EXPECT_EQ(on1.str(), "x0^2 dx0");
  EXPECT_TRUE(exactly(forms_equal(on1, on2)));
}

TEST(Forms, ExtendFromY) {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  auto [e1, e2] = extend_form_from_Y(X, pulled_of(1, "x0 dx0"));
  EXPECT_EQ(e1.str(), "x1 dx1");
  EXPECT_EQ(e2.str(), "x1 dx1");
  EXPECT_TRUE(check_compatible(X, e1, e2).compatible);
}

TEST(Forms, ArithmeticAndInvariance) {
  EuclideanPiece r2{"X", 2}, other{"Z", 2};
  auto s = add_forms(form_of(r2, "x0 dx0"), form_of(r2, "dx0 + dx1"));
  EXPECT_TRUE(exactly(forms_equal(pullback(s, SmoothMap::identity(2)), pulled_of(2, "(x0 + 1) dx0 + dx1"))));
  EXPECT_THROW(add_forms(form_of(r2, "dx0"), form_of(other, "dx0")), DimensionError);
  EXPECT_EQ(scale_form(Scalar(0), form_of(r2, "x0 dx1")), zero_form(r2));
  const auto scene = gftest::fixture("yaxis");
  EXPECT_TRUE(is_f_invariant(scene.glued("GX"), scene.form("w1")));
  EXPECT_THROW(make_form(r2, {Expr(1)}), DimensionError);
  EXPECT_THROW(make_form(EuclideanPiece{"L", 1}, {Expr::variable(1)}), DimensionError);
}

TEST(FormsProperty, CompatibilityMatchesSubstitutionOracle) {
  const auto scene = gftest::fixture("yaxis");
  const auto& X = scene.glued("GX");
  gftest::Gen gen(71);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = gen.polys(2, 2, 3);
    auto h = gen.polys(2, 2, 3);
    if (gen.coin()) h[1] = h[1] + (g[1].with_zero(0) + gftest::constant(2, -1) * h[1].with_zero(0));
    const bool oracle = g[1].with_zero(0) == h[1].with_zero(0);
    auto r = check_compatible(X, make_form(X.piece1, gftest::exprs(g)), make_form(X.piece2, gftest::exprs(h)));
    EXPECT_EQ(r.compatible, oracle);
    EXPECT_EQ(r.mode, VerdictMode::Exact);
  }
}

TEST(FormsProperty, PullbackIsFunctorial) {
  gftest::Gen gen(72);
  EuclideanPiece r2{"X", 2};
  for (int trial = 0; trial < 30; ++trial) {
    const OneForm w = make_form(r2, gftest::exprs(gen.polys(2, 2, 2)));
    const SmoothMap a(2, gftest::exprs(gen.polys(2, 2, 2)));
    const SmoothMap b(1, gftest::exprs(gen.polys(2, 1, 2)));
    EXPECT_TRUE(exactly(forms_equal(pullback(pullback(w, a), b), pullback(w, compose(a, b)))));
  }
}
