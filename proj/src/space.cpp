#include "gluedforms/space.hpp"

#include "gluedforms/errors.hpp"
#include "gluedforms/polynomial.hpp"

namespace gluedforms {

const char* to_string(Side side) { return side == Side::P1 ? "P1" : "P2"; }

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::Interior1: return "Interior1";
    case PointClass::Interior2: return "Interior2";
    case PointClass::GlueLocus: return "GlueLocus";
  }
  return "?";
}

Point to_point(const ExactPoint& p) { return Point(p.begin(), p.end()); }

ExactPoint to_exact_point(const Point& p) {
  ExactPoint out;
  out.reserve(p.size());
  for (const auto& s : p) out.push_back(s.exact());
  return out;
}

namespace {

void require_exact_identity(const SmoothMap& m, const std::string& what) {
  auto r = maps_equal(m, SmoothMap::identity(m.domain_dim()));
  if (!r.equal || r.mode != VerdictMode::Exact) throw InvariantViolation(what + " is not the identity");
}

ExactPoint apply_exact(const SmoothMap& m, const ExactPoint& x) { return to_exact_point(m(to_point(x))); }

}  // namespace

SmoothMap affine_left_inverse(const SmoothMap& m) {
  if (!m.is_affine()) throw InvariantViolation("non-affine map " + m.str());
  const std::size_t k = m.domain_dim();
  const std::size_t d = m.codomain_dim();
  const Point origin(k, Scalar(0));
  const RationalMatrix a = to_rational(jacobian(m, origin));
  const ExactPoint offset = to_exact_point(m(origin));
  if (exact_rank(a) != k) throw InvariantViolation("map " + m.str() + " is not injective");
  const RationalMatrix left = inverse(a.transposed() * a) * a.transposed();  // k x d
  std::vector<Expr> comps;
  for (std::size_t i = 0; i < k; ++i) {
    Expr sum;
    for (std::size_t j = 0; j < d; ++j)
      if (left(i, j) != 0) sum = sum + Expr(Scalar(left(i, j))) * (Expr::variable(j) - Expr(Scalar(offset[j])));
    comps.push_back(canonical(sum));
  }
  return SmoothMap(d, std::move(comps));
}

// ---------------------------------------------------------------------------

AffineSubset::AffineSubset(EuclideanPiece piece, SmoothMap param, SmoothMap left_inverse)
    : piece_(std::move(piece)), param_(std::move(param)), left_inverse_(std::move(left_inverse)) {
  const std::size_t k = param_.domain_dim();
  if (param_.codomain_dim() != piece_.dim)
    throw InvariantViolation("parametrization lands in R^" + std::to_string(param_.codomain_dim()) + ", piece " +
                             piece_.name + " is R^" + std::to_string(piece_.dim));
  if (left_inverse_.domain_dim() != piece_.dim || left_inverse_.codomain_dim() != k)
    throw InvariantViolation("left inverse must map R^" + std::to_string(piece_.dim) + " -> R^" + std::to_string(k));
  if (!param_.is_affine()) throw InvariantViolation("non-affine parametrization " + param_.str());
  if (!left_inverse_.is_affine()) throw InvariantViolation("non-affine left inverse " + left_inverse_.str());
  const ExactPoint origin(k, Rational(0));
  if (exact_rank(to_rational(jacobian(param_, to_point(origin)))) != k)
    throw InvariantViolation("parametrization " + param_.str() + " is not injective");
  require_exact_identity(compose(left_inverse_, param_), "left_inverse ∘ param");
}

bool AffineSubset::contains(const ExactPoint& x) const {
  if (x.size() != piece_.dim)
    throw DimensionError("point with " + std::to_string(x.size()) + " coordinates in R^" + std::to_string(piece_.dim));
  return point_at(parameters_of(x)) == x;
}

ExactPoint AffineSubset::parameters_of(const ExactPoint& x) const { return apply_exact(left_inverse_, x); }

ExactPoint AffineSubset::point_at(const ExactPoint& t) const { return apply_exact(param_, t); }

// ---------------------------------------------------------------------------

GluingMap::GluingMap(AffineSubset domain, SmoothMap map_on_params, AffineSubset image, SmoothMap inverse_on_params)
    : domain_(std::move(domain)),
      map_on_params_(std::move(map_on_params)),
      image_(std::move(image)),
      inverse_on_params_(std::move(inverse_on_params)) {
  const std::size_t k = domain_.dim();
  if (map_on_params_.domain_dim() != k || map_on_params_.codomain_dim() != image_.piece().dim)
    throw InvariantViolation("gluing map must go R^" + std::to_string(k) + " -> R^" +
                             std::to_string(image_.piece().dim));
  if (image_.dim() != k)
    throw InvariantViolation("image subset has dimension " + std::to_string(image_.dim()) + ", domain has " +
                             std::to_string(k));
  if (inverse_on_params_.domain_dim() != k || inverse_on_params_.codomain_dim() != k)
    throw InvariantViolation("inverse must map R^" + std::to_string(k) + " -> R^" + std::to_string(k));
  if (!map_on_params_.is_affine()) throw InvariantViolation("non-affine gluing map " + map_on_params_.str());
  if (!inverse_on_params_.is_affine()) throw InvariantViolation("non-affine inverse " + inverse_on_params_.str());

  // image coordinates of f, i.e. f read in the parameters of f(Y)
  const SmoothMap in_image_params = compose(image_.left_inverse(), map_on_params_);
  auto lands = maps_equal(map_on_params_, compose(image_.param(), in_image_params));
  if (!lands.equal || lands.mode != VerdictMode::Exact)
    throw InvariantViolation("gluing map " + map_on_params_.str() + " does not land in the image subset");
  require_exact_identity(compose(inverse_on_params_, in_image_params), "inverse ∘ gluing map");
}

ExactPoint GluingMap::apply(const ExactPoint& y) const {
  return apply_exact(map_on_params_, domain_.parameters_of(y));
}

ExactPoint GluingMap::parameters_of_image(const ExactPoint& z) const {
  return apply_exact(inverse_on_params_, image_.parameters_of(z));
}

ExactPoint GluingMap::apply_inverse(const ExactPoint& z) const { return domain_.point_at(parameters_of_image(z)); }

// ---------------------------------------------------------------------------

GluedSpace make_glued_space(EuclideanPiece p1, EuclideanPiece p2, GluingMap gluing) {
  if (!(gluing.domain().piece() == p1))
    throw InvariantViolation("gluing domain lies in " + gluing.domain().piece().name + ", not in " + p1.name);
  if (!(gluing.image().piece() == p2))
    throw InvariantViolation("gluing image lies in " + gluing.image().piece().name + ", not in " + p2.name);
  return GluedSpace{std::move(p1), std::move(p2), std::move(gluing), AssumptionFlags{}};
}

GluedPoint canonicalize(const GluedSpace& X, const GluedPoint& x) {
  const auto& piece = X.piece(x.rep.side);
  if (x.rep.coords.size() != piece.dim)
    throw DimensionError(std::string(to_string(x.rep.side)) + " point needs " + std::to_string(piece.dim) +
                         " coordinates, got " + std::to_string(x.rep.coords.size()));
  if (x.rep.side == Side::P1 && X.gluing.domain().contains(x.rep.coords))
    return GluedPoint{PiecePoint{Side::P2, X.gluing.apply(x.rep.coords)}, true};
  return GluedPoint{x.rep, true};
}

PointClass classify_point(const GluedSpace& X, const GluedPoint& x) {
  const GluedPoint c = x.canonical ? x : canonicalize(X, x);
  if (c.rep.side == Side::P1) return PointClass::Interior1;
  return X.gluing.image().contains(c.rep.coords) ? PointClass::GlueLocus : PointClass::Interior2;
}

std::vector<PiecePoint> lift_point(const GluedSpace& X, const GluedPoint& x) {
  const GluedPoint c = canonicalize(X, x);
  switch (classify_point(X, c)) {
    case PointClass::GlueLocus:
      return {PiecePoint{Side::P1, X.gluing.apply_inverse(c.rep.coords)}, c.rep};
    default: return {c.rep};
  }
}

Plot make_plot(const GluedSpace& X, Side tag, SmoothMap lift) {
  if (lift.codomain_dim() != X.piece(tag).dim)
    throw DimensionError("plot lift lands in R^" + std::to_string(lift.codomain_dim()) + ", piece " +
                         X.piece(tag).name + " is R^" + std::to_string(X.piece(tag).dim));
  const std::size_t k = lift.domain_dim();
  return Plot{k, tag, std::move(lift)};
}

EqualityResult f_equivalent(const GluedSpace& X, const Plot& p, const Plot& q, const SamplingOptions& options) {
  if (p.domain_dim != q.domain_dim) throw DimensionError("f-equivalence needs plots with the same domain");
  if (p.lift_tag == q.lift_tag) return maps_equal(p.lift_map, q.lift_map, options);

  const Plot& a = p.lift_tag == Side::P1 ? p : q;  // lift into X1
  const Plot& b = p.lift_tag == Side::P1 ? q : p;  // lift into X2
  const auto& Y = X.gluing.domain();
  const auto& fY = X.gluing.image();

  const SmoothMap a_params = compose(Y.left_inverse(), a.lift_map);
  EqualityResult result = maps_equal(compose(Y.param(), a_params), a.lift_map, options);
  if (!result.equal) return result;
  auto in_image = maps_equal(compose(fY.param(), compose(fY.left_inverse(), b.lift_map)), b.lift_map, options);
  result.mode = combine(result.mode, in_image.mode);
  if (!in_image.equal) return {false, result.mode};
  auto carried = maps_equal(compose(X.gluing.map_on_params(), a_params), b.lift_map, options);
  return {carried.equal, combine(result.mode, carried.mode)};
}

}  // namespace gluedforms
