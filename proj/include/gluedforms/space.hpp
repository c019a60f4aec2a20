#pragma once

#include "gluedforms/smooth_map.hpp"

#include <string>
#include <vector>

namespace gluedforms {

/// Which piece of a glued space a point, plot or form lives on.
enum class Side { P1, P2 };

const char* to_string(Side side);

/// The standard R^dim.
struct EuclideanPiece {
  std::string name;
  std::size_t dim = 0;
  friend bool operator==(const EuclideanPiece&, const EuclideanPiece&) = default;
};

using ExactPoint = std::vector<Rational>;

Point to_point(const ExactPoint& p);
/// Throws ModeMismatch if any coordinate is a float.
ExactPoint to_exact_point(const Point& p);

/// The left inverse x -> (A^T A)^{-1} A^T (x - c) of an injective affine map
/// t -> c + A t. Throws InvariantViolation if the map is not affine or not
/// injective.
SmoothMap affine_left_inverse(const SmoothMap& m);

/// Image of an injective affine map R^k -> R^d inside a piece, together with
/// an affine left inverse R^d -> R^k.
class AffineSubset {
 public:
  /// Throws InvariantViolation when the parametrization is not affine, not
  /// injective, or `left_inverse ∘ param` is not the identity of R^k.
  AffineSubset(EuclideanPiece piece, SmoothMap param, SmoothMap left_inverse);

  const EuclideanPiece& piece() const { return piece_; }
  const SmoothMap& param() const { return param_; }
  const SmoothMap& left_inverse() const { return left_inverse_; }
  /// k, the dimension of the subset.
  std::size_t dim() const { return param_.domain_dim(); }

  /// x lies in the subset iff param(left_inverse(x)) == x.
  bool contains(const ExactPoint& x) const;
  ExactPoint parameters_of(const ExactPoint& x) const;
  ExactPoint point_at(const ExactPoint& t) const;

 private:
  EuclideanPiece piece_;
  SmoothMap param_;
  SmoothMap left_inverse_;
};

/// The gluing diffeomorphism f : Y -> f(Y), written in the parameters of Y.
class GluingMap {
 public:
  /// Throws InvariantViolation unless `map_on_params` is affine with image
  /// equal to `image` and `inverse_on_params` inverts it in parameter space.
  GluingMap(AffineSubset domain, SmoothMap map_on_params, AffineSubset image, SmoothMap inverse_on_params);

  const AffineSubset& domain() const { return domain_; }
  const SmoothMap& map_on_params() const { return map_on_params_; }
  const AffineSubset& image() const { return image_; }
  const SmoothMap& inverse_on_params() const { return inverse_on_params_; }

  /// f(y) for y in Y.
  ExactPoint apply(const ExactPoint& y) const;
  /// f^{-1}(z) for z in f(Y).
  ExactPoint apply_inverse(const ExactPoint& z) const;
  /// Parameters t of Y with f(param(t)) = z, for z in f(Y).
  ExactPoint parameters_of_image(const ExactPoint& z) const;

 private:
  AffineSubset domain_;
  SmoothMap map_on_params_;
  AffineSubset image_;
  SmoothMap inverse_on_params_;
};

/// Hypotheses that the fibre and metric constructions rely on. Both hold for
/// affine gluing data and are set by make_glued_space; nothing verifies them
/// for general diffeologies.
struct AssumptionFlags {
  /// The two pushforward diffeologies on forms of Y coincide.
  bool d_omega_equal = true;
  /// Pullbacks of forms from X1 and X2 to Y have the same image.
  bool pullback_images_equal = true;
};

/// X1 ∪_f X2 for Euclidean pieces and affine gluing data.
struct GluedSpace {
  EuclideanPiece piece1;
  EuclideanPiece piece2;
  GluingMap gluing;
  AssumptionFlags assumptions;

  const EuclideanPiece& piece(Side side) const { return side == Side::P1 ? piece1 : piece2; }
};

GluedSpace make_glued_space(EuclideanPiece p1, EuclideanPiece p2, GluingMap gluing);

/// A point of a piece.
struct PiecePoint {
  Side side = Side::P2;
  ExactPoint coords;
  friend bool operator==(const PiecePoint&, const PiecePoint&) = default;
};

/// A point of the glued space given by one of its lifts. In canonical form a
/// point of the glue locus is always represented in piece 2.
struct GluedPoint {
  PiecePoint rep;
  bool canonical = false;
};

enum class PointClass { Interior1, Interior2, GlueLocus };

const char* to_string(PointClass c);

GluedPoint canonicalize(const GluedSpace& X, const GluedPoint& x);
PointClass classify_point(const GluedSpace& X, const GluedPoint& x);

/// All points of X1 ⊔ X2 over x: one off the glue locus, two on it
/// (the P1 lift first).
std::vector<PiecePoint> lift_point(const GluedSpace& X, const GluedPoint& x);

/// A plot of the glued space with a connected domain, given by its lift to
/// one of the pieces.
struct Plot {
  std::size_t domain_dim = 0;
  Side lift_tag = Side::P1;
  SmoothMap lift_map;
};

/// Throws DimensionError if the lift does not go R^domain_dim -> piece.
Plot make_plot(const GluedSpace& X, Side tag, SmoothMap lift);

/// Whether p and q present the same plot of the glued space.
///
/// With an injective gluing map, equal tags mean equal lifts; different tags
/// mean both lifts factor through Y and f(Y) and f carries one to the other.
EqualityResult f_equivalent(const GluedSpace& X, const Plot& p, const Plot& q, const SamplingOptions& options = {});

}  // namespace gluedforms
