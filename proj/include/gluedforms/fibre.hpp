#pragma once

#include "gluedforms/forms.hpp"
#include "gluedforms/linalg.hpp"

#include <variant>
#include <vector>

namespace gluedforms {

/// A covector at a point of one piece, in the basis dx^0 .. dx^{d-1}.
struct Covector {
  PiecePoint base;
  std::vector<Scalar> components;
  friend bool operator==(const Covector&, const Covector&) = default;
};

/// An element of the fibre over a glue-locus point: a compatible pair of
/// covectors at y in Y and at f(y).
struct GlueFibreElement {
  Covector a1;
  Covector a2;
  friend bool operator==(const GlueFibreElement&, const GlueFibreElement&) = default;
};

/// Interior fibres hold Covectors; glue-locus fibres hold GlueFibreElements.
using FibreElement = std::variant<Covector, GlueFibreElement>;

struct FibreDescription {
  GluedPoint point;  // canonical
  PointClass point_class = PointClass::Interior1;
  std::size_t dim = 0;
  std::vector<FibreElement> basis;
  /// k x (d1 + d2) compatibility constraints; empty off the glue locus.
  RationalMatrix constraints;
};

/// The value of w at x: its coefficients evaluated there.
Covector value_at(const OneForm& w, const PiecePoint& x);

/// Rows [A^T | -B^T] with A the Jacobian of Y's parametrization and B the
/// Jacobian of f in Y's parameters; a pair (a1, a2) is compatible iff
/// A^T a1 = B^T a2. Throws DomainError off the glue locus.
RationalMatrix compatible_pair_constraints(const GluedSpace& X, const GluedPoint& y);

/// The fibre of Λ¹ of the glued space over x:
///  - Interior1 / Interior2: the full covector space of the piece;
///  - GlueLocus: the exact nullspace of compatible_pair_constraints.
FibreDescription fibre_at(const GluedSpace& X, const GluedPoint& x);

/// Throws DomainError unless `e` is a compatible pair over the glue locus
/// (exact residual zero, or below 1e-9 for float components).
void check_glue_element(const GluedSpace& X, const GlueFibreElement& e);

/// Defined over Interior1 points and the glue locus.
Covector rho1(const GluedSpace& X, const FibreElement& e);
/// Defined over Interior2 points and the glue locus.
Covector rho2(const GluedSpace& X, const FibreElement& e);

/// Inverse of rho1 on an Interior1 fibre.
Covector rho1_inverse(const GluedSpace& X, const Covector& v);
/// Inverse of rho2 on an Interior2 fibre.
Covector rho2_inverse(const GluedSpace& X, const Covector& v);
/// Inverse of (rho1, rho2) on a glue-locus fibre; checks compatibility.
GlueFibreElement rho_pair_inverse(const GluedSpace& X, const Covector& a1, const Covector& a2);

/// "The form on `side` vanishes at `at`": `count` linear functionals, one per
/// coefficient of the value there.
struct VanishingCondition {
  Side side = Side::P1;
  PiecePoint at;
  std::size_t count = 0;
};

/// Conditions cutting out the forms on the glued space that vanish at x. On
/// the glue locus there is one condition per lift.
std::vector<VanishingCondition> vanishing_constraints(const GluedSpace& X, const GluedPoint& x);

/// Brute-force dimension of the fibre over x: compatible pairs of forms with
/// polynomial coefficients of total degree <= degree, modulo the pairs that
/// satisfy vanishing_constraints. Throws std::invalid_argument for degree 0.
std::size_t fibre_oracle(const GluedSpace& X, const GluedPoint& x, unsigned degree);

/// Coordinates of a fibre element: d components on interiors, d1 + d2 on the locus.
std::vector<Scalar> coordinates(const FibreElement& e);

/// Builds a fibre element over x from coordinates as returned by coordinates().
/// Throws DomainError for a locus vector violating the constraints.
FibreElement make_fibre_element(const GluedSpace& X, const GluedPoint& x, const std::vector<Scalar>& coords);

}  // namespace gluedforms
