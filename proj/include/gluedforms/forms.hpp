#pragma once

#include "gluedforms/errors.hpp"
#include "gluedforms/space.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gluedforms {

/// sum_i coeffs[i] dx^i on a Euclidean piece.
struct OneForm {
  EuclideanPiece piece;
  std::vector<Expr> coeffs;

  std::string str() const;
  friend bool operator==(const OneForm&, const OneForm&) = default;
};

/// Throws DimensionError unless there is one coefficient per coordinate and
/// coefficients only use the piece's coordinates.
OneForm make_form(EuclideanPiece piece, std::vector<Expr> coeffs);
OneForm zero_form(const EuclideanPiece& piece);

/// A form on R^domain_dim, typically on the parameter space of Y.
struct PulledForm {
  std::size_t domain_dim = 0;
  std::vector<Expr> coeffs;

  std::string str() const;
  friend bool operator==(const PulledForm&, const PulledForm&) = default;
};

PulledForm make_pulled_form(std::size_t domain_dim, std::vector<Expr> coeffs);

/// m^* w: coefficient j is sum_i w_i(m(u)) * d m_i / d u_j. Exact-polynomial
/// coefficients come back in canonical expanded form.
PulledForm pullback(const OneForm& w, const SmoothMap& m);
PulledForm pullback(const PulledForm& w, const SmoothMap& m);

/// i^* w1 in the parameters of Y.
PulledForm restrict_to_Y(const GluedSpace& X, const OneForm& w1);
/// f^* j^* w2 in the parameters of Y.
PulledForm pull_through_f(const GluedSpace& X, const OneForm& w2);

EqualityResult forms_equal(const PulledForm& a, const PulledForm& b, const SamplingOptions& options = {});
PulledForm difference(const PulledForm& a, const PulledForm& b);

struct CompatibilityResult {
  bool compatible = false;
  VerdictMode mode = VerdictMode::Exact;
  PulledForm restricted;  // i^* w1
  PulledForm pulled;      // f^* j^* w2
};

/// w1 and w2 are compatible iff i^* w1 == f^* j^* w2.
CompatibilityResult check_compatible(const GluedSpace& X, const OneForm& w1, const OneForm& w2,
                                     const SamplingOptions& options = {});

class IncompatibleForms : public Error {
 public:
  explicit IncompatibleForms(PulledForm diff);
  /// i^* w1 - f^* j^* w2
  const PulledForm& difference() const { return difference_; }

 private:
  PulledForm difference_;
};

/// A compatible pair (w1, w2), i.e. the form w1 ∪_f w2 on the glued space.
/// Only glue_forms creates verified pairs.
class FormPair {
 public:
  const OneForm& w1() const { return w1_; }
  const OneForm& w2() const { return w2_; }
  bool verified() const { return verified_; }
  VerdictMode mode() const { return mode_; }

  friend bool operator==(const FormPair&, const FormPair&) = default;

 private:
  friend FormPair glue_forms(const GluedSpace&, const OneForm&, const OneForm&, const SamplingOptions&);
  FormPair(OneForm w1, OneForm w2, VerdictMode mode)
      : w1_(std::move(w1)), w2_(std::move(w2)), verified_(true), mode_(mode) {}

  OneForm w1_;
  OneForm w2_;
  bool verified_ = false;
  VerdictMode mode_ = VerdictMode::Exact;
};

/// Throws IncompatibleForms carrying i^* w1 - f^* j^* w2.
FormPair glue_forms(const GluedSpace& X, const OneForm& w1, const OneForm& w2, const SamplingOptions& options = {});

/// The pullbacks of w1 ∪_f w2 to the two pieces.
std::pair<OneForm, OneForm> split_glued_form(const FormPair& fp);

/// (w1 ∪_f w2)(p): the pullback of whichever component lives on p's lift.
PulledForm evaluate_on_plot(const FormPair& fp, const Plot& p);

/// Forms on X1 and X2 restricting to `pf` on Y: pf pulled back along the
/// affine left inverse of Y, and along the inverse gluing map composed with
/// the left inverse of f(Y).
std::pair<OneForm, OneForm> extend_form_from_Y(const GluedSpace& X, const PulledForm& pf);

/// Throws DimensionError on a piece mismatch.
OneForm add_forms(const OneForm& a, const OneForm& b);
OneForm scale_form(const Scalar& factor, const OneForm& w);

/// Always true: with an injective gluing map f-equivalent plots coincide, so
/// every form is f-invariant. Kept so callers can state the hypothesis.
bool is_f_invariant(const GluedSpace& X, const OneForm& w);

}  // namespace gluedforms
