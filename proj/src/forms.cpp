#include "gluedforms/forms.hpp"

#include "gluedforms/polynomial.hpp"

namespace gluedforms {

namespace {

std::string coefficient_text(const Expr& c) {
  std::string s = c.str();
  bool atomic = c.op() == Op::Variable || c.op() == Op::Pow || c.op() == Op::Sin || c.op() == Op::Cos ||
                c.op() == Op::Exp || (c.is_constant() && s.front() != '(');
  return atomic ? s : "(" + s + ")";
}

std::string form_text(const std::vector<Expr>& coeffs) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (!coeffs[i].is_one()) out += coefficient_text(coeffs[i]) + " ";
    out += "dx" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::vector<Expr> pullback_coeffs(const std::vector<Expr>& coeffs, std::size_t ambient_dim, const SmoothMap& m) {
  if (m.codomain_dim() != ambient_dim)
    throw DimensionError("pullback of a form on R^" + std::to_string(ambient_dim) + " along a map into R^" +
                         std::to_string(m.codomain_dim()));
  std::vector<Expr> at_image;
  at_image.reserve(coeffs.size());
  for (const auto& c : coeffs) at_image.push_back(substitute(c, m.components()));
  const auto jac = jacobian_exprs(m);
  std::vector<Expr> out(m.domain_dim());
  for (std::size_t j = 0; j < m.domain_dim(); ++j) {
    Expr sum;
    for (std::size_t i = 0; i < ambient_dim; ++i) sum = sum + at_image[i] * jac[i][j];
    out[j] = canonical(sum);
  }
  return out;
}

}  // namespace

std::string OneForm::str() const { return form_text(coeffs); }
std::string PulledForm::str() const { return form_text(coeffs); }

OneForm make_form(EuclideanPiece piece, std::vector<Expr> coeffs) {
  if (coeffs.size() != piece.dim)
    throw DimensionError("form on " + piece.name + " needs " + std::to_string(piece.dim) + " coefficients, got " +
                         std::to_string(coeffs.size()));
  for (const auto& c : coeffs)
    if (c.variable_bound() > piece.dim)
      throw DimensionError("coefficient " + c.str() + " uses variables beyond R^" + std::to_string(piece.dim));
  return OneForm{std::move(piece), std::move(coeffs)};
}

OneForm zero_form(const EuclideanPiece& piece) { return OneForm{piece, std::vector<Expr>(piece.dim)}; }

PulledForm make_pulled_form(std::size_t domain_dim, std::vector<Expr> coeffs) {
  if (coeffs.size() != domain_dim)
    throw DimensionError("form on R^" + std::to_string(domain_dim) + " needs " + std::to_string(domain_dim) +
                         " coefficients");
  for (const auto& c : coeffs)
    if (c.variable_bound() > domain_dim)
      throw DimensionError("coefficient " + c.str() + " uses variables beyond R^" + std::to_string(domain_dim));
  return PulledForm{domain_dim, std::move(coeffs)};
}

PulledForm pullback(const OneForm& w, const SmoothMap& m) {
  return PulledForm{m.domain_dim(), pullback_coeffs(w.coeffs, w.piece.dim, m)};
}

PulledForm pullback(const PulledForm& w, const SmoothMap& m) {
  return PulledForm{m.domain_dim(), pullback_coeffs(w.coeffs, w.domain_dim, m)};
}

PulledForm restrict_to_Y(const GluedSpace& X, const OneForm& w1) {
  if (!(w1.piece == X.piece1)) throw DimensionError("form lives on " + w1.piece.name + ", not on " + X.piece1.name);
  return pullback(w1, X.gluing.domain().param());
}

PulledForm pull_through_f(const GluedSpace& X, const OneForm& w2) {
  if (!(w2.piece == X.piece2)) throw DimensionError("form lives on " + w2.piece.name + ", not on " + X.piece2.name);
  return pullback(w2, X.gluing.map_on_params());
}

EqualityResult forms_equal(const PulledForm& a, const PulledForm& b, const SamplingOptions& options) {
  if (a.domain_dim != b.domain_dim) throw DimensionError("forms on different parameter spaces");
  return exprs_equal(a.coeffs, b.coeffs, a.domain_dim, options);
}

PulledForm difference(const PulledForm& a, const PulledForm& b) {
  if (a.domain_dim != b.domain_dim) throw DimensionError("forms on different parameter spaces");
  PulledForm d{a.domain_dim, {}};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) d.coeffs.push_back(canonical(a.coeffs[i] - b.coeffs[i]));
  return d;
}

CompatibilityResult check_compatible(const GluedSpace& X, const OneForm& w1, const OneForm& w2,
                                     const SamplingOptions& options) {
  CompatibilityResult r;
  r.restricted = restrict_to_Y(X, w1);
  r.pulled = pull_through_f(X, w2);
  auto eq = forms_equal(r.restricted, r.pulled, options);
  r.compatible = eq.equal;
  r.mode = eq.mode;
  return r;
}

IncompatibleForms::IncompatibleForms(PulledForm diff)
    : Error("incompatible forms: i^*w1 - f^*j^*w2 = " + diff.str()), difference_(std::move(diff)) {}

FormPair glue_forms(const GluedSpace& X, const OneForm& w1, const OneForm& w2, const SamplingOptions& options) {
  auto r = check_compatible(X, w1, w2, options);
  if (!r.compatible) throw IncompatibleForms(difference(r.restricted, r.pulled));
  return FormPair(w1, w2, r.mode);
}

std::pair<OneForm, OneForm> split_glued_form(const FormPair& fp) { return {fp.w1(), fp.w2()}; }

PulledForm evaluate_on_plot(const FormPair& fp, const Plot& p) {
  const OneForm& w = p.lift_tag == Side::P1 ? fp.w1() : fp.w2();
  if (p.lift_map.domain_dim() != p.domain_dim) throw DimensionError("plot lift does not match its domain");
  return pullback(w, p.lift_map);
}

std::pair<OneForm, OneForm> extend_form_from_Y(const GluedSpace& X, const PulledForm& pf) {
  const auto& g = X.gluing;
  if (pf.domain_dim != g.domain().dim())
    throw DimensionError("form on R^" + std::to_string(pf.domain_dim) + " is not a form on Y = R^" +
                         std::to_string(g.domain().dim()));
  PulledForm on1 = pullback(pf, g.domain().left_inverse());
  PulledForm on2 = pullback(pf, compose(g.inverse_on_params(), g.image().left_inverse()));
  return {OneForm{X.piece1, std::move(on1.coeffs)}, OneForm{X.piece2, std::move(on2.coeffs)}};
}

OneForm add_forms(const OneForm& a, const OneForm& b) {
  if (!(a.piece == b.piece)) throw DimensionError("adding forms on " + a.piece.name + " and " + b.piece.name);
  OneForm sum{a.piece, {}};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) sum.coeffs.push_back(a.coeffs[i] + b.coeffs[i]);
  return sum;
}

OneForm scale_form(const Scalar& factor, const OneForm& w) {
  OneForm out{w.piece, {}};
  for (const auto& c : w.coeffs) out.coeffs.push_back(Expr(factor) * c);
  return out;
}

bool is_f_invariant(const GluedSpace&, const OneForm&) { return true; }

}  // namespace gluedforms
