#include "gluedforms/fibre.hpp"

#include "gluedforms/polynomial.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace gluedforms {

Covector value_at(const OneForm& w, const PiecePoint& x) {
  if (x.coords.size() != w.piece.dim)
    throw DimensionError("value of a form on R^" + std::to_string(w.piece.dim) + " at a point with " +
                         std::to_string(x.coords.size()) + " coordinates");
  const Point at = to_point(x.coords);
  std::vector<Scalar> comps;
  comps.reserve(w.coeffs.size());
  for (const auto& c : w.coeffs) comps.push_back(evaluate(c, at));
  return Covector{x, unify_mode(std::move(comps))};
}

RationalMatrix compatible_pair_constraints(const GluedSpace& X, const GluedPoint& y) {
  const GluedPoint c = canonicalize(X, y);
  if (classify_point(X, c) != PointClass::GlueLocus) throw DomainError("point is not on the glue locus");
  const auto& g = X.gluing;
  const Point t = to_point(g.parameters_of_image(c.rep.coords));
  const RationalMatrix a = to_rational(jacobian(g.domain().param(), t));
  const RationalMatrix b = to_rational(jacobian(g.map_on_params(), t));
  const std::size_t k = g.domain().dim();
  const std::size_t d1 = X.piece1.dim;
  const std::size_t d2 = X.piece2.dim;
  RationalMatrix m(k, d1 + d2);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d1; ++i) m(j, i) = a(i, j);
    for (std::size_t i = 0; i < d2; ++i) m(j, d1 + i) = -b(i, j);
  }
  return m;
}

namespace {

Covector standard_covector(const PiecePoint& at, std::size_t dim, std::size_t i) {
  std::vector<Scalar> comps(dim, Scalar(0));
  comps[i] = Scalar(1);
  return Covector{at, std::move(comps)};
}

std::vector<Scalar> residual(const RationalMatrix& constraints, const std::vector<Scalar>& v) {
  std::vector<Scalar> r;
  const bool exact = all_exact(v);
  for (std::size_t row = 0; row < constraints.rows(); ++row) {
    Scalar sum = exact ? Scalar(0) : Scalar::real(0.0);
    for (std::size_t c = 0; c < constraints.cols(); ++c) {
      Scalar entry(constraints(row, c));
      sum = sum + (exact ? entry : entry.as_float()) * v[c];
    }
    r.push_back(sum);
  }
  return r;
}

}  // namespace

FibreDescription fibre_at(const GluedSpace& X, const GluedPoint& x) {
  FibreDescription fd;
  fd.point = canonicalize(X, x);
  fd.point_class = classify_point(X, fd.point);
  const PiecePoint& at = fd.point.rep;
  switch (fd.point_class) {
    case PointClass::Interior1:
    case PointClass::Interior2: {
      const std::size_t d = X.piece(at.side).dim;
      fd.dim = d;
      for (std::size_t i = 0; i < d; ++i) fd.basis.emplace_back(standard_covector(at, d, i));
      return fd;
    }
    case PointClass::GlueLocus: break;
  }

  fd.constraints = compatible_pair_constraints(X, fd.point);
  const auto lifts = lift_point(X, fd.point);
  const std::size_t d1 = X.piece1.dim;
  for (const auto& v : nullspace(fd.constraints)) {
    GlueFibreElement e{Covector{lifts[0], {}}, Covector{lifts[1], {}}};
    for (std::size_t i = 0; i < v.size(); ++i) (i < d1 ? e.a1 : e.a2).components.emplace_back(v[i]);
    fd.basis.emplace_back(std::move(e));
  }
  fd.dim = fd.basis.size();
  return fd;
}

void check_glue_element(const GluedSpace& X, const GlueFibreElement& e) {
  if (e.a1.base.side != Side::P1 || e.a2.base.side != Side::P2)
    throw DomainError("glue fibre element needs a P1 and a P2 covector");
  if (e.a1.components.size() != X.piece1.dim || e.a2.components.size() != X.piece2.dim)
    throw DomainError("glue fibre element has the wrong number of components");
  const GluedPoint y{e.a2.base, false};
  if (classify_point(X, y) != PointClass::GlueLocus) throw DomainError("glue fibre element off the glue locus");
  if (X.gluing.apply_inverse(e.a2.base.coords) != e.a1.base.coords)
    throw DomainError("glue fibre element components sit over different points");

  std::vector<Scalar> v = e.a1.components;
  v.insert(v.end(), e.a2.components.begin(), e.a2.components.end());
  v = unify_mode(std::move(v));
  for (const auto& r : residual(compatible_pair_constraints(X, y), v)) {
    bool ok = r.is_exact() ? r.is_zero() : std::abs(r.to_double()) <= 1e-9;
    if (!ok) throw DomainError("covector pair violates the compatibility constraint (residual " + r.str() + ")");
  }
}

Covector rho1(const GluedSpace& X, const FibreElement& e) {
  if (const auto* g = std::get_if<GlueFibreElement>(&e)) {
    check_glue_element(X, *g);
    return g->a1;
  }
  const auto& v = std::get<Covector>(e);
  if (v.base.side != Side::P1 || classify_point(X, GluedPoint{v.base, false}) != PointClass::Interior1)
    throw DomainError("rho1 is defined over i1(X1 \\ Y) and the glue locus only");
  return v;
}

Covector rho2(const GluedSpace& X, const FibreElement& e) {
  if (const auto* g = std::get_if<GlueFibreElement>(&e)) {
    check_glue_element(X, *g);
    return g->a2;
  }
  const auto& v = std::get<Covector>(e);
  if (v.base.side != Side::P2 || classify_point(X, GluedPoint{v.base, false}) != PointClass::Interior2)
    throw DomainError("rho2 is defined over i2(X2) only");
  return v;
}

Covector rho1_inverse(const GluedSpace& X, const Covector& v) {
  if (v.base.side != Side::P1 || classify_point(X, GluedPoint{v.base, false}) != PointClass::Interior1)
    throw DomainError("rho1_inverse needs a covector over X1 \\ Y");
  if (v.components.size() != X.piece1.dim) throw DimensionError("covector has the wrong number of components");
  return v;
}

Covector rho2_inverse(const GluedSpace& X, const Covector& v) {
  if (v.base.side != Side::P2 || classify_point(X, GluedPoint{v.base, false}) != PointClass::Interior2)
    throw DomainError("rho2_inverse needs a covector over X2 \\ f(Y)");
  if (v.components.size() != X.piece2.dim) throw DimensionError("covector has the wrong number of components");
  return v;
}

GlueFibreElement rho_pair_inverse(const GluedSpace& X, const Covector& a1, const Covector& a2) {
  GlueFibreElement e{a1, a2};
  check_glue_element(X, e);
  return e;
}

std::vector<VanishingCondition> vanishing_constraints(const GluedSpace& X, const GluedPoint& x) {
  std::vector<VanishingCondition> out;
  for (const auto& lift : lift_point(X, x)) out.push_back({lift.side, lift, X.piece(lift.side).dim});
  return out;
}

std::vector<Scalar> coordinates(const FibreElement& e) {
  if (const auto* v = std::get_if<Covector>(&e)) return v->components;
  const auto& g = std::get<GlueFibreElement>(e);
  std::vector<Scalar> c = g.a1.components;
  c.insert(c.end(), g.a2.components.begin(), g.a2.components.end());
  return c;
}

FibreElement make_fibre_element(const GluedSpace& X, const GluedPoint& x, const std::vector<Scalar>& coords) {
  const GluedPoint c = canonicalize(X, x);
  const PointClass cls = classify_point(X, c);
  if (cls != PointClass::GlueLocus) {
    if (coords.size() != X.piece(c.rep.side).dim)
      throw DimensionError("fibre over an interior point of R^" + std::to_string(X.piece(c.rep.side).dim) + " needs " +
                           std::to_string(X.piece(c.rep.side).dim) + " coordinates");
    return Covector{c.rep, coords};
  }
  const std::size_t d1 = X.piece1.dim;
  if (coords.size() != d1 + X.piece2.dim)
    throw DimensionError("fibre over a glue-locus point needs " + std::to_string(d1 + X.piece2.dim) + " coordinates");
  const auto lifts = lift_point(X, c);
  GlueFibreElement e{Covector{lifts[0], std::vector<Scalar>(coords.begin(), coords.begin() + d1)},
                     Covector{lifts[1], std::vector<Scalar>(coords.begin() + d1, coords.end())}};
  check_glue_element(X, e);
  return e;
}

// ---------------------------------------------------------------------------
// Truncated-polynomial oracle

namespace {

std::vector<Monomial> monomials_up_to(std::size_t vars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial m(vars, 0);
  // odometer over exponent vectors with total degree <= degree
  while (true) {
    Monomial trimmed = m;
    while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
    out.push_back(trimmed);
    std::size_t i = 0;
    for (; i < vars; ++i) {
      ++m[i];
      if (gluedforms::degree(m) <= degree) break;
      m[i] = 0;
    }
    if (i == vars) break;
  }
  return out;
}

struct BasisForm {
  Side side;
  std::size_t component;
  Monomial monomial;
};

std::vector<ExactPolynomial> polynomials_of(const SmoothMap& m) {
  std::vector<ExactPolynomial> out;
  for (const auto& c : m.components()) {
    auto p = to_exact_polynomial(c);
    if (!p) throw std::invalid_argument("oracle needs polynomial gluing data");
    out.push_back(std::move(*p));
  }
  return out;
}

Rational evaluate_monomial(const Monomial& m, const ExactPoint& x) {
  Rational v = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (unsigned e = 0; e < m[i]; ++e) v *= x[i];
  return v;
}

// d/dt_j of an affine polynomial: its coefficient of t_j
Rational linear_coefficient(const ExactPolynomial& p, std::size_t j) {
  Monomial m(j + 1, 0);
  m[j] = 1;
  return p.coefficient(m);
}

}  // namespace

std::size_t fibre_oracle(const GluedSpace& X, const GluedPoint& x, unsigned degree) {
  if (degree == 0) throw std::invalid_argument("oracle degree must be at least 1");
  const auto& g = X.gluing;
  const std::size_t k = g.domain().dim();

  std::vector<BasisForm> basis;
  for (Side side : {Side::P1, Side::P2}) {
    const std::size_t d = X.piece(side).dim;
    const auto monos = monomials_up_to(d, degree);
    for (std::size_t comp = 0; comp < d; ++comp)
      for (const auto& m : monos) basis.push_back({side, comp, m});
  }
  const std::size_t n = basis.size();

  // Compatibility: for every basis form, the coefficients of its pullback to Y
  // (side 1 along the parametrization, side 2 along f, with a minus sign).
  const auto param = polynomials_of(g.domain().param());
  const auto along_f = polynomials_of(g.map_on_params());
  std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> entries(n);  // column -> (row, value)
  for (std::size_t col = 0; col < n; ++col) {
    const BasisForm& b = basis[col];
    const auto& images = b.side == Side::P1 ? param : along_f;
    ExactPolynomial coeff;
    coeff.add_term(b.monomial, Rational(1));
    const ExactPolynomial at_y = coeff.substitute(images);
    for (std::size_t j = 0; j < k; ++j) {
      Rational slope = linear_coefficient(images[b.component], j);
      if (b.side == Side::P2) slope = -slope;
      const ExactPolynomial term = at_y.scaled(slope);
      for (const auto& [mono, c] : term.terms()) {
        auto [it, inserted] = row_of.try_emplace({j, mono}, row_of.size());
        entries[col].emplace_back(it->second, c);
      }
    }
  }
  RationalMatrix compat(row_of.size(), n);
  for (std::size_t col = 0; col < n; ++col)
    for (const auto& [row, v] : entries[col]) compat(row, col) += v;
  const auto pairs = nullspace(compat);

  // Values at the lifts, restricted to compatible pairs.
  std::vector<std::vector<Rational>> eval_rows;
  for (const auto& cond : vanishing_constraints(X, x)) {
    for (std::size_t comp = 0; comp < cond.count; ++comp) {
      std::vector<Rational> row(n, Rational(0));
      for (std::size_t col = 0; col < n; ++col)
        if (basis[col].side == cond.side && basis[col].component == comp)
          row[col] = evaluate_monomial(basis[col].monomial, cond.at.coords);
      eval_rows.push_back(std::move(row));
    }
  }
  RationalMatrix values(eval_rows.size(), pairs.size());
  for (std::size_t r = 0; r < eval_rows.size(); ++r)
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      Rational s = 0;
      for (std::size_t col = 0; col < n; ++col)
        if (eval_rows[r][col] != 0 && pairs[p][col] != 0) s += eval_rows[r][col] * pairs[p][col];
      values(r, p) = s;
    }
  return exact_rank(values);
}

}  // namespace gluedforms
