#pragma once

#include "gluedforms/expr.hpp"

#include <map>
#include <optional>
#include <vector>

namespace gluedforms {

/// Exponent vector with trailing zeros removed, so each monomial has exactly
/// one representation.
using Monomial = std::vector<unsigned>;

unsigned degree(const Monomial& m);

/// Expanded polynomial: sorted monomials with non-zero coefficients.
/// `Coeff` is Rational for exact data and double for floating data.
template <class Coeff>
class Polynomial {
 public:
  using Terms = std::map<Monomial, Coeff>;

  Polynomial() = default;
  explicit Polynomial(Coeff c);
  static Polynomial variable(std::size_t index);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Coeff constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  /// Coefficient of a monomial (zero if absent).
  Coeff coefficient(const Monomial& m) const;
  void add_term(Monomial m, Coeff c);

  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    for (const auto& [m, c] : b.terms_) a.add_term(m, c);
    return a;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.times(b); }
  Polynomial times(const Polynomial& other) const;
  Polynomial scaled(const Coeff& c) const;
  Polynomial power(unsigned n) const;

  /// Replaces x_i by images[i].
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  Coeff evaluate(const std::vector<Coeff>& point) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  Terms terms_;
};

using ExactPolynomial = Polynomial<Rational>;
using FloatPolynomial = Polynomial<double>;

extern template class Polynomial<Rational>;
extern template class Polynomial<double>;

/// Canonical form of the polynomial fragment: expressions without
/// transcendental nodes or float constants whose divisions are by non-zero
/// constants. Returns nullopt outside the fragment.
std::optional<ExactPolynomial> to_exact_polynomial(const Expr& e);

/// As above but accepting float constants; every coefficient is a double.
std::optional<FloatPolynomial> to_float_polynomial(const Expr& e);

/// Sum of coefficient * monomial terms in monomial order.
Expr to_expr(const ExactPolynomial& p);

/// Canonical expanded form for exact polynomials; other expressions unchanged.
Expr canonical(const Expr& e);

}  // namespace gluedforms
