#pragma once

#include "gluedforms/scalar.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gluedforms {

enum class Op { Constant, Variable, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp };

/// Immutable scalar expression over variables x0, x1, ...
///
/// Nodes are shared; copying an Expr is cheap. The named constructors
/// (`add`, `mul`, ...) build exactly the requested node. The arithmetic
/// operators fold constants and drop neutral elements, which keeps the
/// output of differentiation and substitution small.
class Expr {
 public:
  Expr();  // constant 0
  Expr(Scalar value);  // NOLINT(implicit)
  Expr(int value) : Expr(Scalar(value)) {}  // NOLINT(implicit)

  static Expr constant(Scalar value) { return Expr(std::move(value)); }
  static Expr variable(std::size_t index);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr pow(Expr base, int exponent);
  static Expr sin(Expr arg);
  static Expr cos(Expr arg);
  static Expr exp(Expr arg);

  Op op() const;
  /// Constant nodes only.
  const Scalar& value() const;
  /// Variable nodes only.
  std::size_t index() const;
  /// Pow nodes only.
  int exponent() const;
  /// First operand of binary nodes, base of Pow, argument of functions.
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_constant() const { return op() == Op::Constant; }
  bool is_zero() const;
  bool is_one() const;

  /// One more than the largest variable index used; 0 for closed expressions.
  std::size_t variable_bound() const;
  bool has_float_constant() const;
  bool has_transcendental() const;
  /// True if evaluation can divide by something: Div or a negative power.
  bool has_division() const;

  /// Parseable text; parse(str()) reproduces the tree up to the folding of
  /// non-integer rational constants, which print as quotients.
  std::string str() const;

  /// Structural identity of trees.
  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Folding power: x^0 = 1, x^1 = x, constants evaluated.
Expr power(const Expr& base, int exponent);

/// Partial derivative with respect to x_var.
Expr differentiate(const Expr& e, std::size_t var);

/// Replaces x_i by replacements[i]. Every variable of `e` must have a replacement.
Expr substitute(const Expr& e, std::span<const Expr> replacements);

/// Evaluates at a point. Exact when the expression has no float constants or
/// transcendental nodes and every coordinate is exact; floating otherwise.
/// Throws EvaluationError on poles and non-finite results.
Scalar evaluate(const Expr& e, std::span<const Scalar> point);

/// Floating evaluation; returns a non-finite value at poles instead of throwing.
double evaluate_float(const Expr& e, std::span<const double> point);

}  // namespace gluedforms
