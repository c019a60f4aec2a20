#include "gluedforms/expr.hpp"

#include "gluedforms/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace gluedforms {

struct Expr::Node {
  Op op = Op::Constant;
  Scalar value;
  std::size_t index = 0;
  int exponent = 0;
  // children; empty for leaves
  Expr a{std::shared_ptr<const Node>()};
  Expr b{std::shared_ptr<const Node>()};
  // cached properties of the subtree
  std::size_t bound = 0;
  bool has_float = false;
  bool has_transcendental = false;
  bool has_division = false;
};

namespace {

std::shared_ptr<const Expr::Node> make_node(Expr::Node n) {
  return std::make_shared<const Expr::Node>(std::move(n));
}

}  // namespace

Expr::Expr() : Expr(Scalar(0)) {}

Expr::Expr(Scalar value) {
  Node n;
  n.op = Op::Constant;
  n.has_float = !value.is_exact();
  n.value = std::move(value);
  node_ = make_node(std::move(n));
}

Expr Expr::variable(std::size_t index) {
  Node n;
  n.op = Op::Variable;
  n.index = index;
  n.bound = index + 1;
  return Expr(make_node(std::move(n)));
}

namespace {

Expr::Node binary_node(Op op, Expr a, Expr b) {
  Expr::Node n;
  n.op = op;
  n.bound = std::max(a.variable_bound(), b.variable_bound());
  n.has_float = a.has_float_constant() || b.has_float_constant();
  n.has_transcendental = a.has_transcendental() || b.has_transcendental();
  n.has_division = op == Op::Div || a.has_division() || b.has_division();
  n.a = std::move(a);
  n.b = std::move(b);
  return n;
}

Expr::Node unary_node(Op op, Expr a) {
  Expr::Node n;
  n.op = op;
  n.bound = a.variable_bound();
  n.has_float = a.has_float_constant();
  n.has_transcendental = op == Op::Sin || op == Op::Cos || op == Op::Exp || a.has_transcendental();
  n.has_division = a.has_division();
  n.a = std::move(a);
  return n;
}

}  // namespace

Expr Expr::add(Expr a, Expr b) { return Expr(make_node(binary_node(Op::Add, std::move(a), std::move(b)))); }
Expr Expr::sub(Expr a, Expr b) { return Expr(make_node(binary_node(Op::Sub, std::move(a), std::move(b)))); }
Expr Expr::mul(Expr a, Expr b) { return Expr(make_node(binary_node(Op::Mul, std::move(a), std::move(b)))); }
Expr Expr::div(Expr a, Expr b) { return Expr(make_node(binary_node(Op::Div, std::move(a), std::move(b)))); }
Expr Expr::sin(Expr arg) { return Expr(make_node(unary_node(Op::Sin, std::move(arg)))); }
Expr Expr::cos(Expr arg) { return Expr(make_node(unary_node(Op::Cos, std::move(arg)))); }
Expr Expr::exp(Expr arg) { return Expr(make_node(unary_node(Op::Exp, std::move(arg)))); }

Expr Expr::pow(Expr base, int exponent) {
  Node n = unary_node(Op::Pow, std::move(base));
  n.exponent = exponent;
  n.has_division = n.has_division || exponent < 0;
  return Expr(make_node(std::move(n)));
}

Op Expr::op() const { return node_->op; }

const Scalar& Expr::value() const {
  assert(node_->op == Op::Constant);
  return node_->value;
}

std::size_t Expr::index() const {
  assert(node_->op == Op::Variable);
  return node_->index;
}

int Expr::exponent() const {
  assert(node_->op == Op::Pow);
  return node_->exponent;
}

const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }

bool Expr::is_zero() const { return is_constant() && node_->value.is_zero(); }
bool Expr::is_one() const { return is_constant() && node_->value.is_one(); }
std::size_t Expr::variable_bound() const { return node_->bound; }
bool Expr::has_float_constant() const { return node_->has_float; }
bool Expr::has_transcendental() const { return node_->has_transcendental; }
bool Expr::has_division() const { return node_->has_division; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op) return false;
  switch (x.op) {
    case Op::Constant: return x.value == y.value;
    case Op::Variable: return x.index == y.index;
    case Op::Pow: return x.exponent == y.exponent && x.a == y.a;
    case Op::Sin:
    case Op::Cos:
    case Op::Exp: return x.a == y.a;
    default: return x.a == y.a && x.b == y.b;
  }
}

// ---------------------------------------------------------------------------
// Folding arithmetic

namespace {

bool same_mode_constants(const Expr& a, const Expr& b) {
  return a.is_constant() && b.is_constant() && a.value().is_exact() == b.value().is_exact();
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (same_mode_constants(a, b)) return Expr(a.value() + b.value());
  return Expr::add(a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (same_mode_constants(a, b)) return Expr(a.value() - b.value());
  return Expr::sub(a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() && a.value().is_exact()) return a;
  if (b.is_zero() && b.value().is_exact()) return b;
  if (a.is_one() && a.value().is_exact()) return b;
  if (b.is_one() && b.value().is_exact()) return a;
  if (same_mode_constants(a, b)) return Expr(a.value() * b.value());
  return Expr::mul(a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_one() && b.value().is_exact()) return a;
  if (a.is_zero() && a.value().is_exact() && !(b.is_constant() && b.is_zero())) return a;
  if (same_mode_constants(a, b) && !b.value().is_zero()) return Expr(a.value() / b.value());
  return Expr::div(a, b);
}

Expr Expr::operator-() const {
  if (is_constant()) return Expr(-value());
  return Expr::mul(Expr(-1), *this);
}

Expr power(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_constant() && !(base.is_zero() && exponent < 0)) return Expr(pow(base.value(), exponent));
  return Expr::pow(base, exponent);
}

// ---------------------------------------------------------------------------
// Calculus

Expr differentiate(const Expr& e, std::size_t var) {
  if (e.variable_bound() <= var) return Expr(0);
  switch (e.op()) {
    case Op::Constant: return Expr(0);
    case Op::Variable: return Expr(e.index() == var ? 1 : 0);
    case Op::Add: return differentiate(e.lhs(), var) + differentiate(e.rhs(), var);
    case Op::Sub: return differentiate(e.lhs(), var) - differentiate(e.rhs(), var);
    case Op::Mul:
      return differentiate(e.lhs(), var) * e.rhs() + e.lhs() * differentiate(e.rhs(), var);
    case Op::Div: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      return (differentiate(u, var) * v - u * differentiate(v, var)) / power(v, 2);
    }
    case Op::Pow: {
      int n = e.exponent();
      return Expr(n) * power(e.lhs(), n - 1) * differentiate(e.lhs(), var);
    }
    case Op::Sin: return Expr::cos(e.lhs()) * differentiate(e.lhs(), var);
    case Op::Cos: return -(Expr::sin(e.lhs()) * differentiate(e.lhs(), var));
    case Op::Exp: return e * differentiate(e.lhs(), var);
  }
  return Expr(0);
}

Expr substitute(const Expr& e, std::span<const Expr> replacements) {
  if (e.variable_bound() > replacements.size())
    throw DimensionError("substitution needs " + std::to_string(e.variable_bound()) +
                         " replacements, got " + std::to_string(replacements.size()));
  if (e.variable_bound() == 0) return e;
  switch (e.op()) {
    case Op::Constant: return e;
    case Op::Variable: return replacements[e.index()];
    case Op::Add: return substitute(e.lhs(), replacements) + substitute(e.rhs(), replacements);
    case Op::Sub: return substitute(e.lhs(), replacements) - substitute(e.rhs(), replacements);
    case Op::Mul: return substitute(e.lhs(), replacements) * substitute(e.rhs(), replacements);
    case Op::Div: return substitute(e.lhs(), replacements) / substitute(e.rhs(), replacements);
    case Op::Pow: return power(substitute(e.lhs(), replacements), e.exponent());
    case Op::Sin: return Expr::sin(substitute(e.lhs(), replacements));
    case Op::Cos: return Expr::cos(substitute(e.lhs(), replacements));
    case Op::Exp: return Expr::exp(substitute(e.lhs(), replacements));
  }
  return e;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Scalar eval_exact(const Expr& e, std::span<const Scalar> point) {
  switch (e.op()) {
    case Op::Constant: return e.value();
    case Op::Variable: return point[e.index()];
    case Op::Add: return eval_exact(e.lhs(), point) + eval_exact(e.rhs(), point);
    case Op::Sub: return eval_exact(e.lhs(), point) - eval_exact(e.rhs(), point);
    case Op::Mul: return eval_exact(e.lhs(), point) * eval_exact(e.rhs(), point);
    case Op::Div: return eval_exact(e.lhs(), point) / eval_exact(e.rhs(), point);
    case Op::Pow: return pow(eval_exact(e.lhs(), point), e.exponent());
    default: break;
  }
  throw ModeMismatch("transcendental node in exact evaluation");
}

}  // namespace

double evaluate_float(const Expr& e, std::span<const double> point) {
  switch (e.op()) {
    case Op::Constant: return e.value().to_double();
    case Op::Variable: return point[e.index()];
    case Op::Add: return evaluate_float(e.lhs(), point) + evaluate_float(e.rhs(), point);
    case Op::Sub: return evaluate_float(e.lhs(), point) - evaluate_float(e.rhs(), point);
    case Op::Mul: return evaluate_float(e.lhs(), point) * evaluate_float(e.rhs(), point);
    case Op::Div: return evaluate_float(e.lhs(), point) / evaluate_float(e.rhs(), point);
    case Op::Pow: return std::pow(evaluate_float(e.lhs(), point), e.exponent());
    case Op::Sin: return std::sin(evaluate_float(e.lhs(), point));
    case Op::Cos: return std::cos(evaluate_float(e.lhs(), point));
    case Op::Exp: return std::exp(evaluate_float(e.lhs(), point));
  }
  return 0.0;
}

Scalar evaluate(const Expr& e, std::span<const Scalar> point) {
  if (e.variable_bound() > point.size())
    throw DimensionError("point has " + std::to_string(point.size()) + " coordinates, expression uses " +
                         std::to_string(e.variable_bound()));
  bool exact = !e.has_float_constant() && !e.has_transcendental();
  for (std::size_t i = 0; exact && i < e.variable_bound(); ++i) exact = point[i].is_exact();
  if (exact) return eval_exact(e, point);

  std::vector<double> p(e.variable_bound());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = point[i].to_double();
  double v = evaluate_float(e, p);
  if (!std::isfinite(v)) throw EvaluationError("non-finite value while evaluating " + e.str());
  return Scalar::real(v);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// 1: sums, 2: products, 3: powers, 4: atoms
int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Pow: return 3;
    case Op::Constant: {
      const Scalar& v = e.value();
      if (v.is_exact()) return v.exact() >= 0 && denominator(v.exact()) == 1 ? 4 : 0;
      return v.to_double() >= 0 && std::isfinite(v.to_double()) ? 4 : 0;
    }
    default: return 4;
  }
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Constant:
      // negative and fractional constants get parentheses from the enclosing operator
      out += e.value().str();
      return;
    case Op::Variable:
      out += 'x';
      out += std::to_string(e.index());
      return;
    case Op::Add:
    case Op::Sub:
      print_wrapped(e.lhs(), precedence(e.lhs()) < 1, out);
      out += e.op() == Op::Add ? " + " : " - ";
      print_wrapped(e.rhs(), precedence(e.rhs()) <= 1, out);
      return;
    case Op::Mul:
    case Op::Div:
      print_wrapped(e.lhs(), precedence(e.lhs()) < 2, out);
      out += e.op() == Op::Mul ? "*" : "/";
      print_wrapped(e.rhs(), precedence(e.rhs()) <= 2, out);
      return;
    case Op::Pow:
      print_wrapped(e.lhs(), precedence(e.lhs()) < 4, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
      out += e.op() == Op::Sin ? "sin(" : e.op() == Op::Cos ? "cos(" : "exp(";
      print(e.lhs(), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print(*this, out);
  return out;
}

}  // namespace gluedforms
