#include "gluedforms/scalar.hpp"

#include "gluedforms/errors.hpp"

#include <charconv>
#include <cmath>

namespace gluedforms {

namespace {

[[noreturn]] void mixed(const char* op) {
  throw ModeMismatch(std::string("exact and floating scalars mixed in '") + op + "'");
}

}  // namespace

const Rational& Scalar::exact() const {
  if (auto* r = std::get_if<Rational>(&value_)) return *r;
  throw ModeMismatch("exact value requested from a floating scalar");
}

double Scalar::to_double() const {
  if (auto* r = std::get_if<Rational>(&value_)) return r->convert_to<double>();
  return std::get<double>(value_);
}

bool Scalar::is_zero() const {
  if (auto* r = std::get_if<Rational>(&value_)) return r->is_zero();
  return std::get<double>(value_) == 0.0;
}

bool Scalar::is_one() const {
  if (auto* r = std::get_if<Rational>(&value_)) return *r == 1;
  return std::get<double>(value_) == 1.0;
}

Scalar Scalar::operator-() const {
  if (auto* r = std::get_if<Rational>(&value_)) return Scalar(Rational(-*r));
  return real(-std::get<double>(value_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) mixed("+");
  if (a.is_exact()) return Scalar(Rational(a.exact() + b.exact()));
  return Scalar::real(std::get<double>(a.value_) + std::get<double>(b.value_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) mixed("-");
  if (a.is_exact()) return Scalar(Rational(a.exact() - b.exact()));
  return Scalar::real(std::get<double>(a.value_) - std::get<double>(b.value_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) mixed("*");
  if (a.is_exact()) return Scalar(Rational(a.exact() * b.exact()));
  return Scalar::real(std::get<double>(a.value_) * std::get<double>(b.value_));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) mixed("/");
  if (a.is_exact()) {
    if (b.exact().is_zero()) throw EvaluationError("division by zero");
    return Scalar(Rational(a.exact() / b.exact()));
  }
  return Scalar::real(std::get<double>(a.value_) / std::get<double>(b.value_));
}

Scalar pow(const Scalar& base, int exponent) {
  if (!base.is_exact()) return Scalar::real(std::pow(base.to_double(), exponent));
  if (exponent < 0) {
    if (base.is_zero()) throw EvaluationError("zero raised to a negative power");
    return Scalar(1) / pow(base, -exponent);
  }
  Rational result = 1;
  Rational b = base.exact();
  for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
    if (e & 1U) result *= b;
    if (e > 1) b *= b;
  }
  return Scalar(std::move(result));
}

bool all_exact(const std::vector<Scalar>& values) {
  for (const auto& v : values)
    if (!v.is_exact()) return false;
  return true;
}

std::vector<Scalar> unify_mode(std::vector<Scalar> values) {
  if (all_exact(values)) return values;
  for (auto& v : values) v = v.as_float();
  return values;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string Scalar::str() const {
  if (auto* r = std::get_if<Rational>(&value_)) return to_string(*r);
  double v = std::get<double>(value_);
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace gluedforms
