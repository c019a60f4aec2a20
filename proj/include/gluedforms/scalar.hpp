#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <variant>
#include <vector>

namespace gluedforms {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// A number that is either an exact rational or a double.
///
/// Arithmetic never changes mode on its own: combining an exact and a
/// floating operand throws ModeMismatch. Callers that want float results
/// promote explicitly with `as_float()`.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational r) : value_(std::move(r)) {}  // NOLINT(implicit)
  Scalar(int v) : value_(Rational(v)) {}        // NOLINT(implicit)
  Scalar(long long v) : value_(Rational(v)) {}  // NOLINT(implicit)

  static Scalar real(double v) {
    Scalar s;
    s.value_ = v;
    return s;
  }

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  /// Throws ModeMismatch on a float scalar.
  const Rational& exact() const;
  double to_double() const;
  Scalar as_float() const { return real(to_double()); }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Exact division by zero throws EvaluationError; float division follows IEEE.
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  /// Structural identity: same mode and same value.
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

  /// "3", "-1/2" for exact values; shortest round-tripping decimal for floats,
  /// always containing '.', 'e', "inf" or "nan".
  std::string str() const;

 private:
  std::variant<Rational, double> value_;
};

Scalar pow(const Scalar& base, int exponent);

/// True when every scalar in the range is exact.
bool all_exact(const std::vector<Scalar>& values);

/// Returns the values unchanged if all are exact, otherwise all promoted to float.
std::vector<Scalar> unify_mode(std::vector<Scalar> values);

std::string to_string(const Rational& r);

}  // namespace gluedforms
