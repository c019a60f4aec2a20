#include "gluedforms/equality.hpp"

#include "gluedforms/errors.hpp"
#include "gluedforms/polynomial.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace gluedforms {

const char* to_string(VerdictMode mode) { return mode == VerdictMode::Exact ? "exact" : "sampled"; }

namespace {

bool float_canonical_equal(const FloatPolynomial& a, const FloatPolynomial& b) {
  double scale = 1.0;
  for (const auto& [m, c] : a.terms()) scale = std::max(scale, std::abs(c));
  for (const auto& [m, c] : b.terms()) scale = std::max(scale, std::abs(c));
  const double limit = 64 * std::numeric_limits<double>::epsilon() * scale;
  const FloatPolynomial diff = a - b;
  for (const auto& [m, c] : diff.terms())
    if (std::abs(c) > limit) return false;
  return true;
}

bool sampled_equal(const Expr& a, const Expr& b, std::size_t dim, const SamplingOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<double> point(dim);
  int failures = 0;
  for (int s = 0; s < options.samples;) {
    for (auto& x : point) x = coord(rng);
    double va = evaluate_float(a, point);
    double vb = evaluate_float(b, point);
    if (!std::isfinite(va) || !std::isfinite(vb)) {
      if (++failures > options.max_consecutive_failures)
        throw EvaluationError("equality sampling hit poles " + std::to_string(failures) + " times in a row");
      continue;
    }
    failures = 0;
    if (std::abs(va - vb) > options.tolerance) return false;
    ++s;
  }
  return true;
}

}  // namespace

EqualityResult expr_equal(const Expr& a, const Expr& b, std::size_t dim, const SamplingOptions& options) {
  if (a.variable_bound() > dim || b.variable_bound() > dim)
    throw DimensionError("expression uses variables beyond dimension " + std::to_string(dim));

  if (auto pa = to_exact_polynomial(a)) {
    if (auto pb = to_exact_polynomial(b)) return {*pa == *pb, VerdictMode::Exact};
  }
  if (auto pa = to_float_polynomial(a)) {
    if (auto pb = to_float_polynomial(b)) return {float_canonical_equal(*pa, *pb), VerdictMode::Exact};
  }
  return {sampled_equal(a, b, dim, options), VerdictMode::Sampled};
}

EqualityResult exprs_equal(std::span<const Expr> a, std::span<const Expr> b, std::size_t dim,
                           const SamplingOptions& options) {
  if (a.size() != b.size())
    throw DimensionError("comparing lists of length " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  EqualityResult result;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto r = expr_equal(a[i], b[i], dim, options);
    result.mode = combine(result.mode, r.mode);
    if (!r.equal) {
      result.equal = false;
      return result;
    }
  }
  return result;
}

bool is_exact_zero(const Expr& e) {
  auto p = to_exact_polynomial(e);
  return p && p->is_zero();
}

}  // namespace gluedforms
