#pragma once

#include "gluedforms/expr.hpp"

#include <cstdint>
#include <span>

namespace gluedforms {

/// How an equality verdict was reached. Exact verdicts come from comparing
/// canonical polynomial forms; sampled verdicts from random evaluation.
enum class VerdictMode { Exact, Sampled };

const char* to_string(VerdictMode mode);

/// Sampled verdicts are Sampled if either input is.
inline VerdictMode combine(VerdictMode a, VerdictMode b) {
  return a == VerdictMode::Sampled || b == VerdictMode::Sampled ? VerdictMode::Sampled : VerdictMode::Exact;
}

struct EqualityResult {
  bool equal = true;
  VerdictMode mode = VerdictMode::Exact;
  explicit operator bool() const { return equal; }
};

struct SamplingOptions {
  std::uint64_t seed = 0;
  int samples = 32;
  double tolerance = 1e-9;
  int max_consecutive_failures = 64;
};

/// Decides a == b as functions on R^dim.
///
/// Exact-coefficient polynomials are compared by canonical form. Polynomials
/// with float coefficients are compared by canonical form with a relative
/// tolerance of a few ulps on each coefficient. Anything else is evaluated at
/// `samples` uniform points of [-1,1]^dim: one difference above `tolerance`
/// means unequal. Points where either side is non-finite are redrawn; more than
/// `max_consecutive_failures` redraws in a row throw EvaluationError.
EqualityResult expr_equal(const Expr& a, const Expr& b, std::size_t dim, const SamplingOptions& options = {});

/// Componentwise equality of two equally long lists.
EqualityResult exprs_equal(std::span<const Expr> a, std::span<const Expr> b, std::size_t dim,
                           const SamplingOptions& options = {});

/// True if `e` is identically zero in exact canonical form.
bool is_exact_zero(const Expr& e);

}  // namespace gluedforms
