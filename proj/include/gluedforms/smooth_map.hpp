#pragma once

#include "gluedforms/equality.hpp"
#include "gluedforms/expr.hpp"
#include "gluedforms/linalg.hpp"

#include <span>
#include <string>
#include <vector>

namespace gluedforms {

using Point = std::vector<Scalar>;

/// A map R^domain_dim -> R^codomain_dim given by one expression per
/// output coordinate.
class SmoothMap {
 public:
  SmoothMap() = default;
  /// Throws DimensionError if a component uses a variable >= domain_dim and
  /// InvariantViolation if a component with division has no finite value at
  /// any of 64 sampled points.
  SmoothMap(std::size_t domain_dim, std::vector<Expr> components);

  static SmoothMap identity(std::size_t dim);
  static SmoothMap constant(std::size_t domain_dim, const std::vector<Scalar>& value);

  std::size_t domain_dim() const { return domain_dim_; }
  std::size_t codomain_dim() const { return components_.size(); }
  const std::vector<Expr>& components() const { return components_; }
  const Expr& operator[](std::size_t i) const { return components_[i]; }

  Point operator()(std::span<const Scalar> at) const;

  /// True when every component is an exact polynomial of degree <= 1.
  bool is_affine() const;

  std::string str() const;

 private:
  std::size_t domain_dim_ = 0;
  std::vector<Expr> components_;
};

/// outer ∘ inner. Throws DimensionError unless inner.codomain_dim == outer.domain_dim.
SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

/// codomain_dim x domain_dim matrix of partial derivatives evaluated at `at`.
ScalarMatrix jacobian(const SmoothMap& m, std::span<const Scalar> at);

/// Symbolic partial derivatives, entry (i, j) = d m_i / d x_j.
std::vector<std::vector<Expr>> jacobian_exprs(const SmoothMap& m);

/// Componentwise expr_equal on the common domain.
EqualityResult maps_equal(const SmoothMap& a, const SmoothMap& b, const SamplingOptions& options = {});

}  // namespace gluedforms
