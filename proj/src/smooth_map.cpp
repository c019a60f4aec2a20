#include "gluedforms/smooth_map.hpp"

#include "gluedforms/errors.hpp"
#include "gluedforms/polynomial.hpp"

#include <cmath>
#include <random>

namespace gluedforms {

namespace {

bool defined_somewhere(const Expr& e, std::size_t dim) {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<double> point(dim);
  for (int attempt = 0; attempt < 64; ++attempt) {
    for (auto& x : point) x = coord(rng);
    if (std::isfinite(evaluate_float(e, point))) return true;
  }
  return false;
}

}  // namespace

SmoothMap::SmoothMap(std::size_t domain_dim, std::vector<Expr> components)
    : domain_dim_(domain_dim), components_(std::move(components)) {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const Expr& c = components_[i];
    if (c.variable_bound() > domain_dim_)
      throw DimensionError("component " + std::to_string(i) + " (" + c.str() + ") uses variables beyond domain R^" +
                           std::to_string(domain_dim_));
    if (c.has_division() && !defined_somewhere(c, domain_dim_))
      throw InvariantViolation("component " + std::to_string(i) + " (" + c.str() + ") is undefined on its domain");
  }
}

SmoothMap SmoothMap::identity(std::size_t dim) {
  std::vector<Expr> comps;
  for (std::size_t i = 0; i < dim; ++i) comps.push_back(Expr::variable(i));
  return SmoothMap(dim, std::move(comps));
}

SmoothMap SmoothMap::constant(std::size_t domain_dim, const std::vector<Scalar>& value) {
  std::vector<Expr> comps(value.begin(), value.end());
  return SmoothMap(domain_dim, std::move(comps));
}

Point SmoothMap::operator()(std::span<const Scalar> at) const {
  if (at.size() != domain_dim_)
    throw DimensionError("map on R^" + std::to_string(domain_dim_) + " applied to a point with " +
                         std::to_string(at.size()) + " coordinates");
  Point out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(evaluate(c, at));
  return out;
}

bool SmoothMap::is_affine() const {
  for (const auto& c : components_) {
    auto p = to_exact_polynomial(c);
    if (!p || p->total_degree() > 1) return false;
  }
  return true;
}

std::string SmoothMap::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += ", ";
    s += components_[i].str();
  }
  return s + ")";
}

SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner) {
  if (inner.codomain_dim() != outer.domain_dim())
    throw DimensionError("cannot compose: inner map lands in R^" + std::to_string(inner.codomain_dim()) +
                         ", outer map is defined on R^" + std::to_string(outer.domain_dim()));
  std::vector<Expr> comps;
  comps.reserve(outer.codomain_dim());
  for (const auto& c : outer.components()) comps.push_back(substitute(c, inner.components()));
  return SmoothMap(inner.domain_dim(), std::move(comps));
}

std::vector<std::vector<Expr>> jacobian_exprs(const SmoothMap& m) {
  std::vector<std::vector<Expr>> j(m.codomain_dim(), std::vector<Expr>(m.domain_dim()));
  for (std::size_t i = 0; i < m.codomain_dim(); ++i)
    for (std::size_t k = 0; k < m.domain_dim(); ++k) j[i][k] = differentiate(m[i], k);
  return j;
}

ScalarMatrix jacobian(const SmoothMap& m, std::span<const Scalar> at) {
  if (at.size() != m.domain_dim())
    throw DimensionError("jacobian of a map on R^" + std::to_string(m.domain_dim()) + " at a point with " +
                         std::to_string(at.size()) + " coordinates");
  auto exprs = jacobian_exprs(m);
  ScalarMatrix j(m.codomain_dim(), m.domain_dim());
  std::vector<Scalar> flat;
  for (std::size_t i = 0; i < m.codomain_dim(); ++i)
    for (std::size_t k = 0; k < m.domain_dim(); ++k) flat.push_back(evaluate(exprs[i][k], at));
  // constant partials evaluate exactly even at float points; keep one mode per matrix
  flat = unify_mode(std::move(flat));
  for (std::size_t i = 0; i < m.codomain_dim(); ++i)
    for (std::size_t k = 0; k < m.domain_dim(); ++k) j(i, k) = flat[i * m.domain_dim() + k];
  return j;
}

EqualityResult maps_equal(const SmoothMap& a, const SmoothMap& b, const SamplingOptions& options) {
  if (a.domain_dim() != b.domain_dim() || a.codomain_dim() != b.codomain_dim())
    throw DimensionError("maps have different shapes");
  return exprs_equal(a.components(), b.components(), a.domain_dim(), options);
}

}  // namespace gluedforms
