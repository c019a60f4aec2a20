#include "gluedforms/metric.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gluedforms {

namespace {

std::size_t upper_index(std::size_t d, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * d - i * (i + 1) / 2 + j;
}

Scalar bilinear(const ScalarMatrix& g, const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> all;
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) all.push_back(g(r, c));
  all.insert(all.end(), a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  const bool exact = all_exact(all);
  auto mode = [exact](const Scalar& s) { return exact ? s : s.as_float(); };
  Scalar sum = exact ? Scalar(0) : Scalar::real(0.0);
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) sum = sum + mode(a[r]) * mode(g(r, c)) * mode(b[c]);
  return sum;
}

bool scalars_equal(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.to_double() - b.to_double()) <= 1e-9;
}

ExactPoint random_rational_point(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> numerator(-1024, 1024);
  ExactPoint p;
  for (std::size_t i = 0; i < dim; ++i) p.emplace_back(numerator(rng), 1024);
  return p;
}

}  // namespace

PieceMetric::PieceMetric(EuclideanPiece piece, const std::vector<std::vector<Expr>>& matrix)
    : piece_(std::move(piece)) {
  const std::size_t d = piece_.dim;
  if (matrix.size() != d)
    throw DimensionError("metric on R^" + std::to_string(d) + " needs " + std::to_string(d) + " rows");
  for (const auto& row : matrix)
    if (row.size() != d) throw DimensionError("metric matrix is not square");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      if (matrix[i][j].variable_bound() > d)
        throw DimensionError("metric entry " + matrix[i][j].str() + " uses variables beyond R^" + std::to_string(d));
      if (j > i && !expr_equal(matrix[i][j], matrix[j][i], d).equal)
        throw InvariantViolation("metric is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      upper_.push_back(matrix[i][j]);
    }
}

const Expr& PieceMetric::entry(std::size_t i, std::size_t j) const { return upper_[upper_index(dim(), i, j)]; }

ScalarMatrix PieceMetric::at(const Point& x) const {
  if (x.size() != dim()) throw DimensionError("metric evaluated at a point of the wrong dimension");
  std::vector<Scalar> values;
  for (const auto& e : upper_) values.push_back(evaluate(e, x));
  values = unify_mode(std::move(values));
  ScalarMatrix g(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) g(i, j) = values[upper_index(dim(), i, j)];
  return g;
}

Scalar PieceMetric::pair(const Point& x, const std::vector<Scalar>& a, const std::vector<Scalar>& b) const {
  if (a.size() != dim() || b.size() != dim()) throw DimensionError("covector of the wrong dimension");
  return bilinear(at(x), a, b);
}

std::string PieceMetric::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < dim(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < dim(); ++j) {
      if (j) s += ", ";
      s += entry(i, j).str();
    }
    s += "]";
  }
  return s + "]";
}

bool check_metric_rank(const PieceMetric& g, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("metric rank check needs at least one sample");
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const ExactPoint x = s == 0 ? ExactPoint(g.dim(), Rational(0)) : random_rational_point(rng, g.dim());
    if (scalar_rank(g.at(to_point(x))).rank != g.dim()) return false;
  }
  return true;
}

MetricCompatibility check_metrics_compatible(const GluedSpace& X, const PieceMetric& g1, const PieceMetric& g2,
                                             int samples, std::uint64_t seed) {
  if (!(g1.piece() == X.piece1) || !(g2.piece() == X.piece2))
    throw DimensionError("metrics do not live on the pieces of the glued space");
  const auto& Y = X.gluing.domain();
  const std::size_t k = Y.dim();

  std::vector<ExactPoint> params{ExactPoint(k, Rational(0))};
  if (k == 1) {
    params.push_back({Rational(-1)});
    params.push_back({Rational(1)});
  }
  std::mt19937_64 rng(seed);
  while (k > 0 && params.size() < static_cast<std::size_t>(std::max(samples, 1)))
    params.push_back(random_rational_point(rng, k));

  MetricCompatibility result;
  bool exact = true;
  for (const auto& t : params) {
    const ExactPoint y = Y.point_at(t);
    const ExactPoint fy = X.gluing.apply(y);
    const FibreDescription fd = fibre_at(X, GluedPoint{PiecePoint{Side::P2, fy}, false});
    const ScalarMatrix G1 = g1.at(to_point(y));
    const ScalarMatrix G2 = g2.at(to_point(fy));
    ++result.points_checked;
    for (std::size_t i = 0; i < fd.basis.size(); ++i)
      for (std::size_t j = i; j < fd.basis.size(); ++j) {
        const auto& ei = std::get<GlueFibreElement>(fd.basis[i]);
        const auto& ej = std::get<GlueFibreElement>(fd.basis[j]);
        const Scalar lhs = bilinear(G1, ei.a1.components, ej.a1.components);
        const Scalar rhs = bilinear(G2, ei.a2.components, ej.a2.components);
        exact = exact && lhs.is_exact() && rhs.is_exact();
        if (!scalars_equal(lhs, rhs)) {
          result.compatible = false;
          result.mode = exact ? VerdictMode::Exact : VerdictMode::Sampled;
          std::string at;
          for (const auto& c : y) at += (at.empty() ? "" : ",") + to_string(c);
          result.violation = "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ") at y=(" + at +
                             "): g1 gives " + lhs.str() + ", g2 gives " + rhs.str();
          return result;
        }
      }
  }
  result.mode = exact && k == 0 ? VerdictMode::Exact : VerdictMode::Sampled;
  return result;
}

GluedMetric glue_metric(const GluedSpace& X, const PieceMetric& g1, const PieceMetric& g2, int samples,
                        std::uint64_t seed) {
  if (!check_metric_rank(g1, samples, seed)) throw InvariantViolation("metric on " + g1.piece().name + " is not of full rank");
  if (!check_metric_rank(g2, samples, seed)) throw InvariantViolation("metric on " + g2.piece().name + " is not of full rank");
  return GluedMetric{X, g1, g2, check_metrics_compatible(X, g1, g2, samples, seed)};
}

Scalar evaluate_metric(const GluedMetric& gm, const GluedPoint& x, const FibreElement& e1, const FibreElement& e2) {
  const GluedSpace& X = gm.space;
  const GluedPoint c = canonicalize(X, x);
  const PointClass cls = classify_point(X, c);

  if (cls == PointClass::GlueLocus) {
    const auto* a = std::get_if<GlueFibreElement>(&e1);
    const auto* b = std::get_if<GlueFibreElement>(&e2);
    if (!a || !b || !(a->a2.base == c.rep) || !(b->a2.base == c.rep))
      throw DomainError("fibre elements do not lie over the glue-locus point");
    const Covector a1 = rho1(X, e1), b1 = rho1(X, e2);
    const Covector a2 = rho2(X, e1), b2 = rho2(X, e2);
    const Scalar s1 = gm.g1.pair(to_point(a1.base.coords), a1.components, b1.components);
    const Scalar s2 = gm.g2.pair(to_point(c.rep.coords), a2.components, b2.components);
    if (s1.is_exact() && s2.is_exact()) return (s1 + s2) / Scalar(2);
    return Scalar::real((s1.to_double() + s2.to_double()) / 2.0);
  }

  const auto* a = std::get_if<Covector>(&e1);
  const auto* b = std::get_if<Covector>(&e2);
  if (!a || !b || !(a->base == c.rep) || !(b->base == c.rep))
    throw DomainError("fibre elements do not lie over the point");
  if (cls == PointClass::Interior1) {
    const Covector u = rho1(X, e1), v = rho1(X, e2);
    return gm.g1.pair(to_point(c.rep.coords), u.components, v.components);
  }
  const Covector u = rho2(X, e1), v = rho2(X, e2);
  return gm.g2.pair(to_point(c.rep.coords), u.components, v.components);
}

ScalarMatrix gram_matrix(const GluedMetric& gm, const GluedPoint& x) {
  const FibreDescription fd = fibre_at(gm.space, x);
  const std::size_t n = fd.basis.size();
  std::vector<Scalar> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) entries.push_back(evaluate_metric(gm, fd.point, fd.basis[i], fd.basis[j]));
  entries = unify_mode(std::move(entries));
  ScalarMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = entries[i * n + j];
  return g;
}

RankResult gram_rank_at(const GluedMetric& gm, const GluedPoint& x) { return scalar_rank(gram_matrix(gm, x)); }

}  // namespace gluedforms
