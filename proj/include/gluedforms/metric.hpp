#pragma once

#include "gluedforms/fibre.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gluedforms {

/// A field of symmetric d x d matrices on a piece; the pseudo-metric on its
/// cotangent fibres. Only the upper triangle is stored.
class PieceMetric {
 public:
  /// Throws DimensionError for a non-square matrix or one not matching the
  /// piece, and InvariantViolation when entry (i,j) differs from (j,i).
  PieceMetric(EuclideanPiece piece, const std::vector<std::vector<Expr>>& matrix);

  const EuclideanPiece& piece() const { return piece_; }
  std::size_t dim() const { return piece_.dim; }
  const Expr& entry(std::size_t i, std::size_t j) const;

  ScalarMatrix at(const Point& x) const;
  /// a^T G(x) b.
  Scalar pair(const Point& x, const std::vector<Scalar>& a, const std::vector<Scalar>& b) const;

  std::string str() const;

 private:
  EuclideanPiece piece_;
  std::vector<Expr> upper_;  // row-major upper triangle
};

/// Full rank at every sample point. The origin is always sampled; the other
/// points are random rationals in [-1, 1]^d.
bool check_metric_rank(const PieceMetric& g, int samples, std::uint64_t seed = 0);

struct MetricCompatibility {
  bool compatible = true;
  /// Exact when the verdict does not depend on which points of Y were
  /// sampled and all arithmetic was exact.
  VerdictMode mode = VerdictMode::Exact;
  std::size_t points_checked = 0;
  /// Description of the first violated basis pair.
  std::optional<std::string> violation;
};

/// At sampled y in Y (always the parameter origin, and t = -1, 1 when Y is a
/// line), compares u_i^T G1(y) u_j with v_i^T G2(f(y)) v_j over a basis
/// {(u_i, v_i)} of the compatible pairs. Equal up to 1e-9 for float data.
MetricCompatibility check_metrics_compatible(const GluedSpace& X, const PieceMetric& g1, const PieceMetric& g2,
                                             int samples, std::uint64_t seed = 0);

/// The induced pseudo-metric on Λ¹ of the glued space. The compatibility
/// verdict is recorded, not required.
struct GluedMetric {
  GluedSpace space;
  PieceMetric g1;
  PieceMetric g2;
  MetricCompatibility compatibility;
};

/// Throws InvariantViolation when either piece metric fails the rank check.
GluedMetric glue_metric(const GluedSpace& X, const PieceMetric& g1, const PieceMetric& g2, int samples,
                        std::uint64_t seed = 0);

/// g(x)(e1, e2):
///   g1(x)(rho1 e1, rho1 e2)                                   on Interior1,
///   g2(x)(rho2 e1, rho2 e2)                                   on Interior2,
///   (g1(f^-1 x)(rho1 e1, rho1 e2) + g2(x)(rho2 e1, rho2 e2)) / 2 on the glue locus.
/// Throws DomainError if e1 or e2 is not in the fibre over x.
Scalar evaluate_metric(const GluedMetric& gm, const GluedPoint& x, const FibreElement& e1, const FibreElement& e2);

/// Gram matrix of evaluate_metric on fibre_at(x).basis.
ScalarMatrix gram_matrix(const GluedMetric& gm, const GluedPoint& x);

/// Rank of the Gram matrix: exact for rational data, 1e-9 relative
/// singular-value cutoff otherwise.
RankResult gram_rank_at(const GluedMetric& gm, const GluedPoint& x);

}  // namespace gluedforms
