#include "gluedforms/linalg.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace gluedforms {

namespace {

Integer lcm_of_denominators(const RationalMatrix& m, std::size_t r) {
  Integer l = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) l = boost::multiprecision::lcm(l, denominator(m(r, c)));
  return l;
}

}  // namespace

Echelon echelon_form(const RationalMatrix& m) {
  Echelon e;
  e.rows = Matrix<Integer>(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer scale = lcm_of_denominators(m, r);
    for (std::size_t c = 0; c < m.cols(); ++c)
      e.rows(r, c) = numerator(m(r, c)) * (scale / denominator(m(r, c)));
  }

  auto& a = e.rows;
  Integer previous = 1;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
    std::size_t p = pivot_row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != pivot_row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(pivot_row, c));

    const Integer pivot = a(pivot_row, col);
    for (std::size_t r = pivot_row + 1; r < a.rows(); ++r) {
      const Integer lead = a(r, col);
      for (std::size_t c = col + 1; c < a.cols(); ++c) {
        Integer num = pivot * a(r, c) - lead * a(pivot_row, c);
        Integer q, rem;
        boost::multiprecision::divide_qr(num, previous, q, rem);
        if (rem != 0) throw std::logic_error("fraction-free elimination: inexact division");
        a(r, c) = q;
      }
      a(r, col) = 0;
    }
    previous = pivot;
    e.pivots.push_back(col);
    ++pivot_row;
  }
  return e;
}

std::size_t exact_rank(const RationalMatrix& m) { return echelon_form(m).rank(); }

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const Echelon e = echelon_form(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = e.rank(); i-- > 0;) {
      const std::size_t pc = e.pivots[i];
      Rational sum = 0;
      for (std::size_t c = pc + 1; c < n; ++c)
        if (v[c] != 0) sum += Rational(e.rows(i, c)) * v[c];
      v[pc] = -sum / Rational(e.rows(i, pc));
    }
    // primitive integer representative with v[free] > 0
    Integer l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, denominator(x));
    Integer g = 0;
    for (auto& x : v) {
      x *= Rational(l);
      g = boost::multiprecision::gcd(g, numerator(x));
    }
    if (g > 1)
      for (auto& x : v) x /= Rational(g);
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    for (std::size_t c = 0; c < n; ++c) {
      std::swap(a(p, c), a(col, c));
      std::swap(inv(p, c), inv(col, c));
    }
    const Rational pivot = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= pivot;
      inv(col, c) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

std::size_t numeric_rank(const Matrix<double>& m, double relative_cutoff) {
  if (m.empty()) return 0;
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > relative_cutoff * s(0)) ++rank;
  return rank;
}

double min_eigenvalue(const Matrix<double>& symmetric) {
  if (symmetric.empty()) return 0.0;
  Eigen::MatrixXd a(symmetric.rows(), symmetric.cols());
  for (std::size_t r = 0; r < symmetric.rows(); ++r)
    for (std::size_t c = 0; c < symmetric.cols(); ++c)
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = symmetric(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_exact(const ScalarMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_exact()) return false;
  return true;
}

RationalMatrix to_rational(const ScalarMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).exact();
  return out;
}

Matrix<double> to_double(const ScalarMatrix& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).to_double();
  return out;
}

ScalarMatrix to_scalar(const RationalMatrix& m) {
  ScalarMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Scalar(m(r, c));
  return out;
}

RankResult scalar_rank(const ScalarMatrix& m) {
  if (is_exact(m)) return {exact_rank(to_rational(m)), true};
  return {numeric_rank(to_double(m)), false};
}

}  // namespace gluedforms
