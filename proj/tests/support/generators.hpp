#pragma once

// Random data for property tests, plus a small polynomial type that lives
// entirely on the test side. Oracles computed with TestPoly never go through
// the library's canonical forms.

#include "gluedforms/scene.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace gftest {

using gluedforms::Expr;
using gluedforms::Rational;
using gluedforms::Scalar;

/// Sparse polynomial: exponent vector -> coefficient, zero terms removed.
struct TestPoly {
  std::size_t vars = 0;
  std::map<std::vector<int>, Rational> terms;

  void add(std::vector<int> exps, const Rational& c) {
    exps.resize(vars, 0);
    auto& slot = terms[exps];
    slot += c;
    if (slot == 0) terms.erase(exps);
  }
  bool operator==(const TestPoly& o) const { return terms == o.terms; }

  Rational at(const std::vector<Rational>& x) const {
    Rational sum = 0;
    for (const auto& [e, c] : terms) {
      Rational term = c;
      for (std::size_t i = 0; i < vars; ++i)
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      sum += term;
    }
    return sum;
  }

  /// Keeps the terms free of variable `v`: the polynomial with x_v = 0.
  TestPoly with_zero(std::size_t v) const {
    TestPoly out{vars, {}};
    for (const auto& [e, c] : terms)
      if (e[v] == 0) out.terms.emplace(e, c);
    return out;
  }

  /// Built from the raw constructors only, so no folding or canonicalization.
  Expr expr() const {
    if (terms.empty()) return Expr::constant(Scalar(0));
    Expr sum;
    bool first = true;
    for (const auto& [e, c] : terms) {
      Expr term = Expr::constant(Scalar(c));
      for (std::size_t i = 0; i < vars; ++i)
        if (e[i] > 0) term = Expr::mul(term, e[i] == 1 ? Expr::variable(i) : Expr::pow(Expr::variable(i), e[i]));
      sum = first ? term : Expr::add(sum, term);
      first = false;
    }
    return sum;
  }
};

inline TestPoly operator+(TestPoly a, const TestPoly& b) {
  for (const auto& [e, c] : b.terms) a.add(e, c);
  return a;
}

inline TestPoly operator*(const TestPoly& a, const TestPoly& b) {
  TestPoly out{a.vars, {}};
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(a.vars);
      for (std::size_t i = 0; i < a.vars; ++i) e[i] = ea[i] + eb[i];
      out.add(e, ca * cb);
    }
  return out;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Small rationals p/q with |p| <= 9, 1 <= q <= 4.
  Rational rational() { return Rational(integer(-9, 9), integer(1, 4)); }
  Rational nonzero_rational() {
    Rational r = rational();
    while (r == 0) r = rational();
    return r;
  }

  std::vector<Rational> point(std::size_t dim) {
    std::vector<Rational> p;
    for (std::size_t i = 0; i < dim; ++i) p.push_back(rational());
    return p;
  }

  /// Up to `max_terms` random monomials of total degree <= degree.
  TestPoly poly(std::size_t vars, int degree, int max_terms = 4) {
    TestPoly p{vars, {}};
    const int n = integer(0, max_terms);
    for (int t = 0; t < n; ++t) {
      std::vector<int> e(vars, 0);
      int budget = integer(0, degree);
      for (int k = 0; k < budget && vars > 0; ++k) ++e[static_cast<std::size_t>(integer(0, static_cast<int>(vars) - 1))];
      p.add(e, nonzero_rational());
    }
    return p;
  }

  std::vector<TestPoly> polys(std::size_t count, std::size_t vars, int degree) {
    std::vector<TestPoly> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(poly(vars, degree));
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<Expr> exprs(const std::vector<TestPoly>& ps) {
  std::vector<Expr> out;
  for (const auto& p : ps) out.push_back(p.expr());
  return out;
}

inline TestPoly variable(std::size_t vars, std::size_t i) {
  TestPoly p{vars, {}};
  std::vector<int> e(vars, 0);
  e[i] = 1;
  p.add(e, 1);
  return p;
}

inline TestPoly constant(std::size_t vars, const Rational& c) {
  TestPoly p{vars, {}};
  p.add(std::vector<int>(vars, 0), c);
  return p;
}

inline std::string data_path(const std::string& name) { return std::string(GLUEDFORMS_TEST_DATA) + "/" + name; }

inline gluedforms::Scene fixture(const std::string& name) { return gluedforms::load_scene(data_path(name + ".scene")); }

}  // namespace gftest
