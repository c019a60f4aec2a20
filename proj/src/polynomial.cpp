#include "gluedforms/polynomial.hpp"

#include <algorithm>

#include <numeric>

namespace gluedforms {

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial product(const Monomial& a, const Monomial& b) {
  Monomial m(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) m[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) m[i] += b[i];
  return m;
}

template <class Coeff>
bool is_zero_coeff(const Coeff& c) {
  return c == Coeff(0);
}

}  // namespace

unsigned degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0U); }

template <class Coeff>
Polynomial<Coeff>::Polynomial(Coeff c) {
  if (!is_zero_coeff(c)) terms_.emplace(Monomial{}, std::move(c));
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::variable(std::size_t index) {
  Polynomial p;
  Monomial m(index + 1, 0);
  m[index] = 1;
  p.terms_.emplace(std::move(m), Coeff(1));
  return p;
}

template <class Coeff>
bool Polynomial<Coeff>::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

template <class Coeff>
Coeff Polynomial<Coeff>::constant_term() const {
  return coefficient(Monomial{});
}

template <class Coeff>
int Polynomial<Coeff>::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(degree(m)));
  return d;
}

template <class Coeff>
Coeff Polynomial<Coeff>::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coeff(0) : it->second;
}

template <class Coeff>
void Polynomial<Coeff>::add_term(Monomial m, Coeff c) {
  trim(m);
  if (is_zero_coeff(c)) return;
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (is_zero_coeff(it->second)) terms_.erase(it);
  }
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::operator-() const {
  Polynomial p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::times(const Polynomial& other) const {
  Polynomial p;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) p.add_term(product(ma, mb), ca * cb);
  return p;
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::scaled(const Coeff& k) const {
  Polynomial p;
  if (is_zero_coeff(k)) return p;
  for (const auto& [m, c] : terms_) p.add_term(m, c * k);
  return p;
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::power(unsigned n) const {
  Polynomial result(Coeff(1));
  Polynomial base = *this;
  for (; n != 0; n >>= 1) {
    if (n & 1U) result = result * base;
    if (n > 1) base = base * base;
  }
  return result;
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::substitute(const std::vector<Polynomial>& images) const {
  Polynomial result;
  // powers[i][e] = images[i]^e, built lazily
  std::vector<std::vector<Polynomial>> powers(images.size());
  for (const auto& [m, c] : terms_) {
    Polynomial term(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= images.size()) throw std::out_of_range("polynomial substitution: missing image");
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Polynomial(Coeff(1)));
      while (cache.size() <= m[i]) cache.push_back(cache.back() * images[i]);
      term = term * cache[m[i]];
    }
    result = result + term;
  }
  return result;
}

template <class Coeff>
Coeff Polynomial<Coeff>::evaluate(const std::vector<Coeff>& point) const {
  Coeff sum(0);
  for (const auto& [m, c] : terms_) {
    Coeff t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= point.at(i);
    sum += t;
  }
  return sum;
}

template class Polynomial<Rational>;
template class Polynomial<double>;

namespace {

template <class Coeff>
Coeff coeff_of(const Scalar& s);

template <>
Rational coeff_of<Rational>(const Scalar& s) {
  return s.exact();
}

template <>
double coeff_of<double>(const Scalar& s) {
  return s.to_double();
}

template <class Coeff>
std::optional<Polynomial<Coeff>> convert(const Expr& e) {
  using P = Polynomial<Coeff>;
  switch (e.op()) {
    case Op::Constant: return P(coeff_of<Coeff>(e.value()));
    case Op::Variable: return P::variable(e.index());
    case Op::Add:
    case Op::Sub:
    case Op::Mul: {
      auto a = convert<Coeff>(e.lhs());
      if (!a) return std::nullopt;
      auto b = convert<Coeff>(e.rhs());
      if (!b) return std::nullopt;
      if (e.op() == Op::Add) return *a + *b;
      if (e.op() == Op::Sub) return *a - *b;
      return *a * *b;
    }
    case Op::Div: {
      auto a = convert<Coeff>(e.lhs());
      if (!a) return std::nullopt;
      auto b = convert<Coeff>(e.rhs());
      if (!b || !b->is_constant() || b->is_zero()) return std::nullopt;
      return a->scaled(Coeff(1) / b->constant_term());
    }
    case Op::Pow: {
      auto a = convert<Coeff>(e.lhs());
      if (!a) return std::nullopt;
      int n = e.exponent();
      if (n >= 0) return a->power(static_cast<unsigned>(n));
      if (!a->is_constant() || a->is_zero()) return std::nullopt;
      return P(Coeff(1) / a->constant_term()).power(static_cast<unsigned>(-n));
    }
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<ExactPolynomial> to_exact_polynomial(const Expr& e) {
  if (e.has_float_constant() || e.has_transcendental()) return std::nullopt;
  return convert<Rational>(e);
}

std::optional<FloatPolynomial> to_float_polynomial(const Expr& e) {
  if (e.has_transcendental()) return std::nullopt;
  return convert<double>(e);
}

Expr to_expr(const ExactPolynomial& p) {
  // highest degree first; within a degree x0 before x1
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().rbegin(), p.terms().rend());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return degree(a.first) > degree(b.first); });
  Expr sum;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool subtract = !first && c < 0;
    Expr term{Scalar(subtract ? Rational(-c) : c)};
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) term = term * power(Expr::variable(i), static_cast<int>(m[i]));
    sum = first ? term : subtract ? Expr::sub(sum, term) : Expr::add(sum, term);
    first = false;
  }
  return sum;
}

Expr canonical(const Expr& e) {
  if (auto p = to_exact_polynomial(e)) return to_expr(*p);
  return e;
}

}  // namespace gluedforms
