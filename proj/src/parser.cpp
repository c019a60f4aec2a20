#include "gluedforms/parser.hpp"

#include "gluedforms/errors.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace gluedforms {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    Token t;
    t.offset = pos_;
    if (pos_ == text_.size()) return t;
    char c = text_[pos_];
    auto single = [&](Tok k) {
      t.kind = k;
      t.text = text_.substr(pos_++, 1);
      return t;
    };
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      default: break;
    }
    std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      t.kind = Tok::Number;
      t.text = text_.substr(start, pos_ - start);
      if (t.text == ".") throw ParseError("malformed number", start);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      t.kind = Tok::Ident;
      t.text = text_.substr(start, pos_ - start);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>* names, std::size_t dim, char prefix = 'x')
      : lexer_(text), names_(names), dim_(dim), prefix_(prefix) {
    advance();
  }

  Expr parse_all() {
    Expr e = expr();
    expect_end();
    return e;
  }

  std::vector<Expr> parse_form() {
    std::vector<Expr> coeffs(dim_);
    if (cur_.kind == Tok::Number && cur_.text == "0") {
      Token zero = cur_;
      advance();
      if (cur_.kind == Tok::End) return coeffs;
      throw ParseError("expected end of form after '0'", zero.offset);
    }
    bool first = true;
    while (first || cur_.kind != Tok::End) {
      bool negate = false;
      if (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
        negate = cur_.kind == Tok::Minus;
        advance();
      } else if (!first) {
        throw ParseError("expected '+' or '-' between form terms", cur_.offset);
      }
      first = false;

      Expr coeff(1);
      if (!differential_index(cur_)) {
        differentials_terminate_ = true;
        coeff = term();
        differentials_terminate_ = false;
        if (cur_.kind == Tok::Star) advance();
      }
      auto index = differential_index(cur_);
      if (!index) throw ParseError("expected a differential dx<i>", cur_.offset);
      advance();
      if (negate) coeff = -coeff;
      coeffs[*index] = coeffs[*index].is_zero() ? coeff : coeffs[*index] + coeff;
    }
    return coeffs;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect_end() {
    if (cur_.kind != Tok::End) throw ParseError("unexpected '" + std::string(cur_.text) + "'", cur_.offset);
  }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) throw ParseError(std::string("expected ") + what, cur_.offset);
    advance();
  }

  // "dx<i>" with a valid variable name after the 'd'
  std::optional<std::size_t> differential_index(const Token& t) const {
    if (t.kind != Tok::Ident || t.text.size() < 2 || t.text[0] != 'd') return std::nullopt;
    auto idx = lookup_variable(t.text.substr(1));
    if (!idx || *idx >= dim_) return std::nullopt;
    return idx;
  }

  // Index named by `name`, or nullopt if it does not look like a variable.
  // Out-of-range x<n> is reported by the caller.
  std::optional<std::size_t> lookup_variable(std::string_view name) const {
    if (names_) {
      for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name) return i;
      return std::nullopt;
    }
    if (name.size() < 2 || name[0] != prefix_) return std::nullopt;
    std::size_t value = 0;
    auto digits = name.substr(1);
    if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
    return value;
  }

  Expr expr() {
    Expr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool plus = cur_.kind == Tok::Plus;
      advance();
      Expr rhs = term();
      lhs = plus ? Expr::add(lhs, rhs) : Expr::sub(lhs, rhs);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      if (differentials_terminate_ && cur_.kind == Tok::Star && peek_differential()) break;
      bool mul = cur_.kind == Tok::Star;
      advance();
      Expr rhs = factor();
      lhs = mul ? Expr::mul(lhs, rhs) : Expr::div(lhs, rhs);
    }
    return lhs;
  }

  bool peek_differential() {
    Lexer copy = lexer_;
    return differential_index(copy.next()).has_value();
  }

  Expr factor() {
    if (cur_.kind == Tok::Minus) {
      advance();
      Expr operand = factor();
      if (operand.is_constant()) return Expr(-operand.value());
      return Expr::mul(Expr(-1), operand);
    }
    Expr b = base();
    if (cur_.kind == Tok::Caret) {
      advance();
      bool negative = false;
      if (cur_.kind == Tok::Minus) {
        negative = true;
        advance();
      }
      if (cur_.kind != Tok::Number || cur_.text.find_first_of(".eE") != std::string_view::npos)
        throw ParseError("exponent must be an integer", cur_.offset);
      int n = 0;
      auto [ptr, ec] = std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(), n);
      if (ec != std::errc() || ptr != cur_.text.data() + cur_.text.size())
        throw ParseError("exponent out of range", cur_.offset);
      advance();
      b = Expr::pow(b, negative ? -n : n);
    }
    return b;
  }

  Expr base() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Number: {
        advance();
        return Expr(number(t));
      }
      case Tok::LParen: {
        advance();
        Expr inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: {
        advance();
        if (t.text == "sin" || t.text == "cos" || t.text == "exp") {
          expect(Tok::LParen, "'(' after function name");
          Expr arg = expr();
          expect(Tok::RParen, "')'");
          if (t.text == "sin") return Expr::sin(arg);
          if (t.text == "cos") return Expr::cos(arg);
          return Expr::exp(arg);
        }
        auto idx = lookup_variable(t.text);
        if (!idx) throw ParseError("unknown identifier '" + std::string(t.text) + "'", t.offset);
        if (*idx >= dim_)
          throw ParseError("variable index out of range: '" + std::string(t.text) + "' with dimension " +
                               std::to_string(dim_),
                           t.offset);
        return Expr::variable(*idx);
      }
      case Tok::End: throw ParseError("unexpected end of input", t.offset);
      default: throw ParseError("unexpected '" + std::string(t.text) + "'", t.offset);
    }
  }

  static Scalar number(const Token& t) {
    if (t.text.find_first_of(".eE") == std::string_view::npos) {
      Integer value(std::string(t.text));
      return Scalar(Rational(value));
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw ParseError("malformed number '" + std::string(t.text) + "'", t.offset);
    return Scalar::real(v);
  }

  Lexer lexer_;
  Token cur_;
  const std::vector<std::string>* names_;
  std::size_t dim_;
  char prefix_;
  bool differentials_terminate_ = false;
};

}  // namespace

std::vector<std::string> default_variable_names(std::size_t dim) {
  std::vector<std::string> names;
  names.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

Expr parse_expr(std::string_view text, std::size_t ambient_dim) {
  return Parser(text, nullptr, ambient_dim).parse_all();
}

Expr parse_expr(std::string_view text, std::size_t ambient_dim, char variable_prefix) {
  return Parser(text, nullptr, ambient_dim, variable_prefix).parse_all();
}

Expr parse_expr(std::string_view text, const std::vector<std::string>& names) {
  return Parser(text, &names, names.size()).parse_all();
}

std::vector<Expr> parse_form_coefficients(std::string_view text, std::size_t dim) {
  return Parser(text, nullptr, dim).parse_form();
}

}  // namespace gluedforms
