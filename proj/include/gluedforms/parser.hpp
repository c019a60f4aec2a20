#pragma once

#include "gluedforms/expr.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gluedforms {

// Grammar (whitespace insignificant):
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | base ('^' ['-'] int)?
//   base   := number | variable | '(' expr ')' | ('sin' | 'cos' | 'exp') '(' expr ')'
//
// Integer literals are exact; literals with a decimal point or exponent are
// floating constants. A minus sign applied directly to a constant yields a
// negative constant. The parser never rewrites the tree beyond that.

/// Parses with variables x0 .. x{ambient_dim-1}.
Expr parse_expr(std::string_view text, std::size_t ambient_dim);

/// Same with variables named <prefix>0 .. <prefix>{ambient_dim-1}.
Expr parse_expr(std::string_view text, std::size_t ambient_dim, char variable_prefix);

/// Parses with caller-chosen variable names; names[i] denotes x_i.
Expr parse_expr(std::string_view text, const std::vector<std::string>& names);

/// Parses a 1-form body such as "x1 dx0 + (x0 - 1)*dx1" or "0" and returns
/// one coefficient per differential dx0 .. dx{dim-1}. A coefficient is a
/// product of factors; sums need parentheses.
std::vector<Expr> parse_form_coefficients(std::string_view text, std::size_t dim);

/// Default variable names x0 .. x{dim-1}.
std::vector<std::string> default_variable_names(std::size_t dim);

}  // namespace gluedforms
