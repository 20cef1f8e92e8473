#pragma once

#include "pcf/poly.hpp"
#include "pcf/sequence.hpp"

#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace pcf {

/// Expression grammar (whitespace is insignificant):
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' (integer | '(' n+c ')' | 'n'))?
///   primary := integer | name | 'fact(' n+c ')' | 'poch(' expr ',' n+c ')' | '(' expr ')'
///
/// `name` matches [a-z][a-z0-9_]*; `n` is the index. A symbolic exponent
/// n+c is allowed only on -1 (sign) or an n-free base (geometric term).
/// Sums are restricted to polynomial operands.
///
/// When `known_params` is non-null, any other name is rejected.
SequenceExpr parse_sequence(std::string_view text, const std::set<std::string>* known_params = nullptr);

/// Same grammar, but the result must be a polynomial.
Poly parse_poly(std::string_view text, const std::set<std::string>* known_params = nullptr);

enum class ExprKind { poly, sequence };
std::variant<Poly, SequenceExpr> parse_expr(std::string_view text, ExprKind kind,
                                            const std::set<std::string>* known_params = nullptr);

} // namespace pcf
