#include "pcf/parse.hpp"

#include "pcf/error.hpp"

#include <cctype>

namespace pcf {

namespace {

class Parser {
public:
  Parser(std::string_view text, const std::set<std::string>* known) : text_(text), known_(known) {}

  SequenceExpr parse() {
    SequenceExpr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  SequenceExpr expr() {
    SequenceExpr lhs = term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-')
        return lhs;
      std::size_t at = pos_;
      ++pos_;
      SequenceExpr rhs = term();
      auto lp = lhs.as_poly();
      auto rp = rhs.as_poly();
      if (!lp || !rp)
        throw ParseError("sums are only defined for polynomial operands", at);
      lhs = c == '+' ? *lp + *rp : *lp - *rp;
    }
  }

  SequenceExpr term() {
    SequenceExpr lhs = unary();
    for (;;) {
      char c = peek();
      if (c != '*' && c != '/')
        return lhs;
      std::size_t at = pos_;
      ++pos_;
      SequenceExpr rhs = unary();
      if (c == '*') {
        lhs = lhs * rhs;
      } else {
        if (rhs.is_zero())
          throw ParseError("division by zero", at);
        lhs = lhs / rhs;
      }
    }
  }

  SequenceExpr unary() {
    if (accept('-'))
      return SequenceExpr(-1L) * unary();
    if (accept('+'))
      return unary();
    return power();
  }

  // Reads n+c, n-c or n from an already parsed expression.
  long index_offset(const SequenceExpr& e, std::size_t at) const {
    auto p = e.as_poly();
    if (p && p->degree() == 1 && p->parameters().empty()) {
      auto coeffs = p->coefficients_in_index();
      auto slope = coeffs[1].constant_value();
      auto c = coeffs[0].constant_value();
      if (slope && *slope == 1 && c && is_integer(*c) && c->get_num().fits_slong_p())
        return c->get_num().get_si();
    }
    throw ParseError("expected an index of the form n+c with integer c", at);
  }

  SequenceExpr power() {
    SequenceExpr base = primary();
    if (!accept('^'))
      return base;
    skip_ws();
    std::size_t at = pos_;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      BigInt e = integer();
      if (!e.fits_uint_p() || e > 4096)
        throw ParseError("exponent too large", at);
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    long offset = index_offset(primary(), at);
    auto bp = base.as_poly();
    if (!bp)
      throw ParseError("symbolic exponent needs a polynomial base", at);
    if (bp->depends_on_index())
      throw ParseError("symbolic exponent needs a base free of n", at);
    if (bp->is_zero())
      throw ParseError("zero base in geometric atom", at);
    if (bp->constant_value() == BigRational(-1))
      return SequenceExpr::sign(offset);
    return SequenceExpr::geometric(*bp, offset);
  }

  BigInt integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::string name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::islower(static_cast<unsigned char>(text_[pos_])) ||
            std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  SequenceExpr primary() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of expression");
    char c = text_[pos_];
    std::size_t at = pos_;
    if (std::isdigit(static_cast<unsigned char>(c)))
      return SequenceExpr(BigRational(integer()));
    if (c == '(') {
      ++pos_;
      SequenceExpr inner = expr();
      expect(')');
      return inner;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::string id = name();
      if (id == "fact") {
        expect('(');
        std::size_t arg_at = pos_;
        long offset = index_offset(expr(), arg_at);
        expect(')');
        return SequenceExpr::factorial(offset);
      }
      if (id == "poch") {
        expect('(');
        std::size_t base_at = pos_;
        auto base = expr().as_poly();
        if (!base || base->depends_on_index())
          throw ParseError("pochhammer base must be a polynomial free of n", base_at);
        expect(',');
        std::size_t arg_at = pos_;
        long offset = index_offset(expr(), arg_at);
        expect(')');
        return SequenceExpr::pochhammer(*base, offset);
      }
      if (peek() == '(')
        throw ParseError("unknown function '" + id + "'", at);
      if (id != kIndexVar && known_ && !known_->contains(id))
        throw ParseError("unknown variable '" + id + "'", at);
      return SequenceExpr(Poly::variable(id));
    }
    if (std::isupper(static_cast<unsigned char>(c)))
      throw ParseError("unknown variable '" + name_upper() + "'", at);
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string name_upper() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  const std::set<std::string>* known_;
  std::size_t pos_ = 0;
};

} // namespace

SequenceExpr parse_sequence(std::string_view text, const std::set<std::string>* known_params) {
  return Parser(text, known_params).parse();
}

Poly parse_poly(std::string_view text, const std::set<std::string>* known_params) {
  SequenceExpr e = parse_sequence(text, known_params);
  auto p = e.as_poly();
  if (!p)
    throw ParseError("expression is not a polynomial: '" + std::string(text) + "'", 0);
  return *p;
}

std::variant<Poly, SequenceExpr> parse_expr(std::string_view text, ExprKind kind,
                                            const std::set<std::string>* known_params) {
  if (kind == ExprKind::poly)
    return parse_poly(text, known_params);
  return parse_sequence(text, known_params);
}

} // namespace pcf
