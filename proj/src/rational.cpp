#include "pcf/rational.hpp"

#include "pcf/error.hpp"

#include <cctype>

namespace pcf {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0)
    throw DomainError("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

// integer [^ integer]
BigInt parse_power(std::string_view text, std::size_t& pos, std::size_t offset) {
  auto digits = [&](std::size_t& p) {
    std::size_t start = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p])))
      ++p;
    if (p == start)
      throw ParseError("expected digits in rational", offset + p);
    return std::string(text.substr(start, p - start));
  };
  BigInt base(digits(pos));
  if (pos < text.size() && text[pos] == '^') {
    ++pos;
    BigInt e(digits(pos));
    if (!e.fits_ulong_p() || e > 100000)
      throw ParseError("exponent too large", offset + pos);
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e.get_ui());
    return r;
  }
  return base;
}

} // namespace

BigRational parse_rational(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      compact.push_back(c);
  std::string_view s(compact);
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    negative = s[pos] == '-';
    ++pos;
  }
  BigInt num = parse_power(s, pos, 0);
  BigInt den = 1;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    den = parse_power(s, pos, 0);
  }
  if (pos != s.size())
    throw ParseError("unexpected character in rational '" + std::string(text) + "'", pos);
  if (den == 0)
    throw ParseError("zero denominator in rational", pos);
  if (negative)
    num = -num;
  return make_rational(num, den);
}

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const BigRational& q) { return q.get_den() == 1; }

BigInt floor(const BigRational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil(const BigRational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigRational abs(const BigRational& q) { return q < 0 ? BigRational(-q) : q; }

int sign(const BigRational& q) { return sgn(q); }

BigRational pow(const BigRational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0)
      throw DomainError("zero raised to a negative power");
    BigRational inv = 1 / base;
    return pow(inv, -exponent);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  BigRational r(num, den);
  return r; // already canonical: powers of coprime integers stay coprime
}

std::string to_decimal(const BigRational& q, int digits, Rounding mode) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigRational scaled = q * scale;
  BigInt k = mode == Rounding::down ? floor(scaled) : ceil(scaled);
  bool negative = k < 0;
  if (negative)
    k = -k;
  std::string s = k.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

BigRational round_dyadic(const BigRational& q, unsigned long bits, Rounding mode) {
  BigInt scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  BigRational scaled = q * scale;
  BigInt k = mode == Rounding::down ? floor(scaled) : ceil(scaled);
  return make_rational(k, scale);
}

} // namespace pcf

namespace pcf {

std::string to_scientific(const BigRational& q, int digits) {
  if (q == 0)
    return "0";
  BigRational a = abs(q);
  // Decimal exponent from the bit sizes, then corrected by at most a step or two.
  long bits = static_cast<long>(mpz_sizeinbase(a.get_num().get_mpz_t(), 2)) -
              static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 2));
  long e = static_cast<long>(static_cast<double>(bits) * 0.30102999566398120);
  BigRational scaled = a * pow(BigRational(10), -e);
  while (scaled >= 10) {
    scaled /= 10;
    ++e;
  }
  while (scaled < 1) {
    scaled *= 10;
    --e;
  }
  std::string s = to_decimal(scaled, digits > 1 ? digits - 1 : 0, Rounding::down);
  return (q < 0 ? "-" : "") + s + "e" + std::to_string(e);
}

} // namespace pcf
