#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

namespace pcf {

using BigInt = mpz_class;
/// Exact rational; mpq_class keeps gcd(num, den) = 1 and den > 0.
using BigRational = mpq_class;

/// Parameter name -> value.
using Bindings = std::map<std::string, BigRational, std::less<>>;

BigRational make_rational(const BigInt& num, const BigInt& den);

/// Accepts `p`, `p/q`, and integer powers such as `1/10^15` or `-3^2/7`.
BigRational parse_rational(std::string_view text);

std::string to_string(const BigRational& q);

bool is_integer(const BigRational& q);
BigInt floor(const BigRational& q);
BigInt ceil(const BigRational& q);
BigRational abs(const BigRational& q);
BigRational pow(const BigRational& base, long exponent);
int sign(const BigRational& q);

enum class Rounding { down, up };

/// Fixed-point decimal with `digits` fractional digits, rounded in the given
/// direction (down = toward -inf, up = toward +inf).
std::string to_decimal(const BigRational& q, int digits, Rounding mode);

/// Approximate magnitude for diagnostics, e.g. "2.41e-29" (digits truncated).
std::string to_scientific(const BigRational& q, int digits = 3);

/// Outward dyadic rounding: largest k/2^bits <= q (down) or smallest >= q (up).
BigRational round_dyadic(const BigRational& q, unsigned long bits, Rounding mode);

} // namespace pcf
