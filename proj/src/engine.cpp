#include "pcf/engine.hpp"

#include "pcf/error.hpp"
#include "pcf/roots.hpp"

#include <cmath>

namespace pcf {

CFSpec CFSpec::normalized() const {
  CFSpec out;
  out.b0 = b0;
  out.n0 = 1;
  out.a = a.bind(params).shift(n0 - 1);
  out.b = b.bind(params).shift(n0 - 1);
  return out;
}

BigRational CFSpec::a_at(long i) const { return a.at(n0 + i - 1, params); }
BigRational CFSpec::b_at(long i) const { return b.at(n0 + i - 1, params); }

NumeratorCheck check_numerators(const CFSpec& cf, long horizon) {
  CFSpec norm = cf.normalized();
  auto from = eventually(norm.a, {}, SignCondition::nonzero, 1);
  if (from) {
    if (*from == 1)
      return {NumeratorCheck::Status::proven, -1};
    for (long i = 1; i < *from; ++i) {
      bool zero = false;
      try {
        zero = norm.a_at(i) == 0;
      } catch (const DomainError&) {
        zero = true;
      }
      if (zero)
        return {NumeratorCheck::Status::violated, cf.n0 + i - 1};
    }
    return {NumeratorCheck::Status::proven, -1};
  }
  for (long i = 1; i <= horizon; ++i)
    if (norm.a_at(i) == 0)
      return {NumeratorCheck::Status::violated, cf.n0 + i - 1};
  return {NumeratorCheck::Status::checked_to_horizon, cf.n0 + horizon - 1};
}

BigRational ConvergentPair::value() const {
  if (B == 0)
    throw DomainError("denominator convergent vanishes", n);
  return A / B;
}

ConvergentStream::ConvergentStream(const CFSpec& cf) : cf_(cf) {
  prev_ = {-1, BigRational(1), BigRational(0)};
  cur_ = {0, cf.b0, BigRational(1)};
}

const ConvergentPair& ConvergentStream::advance() {
  long i = cur_.n + 1;
  BigRational a = cf_.a_at(i);
  if (a == 0)
    throw DomainError("zero partial numerator", cf_.n0 + i - 1);
  BigRational b = cf_.b_at(i);
  ConvergentPair next{i, b * cur_.A + a * prev_.A, b * cur_.B + a * prev_.B};
  numerator_product_ *= a;
  prev_ = std::move(cur_);
  cur_ = std::move(next);
  return cur_;
}

std::vector<ConvergentPair> convergents(const CFSpec& cf, long N) {
  if (N < 1)
    throw DomainError("convergents need N >= 1");
  std::vector<ConvergentPair> out;
  out.reserve(static_cast<std::size_t>(N));
  ConvergentStream stream(cf);
  for (long n = 1; n <= N; ++n)
    out.push_back(stream.advance());
  return out;
}

BigRational eval_forward(const CFSpec& cf, long N) {
  if (N < 0)
    throw DomainError("negative depth", N);
  ConvergentStream stream(cf);
  for (long n = 1; n <= N; ++n)
    stream.advance();
  return stream.current().value();
}

BigRational eval_backward(const CFSpec& cf, long N) {
  if (N < 0)
    throw DomainError("negative depth", N);
  BigRational tail = 0;
  for (long i = N; i >= 1; --i) {
    BigRational a = cf.a_at(i);
    if (a == 0)
      throw DomainError("zero partial numerator", cf.n0 + i - 1);
    BigRational den = cf.b_at(i) + tail;
    if (den == 0)
      throw DomainError("zero denominator while folding", cf.n0 + i - 1);
    tail = a / den;
  }
  return cf.b0 + tail;
}

namespace {

// |x_{n+1} - x_n| = |a_1 ... a_{n+1}| / |B_n B_{n+1}|, compared without division.
bool width_at_most(const BigRational& product, const BigRational& Bn, const BigRational& Bn1,
                   const BigRational& width) {
  return abs(product) <= width * abs(Bn * Bn1);
}

Enclosure between(const BigRational& x, const BigRational& y, bool rigorous) {
  return x <= y ? Enclosure{x, y, rigorous} : Enclosure{y, x, rigorous};
}

} // namespace

BracketResult bracket_limit(const CFSpec& cf, const BigRational& width, long n_max) {
  if (width <= 0)
    throw DomainError("bracket width must be positive");
  if (n_max < 2)
    throw DomainError("bracketing needs n_max >= 2");
  CFSpec norm = cf.normalized();
  BracketResult result;
  auto pa = eventually(norm.a, {}, SignCondition::positive, 1);
  auto pb = eventually(norm.b, {}, SignCondition::positive, 1);
  if (pa && pb)
    result.positive_from = std::max(*pa, *pb);

  ConvergentStream stream(norm);
  stream.advance();
  long next_check = 1;
  bool have = false;
  for (long n = 1; n < n_max; ++n) {
    BigRational Bn = stream.current().B;
    BigRational An = stream.current().A;
    stream.advance();
    const ConvergentPair& nxt = stream.current();
    if (Bn == 0 || nxt.B == 0)
      continue;
    bool last = n + 1 == n_max;
    if (n < next_check && !last)
      continue;
    next_check = n < 64 ? n + 1 : n + n / 16;
    bool rigorous = result.positive_from && n >= *result.positive_from && sgn(Bn) == sgn(nxt.B);
    result.enclosure = between(An / Bn, nxt.A / nxt.B, rigorous);
    result.n_used = n + 1;
    have = true;
    if (width_at_most(stream.numerator_product(), Bn, nxt.B, width)) {
      result.width_reached = true;
      break;
    }
  }
  if (!have)
    throw DomainError("no two consecutive finite approximants up to the depth limit", n_max);
  if (!result.enclosure.rigorous)
    result.note = result.positive_from ? "denominator signs differ at the final depth"
                                       : "eventual positivity of the elements is not proven";
  return result;
}

namespace {

double log_abs(const BigInt& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

} // namespace

GrowthReport growth_report(const CFSpec& cf, long N) {
  GrowthReport report;
  if (N < 2) {
    report.note = "needs N >= 2";
    return report;
  }
  CFSpec norm = cf.normalized();
  for (long i = 1; i <= N; ++i) {
    if (norm.a_at(i) < 1 || norm.b_at(i) < 1) {
      report.note = "elements below 1 at index " + std::to_string(cf.n0 + i - 1);
      return report;
    }
  }
  report.applicable = true;
  report.fibonacci_ok = true;
  report.dominance_ok = true;
  BigInt fib_prev = 0, fib = 1; // Fib(0), Fib(1)
  ConvergentStream stream(norm);
  stream.advance();
  for (long n = 1;; ++n) {
    if (stream.current().B < BigRational(fib))
      report.fibonacci_ok = false;
    if (n == N)
      break;
    BigRational Bn = stream.current().B;
    stream.advance();
    if (stream.current().B < norm.b_at(n + 1) * Bn)
      report.dominance_ok = false;
    BigInt next = fib + fib_prev;
    fib_prev = fib;
    fib = next;
  }
  const BigRational& BN = stream.current().B;
  double log_b = log_abs(BN.get_num()) - log_abs(BN.get_den());
  report.log_growth = log_b / (static_cast<double>(N) * std::log(static_cast<double>(N)));
  return report;
}

} // namespace pcf
