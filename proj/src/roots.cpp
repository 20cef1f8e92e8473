#include "pcf/roots.hpp"

#include "pcf/error.hpp"

#include <limits>

namespace pcf {

long cauchy_bound(const IndexPoly& p) {
  const auto& c = p.coefficients();
  if (c.size() <= 1)
    return 1;
  BigRational lead = abs(c.back());
  BigRational worst = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    worst = std::max(worst, BigRational(abs(c[i]) / lead));
  BigInt r = ceil(BigRational(worst + 1));
  if (r == floor(BigRational(worst + 1)))
    r += 1; // roots are strictly below 1 + max, so R itself is safe either way
  if (!r.fits_slong_p())
    return std::numeric_limits<long>::max();
  return r.get_si();
}

namespace {

bool satisfies(const BigRational& v, SignCondition cond) {
  switch (cond) {
  case SignCondition::positive:
    return v > 0;
  case SignCondition::nonnegative:
    return v >= 0;
  case SignCondition::nonzero:
    return v != 0;
  }
  return false;
}

} // namespace

std::optional<long> holds_from(const IndexPoly& p, SignCondition cond, long start, long max_scan) {
  const auto& c = p.coefficients();
  if (c.empty())
    return cond == SignCondition::nonnegative ? std::optional<long>(start) : std::nullopt;
  if (c.back() < 0 && cond != SignCondition::nonzero)
    return std::nullopt;
  long bound = cauchy_bound(p);
  if (bound > start && bound - start > max_scan)
    return std::nullopt;
  for (long n = bound - 1; n >= start; --n)
    if (!satisfies(p(BigRational(n)), cond))
      return n + 1;
  return start;
}

std::optional<long> eventually(const Sequence& s, const Bindings& params, SignCondition cond,
                               long start) {
  const SequenceExpr* f = s.formula();
  if (!f)
    return std::nullopt;
  SequenceExpr e = f->bind(params);
  if (!e.parameters().empty())
    return std::nullopt;
  if (e.sign_offset() && cond != SignCondition::nonzero)
    return std::nullopt;
  long first = start;
  for (const auto& atom : e.atoms()) {
    switch (atom.kind) {
    case SequenceAtom::Kind::factorial:
      first = std::max(first, -atom.offset);
      break;
    case SequenceAtom::Kind::geometric:
      if (cond != SignCondition::nonzero && *atom.base.constant_value() < 0)
        return std::nullopt;
      break;
    case SequenceAtom::Kind::pochhammer:
      return std::nullopt;
    }
  }
  // Value sign equals sign(scale * num * den) wherever den does not vanish.
  IndexPoly signed_part(e.numerator() * e.denominator() * Poly(e.scale()));
  auto from = holds_from(signed_part, cond, first);
  if (!from)
    return std::nullopt;
  if (!e.denominator().is_constant()) {
    auto den_ok = holds_from(IndexPoly(e.denominator()), SignCondition::nonzero, first);
    if (!den_ok)
      return std::nullopt;
    from = std::max(*from, *den_ok);
  }
  long n0 = *from;
  for (const auto& [k, v] : s.overrides())
    if (k >= n0 && !satisfies(v, cond))
      n0 = k + 1;
  // Overrides may repair early failures of the closed form.
  while (n0 > start) {
    BigRational v;
    try {
      v = s.at(n0 - 1, params);
    } catch (const DomainError&) {
      break;
    }
    if (!satisfies(v, cond))
      break;
    --n0;
  }
  return n0;
}

} // namespace pcf
