#include "pcf/transforms.hpp"

#include "pcf/error.hpp"
#include "pcf/roots.hpp"

#include <set>

namespace pcf {

namespace {

std::set<long> override_indices(const Sequence& x, const Sequence& y) {
  std::set<long> out;
  for (const auto& [k, v] : x.overrides())
    out.insert(k);
  for (const auto& [k, v] : y.overrides())
    out.insert(k);
  return out;
}

// Sets s(n) = v unless the body already agrees.
Sequence patch(const Sequence& s, long n, const BigRational& v) {
  try {
    if (s.at(n) == v)
      return s;
  } catch (const DomainError&) {
  }
  return s.with_value(n, v);
}

Sequence product(const Sequence& x, const Sequence& y) {
  const SequenceExpr* fx = x.formula();
  const SequenceExpr* fy = y.formula();
  if (fx && fy) {
    Sequence s(*fx * *fy);
    for (long k : override_indices(x, y)) {
      try {
        s = patch(s, k, x.at(k) * y.at(k));
      } catch (const DomainError&) {
      }
    }
    return s;
  }
  return Sequence::derived([x, y](long n) -> BigRational { return x.at(n) * y.at(n); },
                           "(" + x.to_string() + ") * (" + y.to_string() + ")");
}

Sequence sum(const Sequence& x, const Sequence& y) {
  const SequenceExpr* fx = x.formula();
  const SequenceExpr* fy = y.formula();
  if (fx && fy) {
    auto px = fx->as_poly();
    auto py = fy->as_poly();
    if (px && py) {
      Sequence s(*px + *py);
      for (long k : override_indices(x, y)) {
        try {
          s = patch(s, k, x.at(k) + y.at(k));
        } catch (const DomainError&) {
        }
      }
      return s;
    }
  }
  return Sequence::derived([x, y](long n) -> BigRational { return x.at(n) + y.at(n); },
                           "(" + x.to_string() + ") + (" + y.to_string() + ")");
}

Sequence scaled(const Sequence& x, const BigRational& c) { return product(x, Sequence(SequenceExpr(c))); }

// First index k in [from, to] where s vanishes, proving the rest when possible.
std::optional<long> first_zero(const Sequence& s, long from, long horizon) {
  auto proven = eventually(s, {}, SignCondition::nonzero, from);
  long to = proven ? *proven - 1 : from + horizon - 1;
  for (long k = from; k <= to; ++k) {
    try {
      if (s.at(k) == 0)
        return k;
    } catch (const DomainError&) {
      return k;
    }
  }
  return std::nullopt;
}

} // namespace

BigRational partial_sum(const SeriesSpec& series, long N) {
  BigRational s = 0;
  for (long k = 0; k <= N; ++k)
    s += series.term(k);
  return s;
}

CFSpec euler_cf(const SeriesSpec& series, long horizon) {
  Sequence c = series.terms.bind(series.params).shift(series.n0);
  if (auto z = first_zero(c, 1, horizon))
    throw DomainError("series term vanishes; Euler transformation undefined", series.n0 + *z);

  Sequence checked = Sequence::derived(
      [c, n0 = series.n0](long k) {
        BigRational v = c.at(k);
        if (v == 0 && k >= 1)
          throw DomainError("series term vanishes; Euler transformation undefined", n0 + k);
        return v;
      },
      c.to_string());
  bool closed = c.formula() != nullptr;
  const Sequence& src = closed ? c : checked;

  CFSpec cf;
  cf.b0 = c.at(0);
  cf.n0 = 1;
  cf.a = scaled(product(src.shift(-2), src), -1);
  cf.a = patch(patch(cf.a, 1, src.at(1)), 2, -src.at(2));
  cf.b = patch(sum(src.shift(-1), src), 1, 1);
  return cf;
}

SeriesFraction series_to_cf(const Sequence& b, const BigRational& x, long horizon,
                            const Bindings& params) {
  Sequence bb = b.bind(params);
  if (auto z = first_zero(bb, 0, horizon + 1))
    throw DomainError("series denominator b_n vanishes", *z);
  SeriesFraction out;
  out.cf.b0 = bb.at(0);
  out.cf.n0 = 1;
  out.cf.a = product(bb.shift(-1), Sequence(SequenceExpr(x)));
  out.cf.b = sum(bb, Sequence(SequenceExpr(BigRational(-x))));
  for (long n = 1; n <= horizon; ++n)
    if (bb.at(n) == x)
      out.zero_denominators.push_back(n);
  return out;
}

BigRational reciprocal_series_sum(const Sequence& b, const BigRational& x, long N,
                                  const Bindings& params) {
  BigRational total = 0;
  BigRational prod = 1;
  BigRational xpow = 1;
  for (long n = 0; n <= N; ++n) {
    BigRational bn = b.at(n, params);
    if (bn == 0)
      throw DomainError("series denominator b_n vanishes", n);
    prod *= bn;
    total += (n % 2 == 0 ? xpow : BigRational(-xpow)) / prod;
    xpow *= x;
  }
  if (total == 0)
    throw DomainError("series partial sum vanishes", N);
  return 1 / total;
}

CFSpec even_part(const CFSpec& cf, long N) {
  CFSpec norm = cf.normalized();
  for (long k = 1; k <= N; ++k)
    if (norm.b_at(2 * k) == 0)
      throw DomainError("zero even-index partial denominator", cf.n0 + 2 * k - 1);

  CFSpec out;
  out.b0 = norm.b0;
  out.n0 = 1;
  auto a = norm.a.as_poly();
  auto b = norm.b.as_poly();
  if (a && b) {
    auto A = [&](long off) { return a->compose_index(2, off); };
    auto B = [&](long off) { return b->compose_index(2, off); };
    out.a = Sequence(-(A(-2) * A(-1) * B(-4) * B(0)));
    out.b = Sequence(A(-1) * B(0) + B(-2) * (A(0) + B(-1) * B(0)));
  } else {
    out.a = Sequence::derived(
        [norm](long k) {
          BigRational b4 = k == 2 ? BigRational(1) : norm.b_at(2 * k - 4);
          return BigRational(-norm.a_at(2 * k - 2) * norm.a_at(2 * k - 1) * b4 * norm.b_at(2 * k));
        },
        "even part numerators");
    out.b = Sequence::derived(
        [norm](long k) {
          return BigRational(norm.a_at(2 * k - 1) * norm.b_at(2 * k) +
                             norm.b_at(2 * k - 2) * (norm.a_at(2 * k) + norm.b_at(2 * k - 1) * norm.b_at(2 * k)));
        },
        "even part denominators");
  }
  out.a = patch(out.a, 1, norm.a_at(1) * norm.b_at(2));
  out.a = patch(out.a, 2, -norm.a_at(2) * norm.a_at(3) * norm.b_at(4));
  out.b = patch(out.b, 1, norm.a_at(2) + norm.b_at(1) * norm.b_at(2));
  return out;
}

CFSpec equiv_scale(const CFSpec& cf, const Sequence& c, long horizon) {
  Sequence cc = c.bind(cf.params);
  if (auto z = first_zero(cc, cf.n0, horizon))
    throw DomainError("zero scale factor", *z);
  Sequence a = cf.a.bind(cf.params);
  Sequence b = cf.b.bind(cf.params);
  CFSpec out;
  out.b0 = cf.b0;
  out.n0 = cf.n0;
  out.a = product(product(cc, cc.shift(-1)), a);
  out.a = patch(out.a, cf.n0, cc.at(cf.n0) * a.at(cf.n0));
  out.b = product(cc, b);
  return out;
}

} // namespace pcf
