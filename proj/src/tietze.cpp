#include "pcf/tietze.hpp"

#include "pcf/roots.hpp"

namespace pcf {

namespace {

BigInt denominator_lcm(const Poly& p) {
  BigInt l = 1;
  for (const auto& [m, c] : p.terms())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

// Smallest c > 0 with c^2 | l: each prime power p^e of l contributes p^ceil(e/2).
// Trial division only; a leftover cofactor is kept whole, which is still admissible.
BigInt square_root_cover(BigInt l) {
  BigInt c = 1;
  for (unsigned long p = 2; p <= 1'000'000 && BigInt(p) * p <= l; ++p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(l.get_mpz_t(), p)) {
      l /= p;
      ++e;
    }
    for (unsigned i = 0; i < (e + 1) / 2; ++i)
      c *= p;
  }
  return c * l;
}

std::optional<Poly> body(const Sequence& s, const Bindings& params) {
  const SequenceExpr* f = s.formula();
  if (!f)
    return std::nullopt;
  auto p = f->bind(params).as_poly();
  if (!p || !p->parameters().empty())
    return std::nullopt;
  return p;
}

} // namespace

bool tietze_condition_at(const Poly& a, const Poly& b, long n) {
  BigRational an = a.eval(n), bn = b.eval(n), next = a.eval(n + 1);
  if (an == 0 || bn < 1)
    return false;
  BigRational need = abs(an) + (next < 0 ? 1 : 0);
  return bn >= need;
}

TietzeResult tietze_check(const Sequence& a, const Sequence& b, const Bindings& params, long first_index) {
  TietzeResult r;
  r.start = first_index;
  for (const auto& [k, v] : a.overrides()) {
    if (v == 0) {
      r.refusal = "a_n = 0 at n = " + std::to_string(k);
      return r;
    }
    r.start = std::max(r.start, k + 1);
  }
  for (const auto& [k, v] : b.overrides())
    r.start = std::max(r.start, k + 1);

  auto pa = body(a, params);
  auto pb = body(b, params);
  if (!pa || !pb) {
    r.refusal = "elements are not polynomial in n; the criterion is not applicable as stated";
    return r;
  }
  // a -> c^2 a grows faster than b -> c b, so the smallest integral c is the one to try
  BigInt l = square_root_cover(denominator_lcm(*pa));
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denominator_lcm(*pb).get_mpz_t());
  r.scale = BigRational(l);
  r.a = *pa * Poly(BigRational(l * l));
  r.b = *pb * Poly(BigRational(l));
  if (r.a.is_zero()) {
    r.refusal = "a_n vanishes identically";
    return r;
  }

  IndexPoly ia(r.a);
  auto nonzero = holds_from(ia, SignCondition::nonzero, r.start);
  if (!nonzero || *nonzero != r.start) {
    long k = nonzero ? *nonzero - 1 : r.start;
    r.refusal = "a_n = 0 at n = " + std::to_string(k);
    return r;
  }

  bool positive_lead = r.a.leading_coefficient().constant_value().value() > 0;
  std::vector<std::pair<Poly, std::string>> needs;
  if (positive_lead) {
    needs.emplace_back(r.a - Poly(1L), "a_n > 0 eventually");
    needs.emplace_back(r.b - r.a, "b_n >= |a_n| fails for infinitely many n");
  } else {
    needs.emplace_back(-r.a - Poly(1L), "a_n < 0 eventually");
    needs.emplace_back(r.b + r.a - Poly(1L),
                       "b_n >= |a_n| + 1 (required since a_{n+1} < 0) fails for infinitely many n");
  }
  needs.emplace_back(r.b - Poly(1L), "b_n >= 1 fails for infinitely many n");

  // a is integer valued, so a_n > 0 is a_n - 1 >= 0.
  long R = r.start;
  for (const auto& [p, reason] : needs) {
    auto from = holds_from(IndexPoly(p), SignCondition::nonnegative, r.start);
    if (!from) {
      r.refusal = reason;
      return r;
    }
    R = std::max(R, *from);
  }

  TietzeCertificate cert;
  long N = R;
  while (N - 1 >= r.start && tietze_condition_at(r.a, r.b, N - 1))
    --N;
  cert.N0 = N;
  cert.checked_range_end = R;
  cert.asymptotic_ok = true;
  for (long n = r.start; n < N && cert.per_n_failures_below_N0.size() < 100; ++n)
    if (!tietze_condition_at(r.a, r.b, n))
      cert.per_n_failures_below_N0.push_back(n);
  r.certificate = cert;
  return r;
}

} // namespace pcf
