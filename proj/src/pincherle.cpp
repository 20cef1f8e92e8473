#include "pcf/pincherle.hpp"

#include "pcf/error.hpp"

namespace pcf {

std::string to_string(Verification::Kind kind) {
  switch (kind) {
  case Verification::Kind::symbolic:
    return "symbolic";
  case Verification::Kind::pointwise:
    return "pointwise";
  case Verification::Kind::unverified:
    return "unverified";
  }
  return "unverified";
}

namespace {

// num/den form of a sequence that is a rational function of n and parameters.
std::optional<std::pair<Poly, Poly>> as_fraction(const Sequence& s) {
  const SequenceExpr* f = s.formula();
  if (!f || !s.overrides().empty() || f->sign_offset() || !f->atoms().empty())
    return std::nullopt;
  return std::make_pair(f->numerator() * Poly(f->scale()), f->denominator());
}

} // namespace

Verification verify_recurrence(PincherleSolution& sol, long horizon) {
  Verification v;
  auto G = as_fraction(sol.G);
  auto a = as_fraction(sol.a);
  auto b = as_fraction(sol.b);
  if (G && a && b) {
    auto [gn, gd] = *G;
    Poly g1n = gn.shift(-1), g1d = gd.shift(-1);
    Poly g2n = gn.shift(-2), g2d = gd.shift(-2);
    const auto& [an, ad] = *a;
    const auto& [bn, bd] = *b;
    // a G_{n-2} + b G_{n-1} - G_n over the common denominator.
    Poly residual = an * g2n * bd * g1d * gd + bn * g1n * ad * g2d * gd - gn * ad * g2d * bd * g1d;
    v.kind = Verification::Kind::symbolic;
    v.passed = residual.is_zero();
    v.detail = v.passed ? "residual is the zero polynomial"
                        : "residual numerator " + residual.to_string();
  } else {
    v.kind = Verification::Kind::pointwise;
    v.horizon = horizon;
    v.passed = true;
    for (long n = 1; n <= horizon; ++n) {
      BigRational r = sol.a.at(n, sol.params) * sol.G.at(n - 2, sol.params) +
                      sol.b.at(n, sol.params) * sol.G.at(n - 1, sol.params) - sol.G.at(n, sol.params);
      if (r != 0) {
        v.passed = false;
        v.detail = "residual " + to_string(r) + " at n = " + std::to_string(n);
        break;
      }
    }
    if (v.passed)
      v.detail = "residual vanishes for n = 1.." + std::to_string(horizon);
  }
  sol.verified = v;
  return v;
}

DecayReport decay_report(const CFSpec& cf, const Sequence& w, long horizon,
                         const std::optional<BigRational>& limit) {
  if (horizon < 8)
    throw DomainError("decay horizon must be at least 8");
  DecayReport r;
  r.horizon = horizon;
  CFSpec norm = cf.normalized();
  ConvergentStream stream(norm);
  std::optional<BigRational> prev_ratio;
  std::vector<BigRational> errors;
  bool monotone = true;
  for (long n = 1; n <= horizon; ++n) {
    const ConvergentPair& p = stream.advance();
    if (limit && (n == horizon / 4 || n == horizon / 2 || n == horizon)) {
      if (p.B != 0)
        errors.push_back(abs(BigRational(p.A / p.B - *limit)));
    }
    if (n < horizon / 2)
      continue;
    if (p.B == 0) {
      monotone = false;
      prev_ratio.reset();
      continue;
    }
    BigRational ratio = abs(BigRational(w.at(cf.n0 + n - 1, cf.params) / p.B));
    if (prev_ratio && ratio > *prev_ratio)
      monotone = false;
    prev_ratio = ratio;
  }
  r.monotone = monotone;
  if (prev_ratio) {
    r.final_ratio = *prev_ratio;
    r.small = r.final_ratio < BigRational(1, 10'000'000'000L);
  }
  r.supported = r.monotone && r.small;
  if (errors.size() == 3)
    r.error_shrinking = errors[2] <= errors[1] && errors[1] <= errors[0];
  r.detail = "|ratio| at n = " + std::to_string(horizon) + " is about " +
             to_scientific(r.final_ratio);
  if (!r.monotone)
    r.detail += "; not monotone on the second half of the horizon";
  return r;
}

PincherleLimit pincherle_limit(const PincherleSolution& sol, long horizon) {
  BigRational g_prev = sol.G.at(-1, sol.params);
  if (g_prev == 0)
    throw DomainError("G_{-1} vanishes; no Pincherle limit", -1);
  PincherleLimit out;
  out.limit = -sol.G.at(0, sol.params) / g_prev;
  out.decay = decay_report(sol.fraction(), sol.G, horizon, out.limit);
  return out;
}

HypeConstruction hype_construct(const PincherleSolution& sol, const Sequence& f, long horizon) {
  Sequence G = sol.G.bind(sol.params);
  Sequence a = sol.a.bind(sol.params);
  Sequence b = sol.b.bind(sol.params);
  Sequence ff = f.bind(sol.params);
  HypeConstruction h;
  BigRational g_prev = G.at(-1);
  if (g_prev == 0)
    throw DomainError("G_{-1} vanishes; no limit", -1);
  h.limit = G.at(0) / g_prev;

  auto gp = G.as_poly(), ap = a.as_poly(), bp = b.as_poly(), fp = ff.as_poly();
  if (gp && ap && bp && fp) {
    h.s = Sequence(*fp * gp->shift(-1) + *ap);
    h.t = Sequence(*fp * gp->shift(-2) - *bp);
  } else {
    h.s = Sequence::derived([G, a, ff](long n) { return BigRational(ff.at(n) * G.at(n - 1) + a.at(n)); },
                            "f_n G_{n-1} + a_n");
    h.t = Sequence::derived([G, b, ff](long n) { return BigRational(ff.at(n) * G.at(n - 2) - b.at(n)); },
                            "f_n G_{n-2} - b_n");
  }
  h.cf = CFSpec{0, 1, h.s, h.t, {}};
  NumeratorCheck check = check_numerators(h.cf, horizon);
  if (check.status == NumeratorCheck::Status::violated)
    throw DomainError("numerator s_n vanishes", check.index);

  Sequence flipped_G;
  if (const SequenceExpr* fg = G.formula()) {
    flipped_G = Sequence(SequenceExpr::sign(1) * *fg);
    for (const auto& [k, v] : G.overrides())
      flipped_G = flipped_G.with_value(k, (k + 1) % 2 == 0 ? v : BigRational(-v));
  } else {
    flipped_G = Sequence::derived(
        [G](long n) {
          BigRational v = G.at(n);
          return (n + 1) % 2 == 0 ? v : BigRational(-v);
        },
        "(-1)^(n+1) G_n");
  }
  h.flipped = PincherleSolution{flipped_G, h.s, h.t, {}, {}};
  return h;
}

QuadraticSolution quadratic_solve(const Poly& a, const Poly& b, const Poly& c) {
  Poly D = a * a - b * b + Poly(4L) * a * c;
  if (D.is_zero())
    throw DomainError("a^2 - b^2 + 4ac vanishes");
  auto over_D = [&](const Poly& num, const char* name) {
    auto q = num.divide_exact(D);
    if (!q)
      throw DomainError(std::string("coefficient ") + name + " is not polynomial in the parameters");
    return *q;
  };
  QuadraticSolution out;
  out.d = over_D(Poly(4L) * a * a, "d");
  out.f = -out.d;
  out.e = over_D(Poly(-3L) * a * a + b * b + Poly(2L) * a * b - Poly(4L) * a * c, "e");
  out.g = over_D(Poly(12L) * a * a - Poly(2L) * a * b - Poly(2L) * b * b + Poly(8L) * a * c, "g");
  Poly n = Poly::index();
  out.solution.G = Sequence(a * n * n + b * n + c);
  out.solution.a = Sequence(out.d * n + out.e);
  out.solution.b = Sequence(out.f * n + out.g);
  Verification v = verify_recurrence(out.solution);
  if (!v.passed)
    throw DomainError("quadratic solution fails the recurrence: " + v.detail);
  return out;
}

} // namespace pcf
