#pragma once

#include "pcf/engine.hpp"

#include <optional>
#include <string>

namespace pcf {

struct Verification {
  enum class Kind { symbolic, pointwise, unverified };
  Kind kind = Kind::unverified;
  bool passed = false;
  long horizon = 0; ///< last n checked in pointwise mode
  std::string detail;
};

std::string to_string(Verification::Kind kind);

/// G_n = a_n G_{n-2} + b_n G_{n-1}, G defined from n = -1, a and b from n = 1.
struct PincherleSolution {
  Sequence G;
  Sequence a;
  Sequence b;
  Bindings params;
  Verification verified;

  CFSpec fraction() const { return CFSpec{0, 1, a, b, params}; }
};

/// Symbolic zero test of a_n G_{n-2} + b_n G_{n-1} - G_n (parameters free)
/// when all three are rational functions of n and the parameters; otherwise
/// pointwise for n = 1..horizon with every parameter bound. The result is
/// also stored in sol.verified. Throws Error on unbound parameters in
/// pointwise mode.
Verification verify_recurrence(PincherleSolution& sol, long horizon = 64);

/// Empirical check of the hypothesis G_n / B_n -> 0.
struct DecayReport {
  bool monotone = false;      ///< |G_n/B_n| non-increasing on [H/2, H]
  bool small = false;         ///< |G_H/B_H| < 10^-10
  bool supported = false;     ///< monotone && small
  bool error_shrinking = false; ///< |x_n - L| non-increasing at n = H/4, H/2, H
  BigRational final_ratio;
  long horizon = 0;
  std::string detail;
};

/// Tracks |w_n / B_n| for a given numerator sequence w (G_n, or n^2 for the
/// extra hypothesis of one family) and, when `limit` is given, the distance of
/// the approximants to it.
DecayReport decay_report(const CFSpec& cf, const Sequence& w, long horizon,
                         const std::optional<BigRational>& limit = std::nullopt);

struct PincherleLimit {
  BigRational limit;
  DecayReport decay;
};

/// -G_0 / G_{-1}. Throws DomainError when G_{-1} = 0 or a partial numerator
/// vanishes. A failed decay check is reported, not thrown.
PincherleLimit pincherle_limit(const PincherleSolution& sol, long horizon = 200);

struct HypeConstruction {
  Sequence s; ///< f_n G_{n-1} + a_n
  Sequence t; ///< f_n G_{n-2} - b_n
  BigRational limit; ///< +G_0 / G_{-1}
  CFSpec cf;         ///< K s_n / t_n
  PincherleSolution flipped; ///< G'_n = (-1)^(n+1) G_n with (s, t)
};

/// Builds K s_n/t_n. Polynomial inputs give polynomial s and t. Throws
/// DomainError when some s_n vanishes (proven or within `horizon`), or when
/// G_{-1} = 0.
HypeConstruction hype_construct(const PincherleSolution& sol, const Sequence& f, long horizon = 64);

struct QuadraticSolution {
  Poly d, e, f, g;
  PincherleSolution solution; ///< G = a n^2 + b n + c, a_n = d n + e, b_n = f n + g
};

/// Linear a_n, b_n for quadratic G with coefficients polynomial in the
/// parameters. Throws DomainError when a^2 - b^2 + 4ac vanishes or does not
/// divide the numerators exactly.
QuadraticSolution quadratic_solve(const Poly& a, const Poly& b, const Poly& c);

} // namespace pcf
