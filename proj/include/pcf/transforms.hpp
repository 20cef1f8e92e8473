#pragma once

#include "pcf/engine.hpp"

namespace pcf {

/// Terms c_n for n >= n0 of a series, plus the variable used by series_to_cf.
struct SeriesSpec {
  Sequence terms;
  BigRational x{1};
  long n0 = 0;
  Bindings params;

  /// Term number k, counted from n0 (k = 0 is the first term).
  BigRational term(long k) const { return terms.at(n0 + k, params); }
};

/// Sum of terms 0..N.
BigRational partial_sum(const SeriesSpec& series, long N);

/// c_0 + c_1/(1 + -c_2/(c_1+c_2 + -c_1 c_3/(c_2+c_3 + ...))), whose N-th
/// approximant is the N-th partial sum. Throws DomainError when a term with
/// k >= 1 vanishes (checked symbolically when possible, else up to `horizon`
/// and again lazily while evaluating).
CFSpec euler_cf(const SeriesSpec& series, long horizon = 64);

struct SeriesFraction {
  CFSpec cf;
  /// Indices n <= horizon with b_n = x; the fraction has a zero partial
  /// denominator there but stays well defined.
  std::vector<long> zero_denominators;
};

/// b_0 + K_{n>=1} b_{n-1} x / (b_n - x), with N-th approximant
/// 1 / sum_{n=0}^{N} (-1)^n x^n / (b_0 ... b_n). The index of `b` starts at
/// 0. Throws DomainError when some b_n vanishes for n <= horizon.
SeriesFraction series_to_cf(const Sequence& b, const BigRational& x, long horizon = 64,
                            const Bindings& params = {});

/// Right-hand side of the finite identity: 1 / sum_{n=0}^{N} (-1)^n x^n / prod b_i.
BigRational reciprocal_series_sum(const Sequence& b, const BigRational& x, long N,
                                  const Bindings& params = {});

/// Contraction whose k-th approximant equals the 2k-th approximant of `cf`:
///   alpha_1 = a_1 b_2,  beta_1 = a_2 + b_1 b_2,
///   alpha_k = -a_{2k-2} a_{2k-1} b_{2k-4} b_{2k}   (b_0 read as 1),
///   beta_k  = a_{2k-1} b_{2k} + b_{2k-2} (a_{2k} + b_{2k-1} b_{2k}).
/// Positions refer to cf.normalized(). Polynomial input gives polynomial
/// output. Throws DomainError when b_{2k} = 0 for some k <= N.
CFSpec even_part(const CFSpec& cf, long N = 64);

/// a_n -> c_n c_{n-1} a_n, b_n -> c_n b_n, indexed like `cf`, with the
/// factor before the first element read as 1. Approximants are unchanged.
/// Throws DomainError when c_n = 0 for a checked index (up to `horizon`).
CFSpec equiv_scale(const CFSpec& cf, const Sequence& c, long horizon = 64);

} // namespace pcf
