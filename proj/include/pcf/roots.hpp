#pragma once

#include "pcf/poly.hpp"
#include "pcf/sequence.hpp"

#include <optional>

namespace pcf {

/// Integer R >= 1 with every real root of the univariate polynomial `p`
/// strictly below R in absolute value (Cauchy: 1 + max |c_i / c_d|).
long cauchy_bound(const IndexPoly& p);

enum class SignCondition { positive, nonnegative, nonzero };

/// Smallest integer N0 >= `start` such that `p(n)` satisfies `cond` for every
/// integer n >= N0, or nullopt when the condition fails for infinitely many n
/// or the exhaustive check below the root bound would exceed `max_scan`.
std::optional<long> holds_from(const IndexPoly& p, SignCondition cond, long start = 1,
                               long max_scan = 10'000'000);

/// Proven index from which `s` is positive (resp. nonzero): the body must be
/// a polynomial in n once `params` are bound; point overrides are honoured.
/// Returns nullopt when no such proof is available.
std::optional<long> eventually(const Sequence& s, const Bindings& params, SignCondition cond,
                               long start = 1);

} // namespace pcf
