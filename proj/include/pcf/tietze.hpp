#pragma once

#include "pcf/sequence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcf {

struct TietzeCertificate {
  long N0 = 1;
  /// Conditions were checked one n at a time on [N0, checked_range_end];
  /// beyond it they follow from root bounds on the difference polynomials.
  long checked_range_end = 1;
  bool asymptotic_ok = false;
  std::vector<long> per_n_failures_below_N0;
};

struct TietzeResult {
  std::optional<TietzeCertificate> certificate;
  std::string refusal;
  /// Constant equivalence factor c applied to reach integer elements
  /// (a -> c^2 a, b -> c b); 1 when none was needed.
  BigRational scale{1};
  Poly a; ///< elements actually tested
  Poly b;
  long start = 1; ///< first index of the polynomial body

  bool certified() const { return certificate.has_value(); }
};

/// Per-n conditions: a_n != 0, b_n >= 1, b_n >= |a_n|, and b_n >= |a_n| + 1
/// when a_{n+1} < 0.
bool tietze_condition_at(const Poly& a, const Poly& b, long n);

/// Tietze's irrationality criterion for K a_n/b_n with polynomial bodies.
/// Overrides form a finite head; the criterion is applied to the tail after
/// them, whose irrationality carries over to the whole fraction as long as no
/// numerator vanishes. Refuses (with a reason) when an element is not
/// polynomial, some numerator vanishes, or an inequality fails infinitely often.
TietzeResult tietze_check(const Sequence& a, const Sequence& b, const Bindings& params = {}, long first_index = 1);

} // namespace pcf
