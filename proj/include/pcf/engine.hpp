#pragma once

#include "pcf/rational.hpp"
#include "pcf/sequence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcf {

/// b0 + K_{n >= n0} a_n / b_n.
struct CFSpec {
  BigRational b0{0};
  long n0 = 1;
  Sequence a;
  Sequence b;
  Bindings params;

  /// Same fraction re-indexed to start at 1 with parameters substituted.
  CFSpec normalized() const;

  /// Element at internal position i >= 1 (i.e. at index n0 + i - 1).
  BigRational a_at(long i) const;
  BigRational b_at(long i) const;
};

/// Status of the a_n != 0 requirement.
struct NumeratorCheck {
  enum class Status { proven, checked_to_horizon, violated };
  Status status;
  long index = -1; ///< first zero (violated) or horizon (checked_to_horizon)
};

/// Proves a_n != 0 for every n >= n0 when a is polynomial after binding;
/// otherwise checks pointwise up to `horizon` positions.
NumeratorCheck check_numerators(const CFSpec& cf, long horizon = 64);

/// A_n / B_n at internal position n (n = 0 gives b0 / 1).
struct ConvergentPair {
  long n = 0;
  BigRational A;
  BigRational B;

  /// A/B; throws DomainError when B vanishes.
  BigRational value() const;
};

/// Incremental three-term recurrence, one step per call to advance().
/// Holds per-call state; not meant to be shared between threads.
class ConvergentStream {
public:
  explicit ConvergentStream(const CFSpec& cf);

  /// Moves from position n to n+1. Throws DomainError on a zero numerator.
  const ConvergentPair& advance();

  const ConvergentPair& current() const { return cur_; }
  const ConvergentPair& previous() const { return prev_; }
  /// Product a_1 ... a_n of the numerators consumed so far.
  const BigRational& numerator_product() const { return numerator_product_; }
  const CFSpec& spec() const { return cf_; }

private:
  CFSpec cf_;
  ConvergentPair prev_;
  ConvergentPair cur_;
  BigRational numerator_product_{1};
};

/// Pairs for n = 1..N. A vanishing B_n is allowed here.
std::vector<ConvergentPair> convergents(const CFSpec& cf, long N);

/// A_N / B_N via the forward recurrence (N = 0 gives b0).
BigRational eval_forward(const CFSpec& cf, long N);

/// Same value folded from the innermost level outward.
BigRational eval_backward(const CFSpec& cf, long N);

/// Closed interval with exact endpoints. When `rigorous` is set the value is
/// proven to lie inside.
struct Enclosure {
  BigRational lo;
  BigRational hi;
  bool rigorous = false;

  BigRational width() const { return hi - lo; }
  BigRational center() const { return (lo + hi) / 2; }
  bool contains(const BigRational& x) const { return lo <= x && x <= hi; }
  bool intersects(const Enclosure& other) const { return lo <= other.hi && other.lo <= hi; }
};

struct BracketResult {
  Enclosure enclosure;
  long n_used = 0;
  bool width_reached = false;
  /// Position from which every element is provably positive, if found.
  std::optional<long> positive_from;
  std::string note;
};

/// Encloses the limit of `cf` to the requested width.
///
/// When a_n, b_n > 0 is proven for all positions >= p, consecutive
/// approximants x_n, x_{n+1} with n >= p and B_n B_{n+1} > 0 bracket the
/// value: the tail from p alternates around its limit and the finite head
/// maps it through a Mobius transformation that is monotone away from its
/// pole, and the pole is excluded by the sign condition on B. Otherwise the
/// last two approximants are returned with rigorous = false.
BracketResult bracket_limit(const CFSpec& cf, const BigRational& width, long n_max);

struct GrowthReport {
  bool applicable = false;
  bool fibonacci_ok = false; ///< B_n >= Fib(n) for all computed n
  bool dominance_ok = false; ///< B_{n+1} >= b_{n+1} B_n for all computed n >= 1
  double log_growth = 0;     ///< log(B_N) / (N log N)
  std::string note;
};

/// Requires a_n, b_n >= 1 for the first N positions (else not applicable).
GrowthReport growth_report(const CFSpec& cf, long N);

} // namespace pcf
