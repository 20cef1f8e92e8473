#pragma once

#include "pcf/engine.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace pcf {

/// A convergent series sum_k u_k given by its first term and a step rule,
/// with what is known about the ratios u_{k+1}/u_k from a given index on.
struct SeriesKernel {
  BigRational first;
  /// u_{k+1} from k and u_k.
  std::function<BigRational(long k, const BigRational& uk)> next;
  /// Bound on |u_{j+1}/u_j| valid for every j >= k.
  std::function<BigRational(long k)> ratio_bound;
  /// Terms alternate in sign from the first one on.
  bool alternating = false;
};

/// Sum of the first `terms` terms plus a rigorous tail: when the terms
/// alternate and the ratio bound is <= 1 the partial sums bracket the value;
/// otherwise the bound rho < 1 gives |tail| <= |u_K| / (1 - rho). Throws
/// DomainError when neither applies at this truncation.
Enclosure sum_series(const SeriesKernel& s, long terms);

/// Smallest truncation whose enclosure is at most `width` wide.
Enclosure sum_series_to(const SeriesKernel& s, const BigRational& width, long max_terms = 1'000'000);

/// sin(sqrt t)/sqrt t = sum (-1)^k t^k / (2k+1)!
SeriesKernel kernel_S(const BigRational& t);
/// cos(sqrt t) = sum (-1)^k t^k / (2k)!
SeriesKernel kernel_C(const BigRational& t);
/// sum (-1)^k t^k / (k! (k+nu)!), so nu! (2m)^nu J_nu(1/m) = nu! JT(nu, 1/(4m^2)).
SeriesKernel kernel_JT(long nu, const BigRational& t);
/// sum q^k / k!
SeriesKernel kernel_EXP(const BigRational& q);
/// arctan q = sum (-1)^k q^(2k+1) / (2k+1); requires |q| <= 1/2.
SeriesKernel kernel_ATAN_small(const BigRational& q);
/// Catalan's constant as (1/64) sum_{n>=1} 256^n (580n^2 - 184n + 15) /
/// (n^3 (2n-1) C(6n,3n) C(6n,4n) C(4n,2n)); consecutive terms have ratio <= 1/10.
SeriesKernel kernel_CATALAN();
/// Catalan's constant from its defining alternating series sum (-1)^k/(2k+1)^2.
SeriesKernel kernel_CATALAN_defining();

/// Closed-form value built from rationals, parameters, and the kernels
///   S(t), C(t), JT(nu, t), EXP(q), ATAN(q), CATALAN, PI, E, fact(k)
/// with + - * / and integer powers. Kernel arguments must be exact rationals
/// (no kernels inside). PI = 16 ATAN(1/5) - 4 ATAN(1/239), E = EXP(1).
class ConstantExpr {
public:
  struct Node;

  ConstantExpr() = default;
  static ConstantExpr parse(std::string_view text, const std::set<std::string>* known_params = nullptr);
  static ConstantExpr rational(const BigRational& q);

  /// Exact value when no kernel occurs.
  std::optional<BigRational> exact(const Bindings& params = {}) const;
  std::set<std::string> parameters() const;
  std::string to_string() const;
  bool empty() const { return !root_; }

  const std::shared_ptr<const Node>& root() const { return root_; }

private:
  explicit ConstantExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

/// Rigorous enclosure of width <= `width`. Throws DomainError on division by
/// an interval containing 0 and on invalid kernel arguments.
Enclosure constant_enclosure(const ConstantExpr& c, const BigRational& width, const Bindings& params = {});

} // namespace pcf
