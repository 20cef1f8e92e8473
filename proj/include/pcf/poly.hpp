#pragma once

#include "pcf/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pcf {

/// Name of the index variable in every polynomial.
inline constexpr const char* kIndexVar = "n";

/// Variable ordering: the index `n` first, then parameters alphabetically.
bool variable_less(const std::string& lhs, const std::string& rhs);

/// Product of variables with positive exponents, stored in variable order.
class Monomial {
public:
  Monomial() = default;
  static Monomial variable(const std::string& name, unsigned exponent = 1);

  unsigned total_degree() const;
  unsigned degree_in(const std::string& var) const;
  bool is_one() const { return factors_.empty(); }

  /// Same monomial with `var` removed.
  Monomial without(const std::string& var) const;

  /// True when every exponent of `divisor` is <= ours.
  bool divisible_by(const Monomial& divisor) const;
  Monomial quotient(const Monomial& divisor) const;

  const std::vector<std::pair<std::string, unsigned>>& factors() const { return factors_; }

  friend Monomial operator*(const Monomial& lhs, const Monomial& rhs);
  friend bool operator==(const Monomial&, const Monomial&) = default;

private:
  std::vector<std::pair<std::string, unsigned>> factors_;
};

/// Graded lexicographic order (total degree, then lex in variable order).
struct GradedLex {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const;
};

/// Sparse multivariate polynomial with exact rational coefficients over the
/// index variable `n` and any number of named parameters. Zero coefficients
/// are never stored, so structural equality is mathematical equality.
class Poly {
public:
  using Terms = std::map<Monomial, BigRational, GradedLex>;

  Poly() = default;
  Poly(const BigRational& constant); // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(BigRational(constant)) {} // NOLINT(google-explicit-constructor)

  static Poly variable(const std::string& name);
  static Poly index() { return variable(kIndexVar); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<BigRational> constant_value() const;

  /// Degree in `n`; -1 for the zero polynomial.
  int degree() const;
  unsigned total_degree() const;
  /// Coefficient of n^degree(), a polynomial in the parameters.
  Poly leading_coefficient() const;
  /// coefficients_in_index()[k] is the coefficient of n^k.
  std::vector<Poly> coefficients_in_index() const;

  std::set<std::string> variables() const;
  std::set<std::string> parameters() const;
  bool depends_on_index() const;

  /// n -> n + delta.
  Poly shift(long delta) const;
  /// n -> scale*n + offset.
  Poly compose_index(long scale, long offset) const;
  Poly substitute(const std::string& var, const Poly& value) const;
  /// Substitutes every bound parameter; unbound variables stay symbolic.
  Poly bind(const Bindings& params) const;

  /// Requires every parameter to be bound.
  BigRational eval(const BigRational& n, const Bindings& params = {}) const;

  /// Exact quotient when `divisor` divides this polynomial, else nullopt.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  /// Coefficient of the greatest monomial in graded-lex order.
  const BigRational& greatest_coefficient() const;

  const Terms& terms() const { return terms_; }

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator-(const Poly& p);
  friend bool operator==(const Poly&, const Poly&) = default;

  Poly pow(unsigned exponent) const;

  /// Canonical text, greatest term first, e.g. "n^2 + 3*n + 1".
  std::string to_string() const;

private:
  void add_term(const Monomial& m, const BigRational& c);
  Terms terms_;
};

/// Univariate polynomial in `n` with rational coefficients, evaluated by Horner.
class IndexPoly {
public:
  IndexPoly() = default;
  /// Fails unless `p` depends on `n` only.
  explicit IndexPoly(const Poly& p);

  BigRational operator()(const BigRational& n) const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigRational>& coefficients() const { return coeffs_; }

private:
  std::vector<BigRational> coeffs_;
};

} // namespace pcf
