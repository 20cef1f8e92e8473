#pragma once

#include "pcf/poly.hpp"
#include "pcf/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace pcf {

/// Non-polynomial factor of a closed-form sequence, raised to `exponent`.
struct SequenceAtom {
  enum class Kind {
    geometric,  ///< base^(n+offset), base a parameter polynomial (no n)
    factorial,  ///< (n+offset)!
    pochhammer, ///< base (base+1) ... (base+n+offset-1), empty product when n+offset = 0
  };
  Kind kind;
  Poly base; // unused for factorial
  long offset = 0;
  int exponent = 1;

  friend bool operator==(const SequenceAtom&, const SequenceAtom&) = default;
};

/// Closed-form integer-indexed sequence:
///   scale * num(n) / den(n) * (-1)^(n+c) * product of atoms.
/// num and den are polynomials in n and parameters, each normalized so the
/// coefficient of its greatest monomial is 1; the factor lives in `scale`.
class SequenceExpr {
public:
  SequenceExpr() : SequenceExpr(Poly(1L)) {}
  SequenceExpr(const Poly& p); // NOLINT(google-explicit-constructor)
  SequenceExpr(const BigRational& c) : SequenceExpr(Poly(c)) {} // NOLINT
  SequenceExpr(long c) : SequenceExpr(Poly(c)) {}               // NOLINT

  static SequenceExpr sign(long offset);
  static SequenceExpr geometric(const Poly& base, long offset);
  static SequenceExpr factorial(long offset);
  static SequenceExpr pochhammer(const Poly& base, long offset);

  bool is_zero() const { return scale_ == 0; }
  /// No sign, atoms or n-free denominator other than a constant.
  bool is_polynomial() const;
  std::optional<Poly> as_poly() const;

  const BigRational& scale() const { return scale_; }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  std::optional<long> sign_offset() const { return sign_offset_; }
  const std::vector<SequenceAtom>& atoms() const { return atoms_; }

  std::set<std::string> parameters() const;

  /// n -> n + delta on every factor.
  SequenceExpr shift(long delta) const;
  SequenceExpr bind(const Bindings& params) const;
  SequenceExpr substitute(const std::string& var, const Poly& value) const;

  /// Exact value at integer n; every parameter must be bound.
  BigRational eval(long n, const Bindings& params = {}) const;

  SequenceExpr inverse() const;
  SequenceExpr pow(unsigned exponent) const;

  friend SequenceExpr operator*(const SequenceExpr& lhs, const SequenceExpr& rhs);
  friend SequenceExpr operator/(const SequenceExpr& lhs, const SequenceExpr& rhs) {
    return lhs * rhs.inverse();
  }
  friend bool operator==(const SequenceExpr&, const SequenceExpr&) = default;

  /// Canonical text in the expression grammar; parses back to an equal value.
  std::string to_string() const;

private:
  void normalize();

  BigRational scale_{1};
  Poly num_{1L};
  Poly den_{1L};
  std::optional<long> sign_offset_; // normalized to 0 or 1
  std::vector<SequenceAtom> atoms_; // sorted, merged, no zero exponents
};

/// A sequence usable as continued-fraction elements or series terms: a closed
/// form, a finite table, or a derived rule, each with optional point overrides.
/// Values are immutable and cheap to copy.
class Sequence {
public:
  using Rule = std::function<BigRational(long)>;

  Sequence() : Sequence(SequenceExpr(0L)) {}
  Sequence(SequenceExpr formula); // NOLINT(google-explicit-constructor)
  Sequence(const Poly& p) : Sequence(SequenceExpr(p)) {} // NOLINT
  Sequence(long c) : Sequence(SequenceExpr(c)) {}        // NOLINT

  static Sequence tabulated(long first_index, std::vector<BigRational> values);
  static Sequence derived(Rule rule, std::string label);

  /// Same sequence with the value at index `n` replaced.
  Sequence with_value(long n, const BigRational& value) const;

  BigRational at(long n, const Bindings& params = {}) const;

  /// Closed form, when the body is one (overrides may still apply).
  const SequenceExpr* formula() const;
  const std::map<long, BigRational>& overrides() const { return overrides_; }
  /// Largest index available; nullopt for unbounded sequences.
  std::optional<long> horizon() const;

  /// Polynomial body with no overrides, when that is what this is.
  std::optional<Poly> as_poly() const;

  Sequence shift(long delta) const;
  Sequence bind(const Bindings& params) const;

  std::string to_string() const;

private:
  struct Table {
    long first;
    std::shared_ptr<const std::vector<BigRational>> values;
  };
  struct Derived {
    std::shared_ptr<const Rule> rule;
    std::string label;
  };

  std::variant<SequenceExpr, Table, Derived> body_;
  std::map<long, BigRational> overrides_;
};

} // namespace pcf
