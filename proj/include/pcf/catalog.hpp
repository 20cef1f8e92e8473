#pragma once

#include "pcf/constants.hpp"
#include "pcf/engine.hpp"
#include "pcf/error.hpp"
#include "pcf/pincherle.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcf {

/// Instantiation refused because a family's side condition fails.
class SideConditionError : public DomainError {
public:
  using DomainError::DomainError;
};

enum class FamilyKind {
  pincherle, ///< K a_n/b_n with a known solution G; limit -G_0/G_{-1}
  hype,      ///< K s_n/t_n built from (G, a, b) and f; limit G_0/G_{-1}
  series,    ///< b_0 + K b_{n-1}x/(b_n - x), optionally shifted and rescaled
  fraction,  ///< explicit b0 + K a_n/b_n
};

std::string to_string(FamilyKind kind);

struct ParamSpec {
  enum class Type { integer, rational, poly };
  std::string name;
  Type type = Type::rational;
  std::optional<BigRational> min;
  bool nonzero = false;
  std::string default_value;
  std::string description;
};

/// A check from a definition file: "check" names the test, the remaining
/// string fields are its arguments.
struct ConditionSpec {
  std::string check;
  std::map<std::string, std::string> args;
  std::string message;
};

/// One family definition, as read from its file.
struct FamilyDef {
  std::string id;
  std::string title;
  std::string anchor;
  FamilyKind kind = FamilyKind::fraction;
  std::vector<ParamSpec> params;
  /// Element expressions by role: G, a, b, f, b0, from, x, scale, b0_shift.
  std::map<std::string, std::string> exprs;
  std::map<long, std::string> a_at;
  std::map<long, std::string> b_at;
  std::string limit;
  /// Displayed numerator/denominator shapes (hype families), with f symbolic.
  std::map<std::string, std::string> display;
  std::vector<ConditionSpec> conditions;
  std::vector<ConditionSpec> hypotheses;
  std::filesystem::path source;
};

struct ConditionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FamilyInstance {
  std::string family_id;
  FamilyKind kind = FamilyKind::fraction;
  Bindings params;
  std::map<std::string, Poly> poly_params;
  /// Fully bound fraction.
  CFSpec cf;
  /// Limit as stated; may mention the rational parameters.
  ConstantExpr claimed_limit;
  std::vector<ConditionResult> side_conditions;
  /// Empirical hypotheses (decay, extra growth assumptions); not enforced.
  std::vector<ConditionResult> hypotheses;
  /// Pincherle and hype families: the triple (G, a, b), parameters free where
  /// the family allows it, with its verification status.
  std::optional<PincherleSolution> solution;
  /// Value given by the Pincherle argument (before any tail shift).
  std::optional<BigRational> derived_limit;
  std::optional<DecayReport> decay;
  long from = 1;

  std::optional<BigRational> exact_limit() const { return claimed_limit.exact(params); }
  bool conditions_ok() const;
};

struct InstantiateOptions {
  /// Throw SideConditionError on the first failed side condition.
  bool enforce = true;
  /// Start the fraction at this index (pincherle and hype families); the
  /// claimed limit becomes the value of that tail.
  long from = 1;
  long decay_horizon = 200;
};

/// Immutable set of family definitions; safe to share between threads.
class Catalog {
public:
  static Catalog load(const std::filesystem::path& dir);
  /// $PCF_CATALOG_DIR when set, else the directory configured at build time.
  static Catalog load_default();
  static std::filesystem::path default_dir();

  const std::vector<FamilyDef>& families() const { return families_; }
  std::vector<std::string> ids() const;
  /// Throws Error for an unknown id.
  const FamilyDef& find(std::string_view id) const;

  /// Parameters not given fall back to the defaults in the definition.
  FamilyInstance instantiate(std::string_view id, const std::map<std::string, std::string>& params = {},
                             const InstantiateOptions& options = {}) const;

private:
  std::vector<FamilyDef> families_;
};

/// Reads one definition file. Throws Error on malformed content.
FamilyDef parse_family_file(const std::filesystem::path& file);

/// Element expressions resolved against an instance's parameters: poly
/// parameters are substituted; rational ones are bound unless `keep_free`.
SequenceExpr resolve_expr(const FamilyDef& def, const std::string& text, const Bindings& params,
                          const std::map<std::string, Poly>& poly_params, bool keep_free = false);

} // namespace pcf
