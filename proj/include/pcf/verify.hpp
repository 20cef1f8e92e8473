#pragma once

#include "pcf/catalog.hpp"
#include "pcf/tietze.hpp"

#include "json.hpp"

#include <string>

namespace pcf {

struct IdentityReport {
  std::string id;
  Enclosure cf_enclosure;
  Enclosure limit_enclosure;
  /// Enclosures intersect (exact containment when the limit is rational).
  bool agree = false;
  /// Distance between the centers.
  BigRational margin;
  /// Both enclosures rigorous; otherwise the agreement is heuristic.
  bool rigorous = false;
  bool exact_limit = false;
  long n_used = 0;
  bool width_reached = false;
  std::string note;
};

/// Encloses the fraction (bracket_limit) and the claimed limit to `width`
/// and compares them.
IdentityReport verify_identity(const FamilyInstance& inst, const BigRational& width, long n_max = 50'000);

/// Fractional digits that resolve an interval of this width.
int digits_for(const BigRational& width);

/// {"lo": ..., "hi": ...} as decimals rounded outward (lo down, hi up), the
/// exact endpoints, and the rigor flag.
nlohmann::json enclosure_json(const Enclosure& e, int digits);

nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const TietzeResult& r);
nlohmann::json to_json(const FamilyInstance& inst);

} // namespace pcf
