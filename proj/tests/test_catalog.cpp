#include "doctest.h"
#include "random.hpp"

#include "pcf/catalog.hpp"
#include "pcf/parse.hpp"
#include "pcf/tietze.hpp"
#include "pcf/verify.hpp"

#include <set>

using namespace pcf;
using pcf::testing::Rng;

namespace {

BigRational Q(const char* s) { return parse_rational(s); }

const Catalog& catalog() {
  static const Catalog c = Catalog::load(PCF_TEST_CATALOG_DIR);
  return c;
}

bool has_solution(const FamilyDef& d) { return d.kind == FamilyKind::pincherle || d.kind == FamilyKind::hype; }

} // namespace

TEST_CASE("catalog loads") {
  const auto& fams = catalog().families();
  CHECK(fams.size() >= 35);
  std::set<std::string> ids;
  for (const auto& f : fams)
    ids.insert(f.id);
  CHECK(ids.size() == fams.size());
  for (const char* id : {"nine.i", "nine.ix", "cubic.5", "pochhammer", "sinc", "bessel", "brouncker", "catalan"})
    CHECK(ids.count(id) == 1);
  CHECK_THROWS_AS(catalog().find("no.such.family"), Error);
  CHECK_THROWS_AS(parse_family_file(std::filesystem::path(PCF_TEST_CATALOG_DIR) / "missing.json"), Error);
}

TEST_CASE("every family instantiates at its defaults") {
  for (const auto& def : catalog().families()) {
    CAPTURE(def.id);
    FamilyInstance inst = catalog().instantiate(def.id);
    CHECK(inst.conditions_ok());
    if (has_solution(def)) {
      REQUIRE(inst.solution);
      CHECK(inst.solution->verified.passed);
      REQUIRE(inst.derived_limit);
      if (auto L = inst.exact_limit())
        CHECK(*inst.derived_limit == *L);
    }
  }
}

TEST_CASE("polynomial triples verify symbolically with parameters free") {
  int n = 0;
  for (const auto& def : catalog().families()) {
    if (!has_solution(def) || def.id.rfind("ramanujan", 0) == 0)
      continue;
    FamilyInstance inst = catalog().instantiate(def.id);
    CAPTURE(def.id);
    bool polynomial = inst.solution->G.as_poly().has_value();
    if (polynomial) {
      CHECK(inst.solution->verified.kind == Verification::Kind::symbolic);
      ++n;
    }
    CHECK(inst.solution->verified.passed);
  }
  CHECK(n >= 16);
}

TEST_CASE("displayed shapes match the constructed fractions") {
  Rng rng(61);
  const char* parts[] = {"nine.i", "nine.ii", "nine.iii", "nine.iv", "nine.v", "nine.vi", "nine.vii", "nine.viii", "nine.ix",
                         "cubic.3b", "cubic.4b"};
  for (const char* id : parts) {
    const FamilyDef& def = catalog().find(id);
    int done = 0;
    for (int t = 0; t < 60 && done < 20; ++t) {
      long m = rng.integer(1, 9);
      std::string f = std::to_string(rng.integer(1, 4)) + "*n^" + std::to_string(rng.integer(1, 4)) + " + " +
                      std::to_string(rng.integer(0, 3));
      std::map<std::string, std::string> p{{"m", std::to_string(m)}, {"f", f}};
      if (std::string(id) == "nine.i")
        p["k"] = std::to_string(m + rng.integer(1, 5));
      FamilyInstance inst;
      try {
        inst = catalog().instantiate(id, p);
      } catch (const SideConditionError&) {
        continue;
      }
      CAPTURE(id);
      CAPTURE(f);
      CAPTURE(m);
      auto a = resolve_expr(def, def.display.at("a"), inst.params, inst.poly_params).as_poly();
      auto b = resolve_expr(def, def.display.at("b"), inst.params, inst.poly_params).as_poly();
      REQUIRE(a);
      REQUIRE(b);
      CHECK(inst.cf.a.as_poly() == a);
      CHECK(inst.cf.b.as_poly() == b);
      ++done;
    }
    CHECK(done >= 10);
  }
}

TEST_CASE("example with a negative limit") {
  FamilyInstance inst = catalog().instantiate("nine.vii", {{"m", "3"}, {"f", "16*n"}});
  CHECK(inst.cf.a.as_poly() == parse_poly("48*n^3 - 80*n^2 + 7*n + 2"));
  CHECK(inst.cf.b.as_poly() == parse_poly("48*n^3 - 176*n^2 + 135*n + 19"));
  CHECK(inst.exact_limit() == BigRational(-1));
  REQUIRE(inst.decay);
  CHECK(inst.decay->supported);
  IdentityReport r = verify_identity(inst, Q("1/10^10"));
  CHECK(r.agree);
  CHECK(r.rigorous);
  CHECK(r.cf_enclosure.contains(-1));
}

TEST_CASE("side conditions are enforced") {
  CHECK_THROWS_AS(catalog().instantiate("pochhammer", {{"m", "-2"}}), SideConditionError);
  CHECK_THROWS_AS(catalog().instantiate("nine.ii", {{"m", "1/2"}}), SideConditionError);
  CHECK_THROWS_AS(catalog().instantiate("nine.ii", {{"m", "0"}}), SideConditionError);
  CHECK_THROWS_AS(catalog().instantiate("nine.i", {{"m", "3"}, {"k", "3"}}), SideConditionError);
  CHECK_THROWS_AS(catalog().instantiate("nine.iii", {{"f", "5"}}), SideConditionError);
  CHECK_THROWS_AS(catalog().instantiate("nine.iii", {{"f", "n-3"}}), SideConditionError);
  CHECK_THROWS_AS(catalog().instantiate("nine.iii", {{"q", "1"}}), Error);

  InstantiateOptions loose;
  loose.enforce = false;
  FamilyInstance inst = catalog().instantiate("pochhammer", {{"m", "-2"}}, loose);
  CHECK_FALSE(inst.conditions_ok());

  FamilyInstance ok = catalog().instantiate("pochhammer", {{"m", "5/2"}});
  CHECK(ok.exact_limit() == Q("5/2"));
}

TEST_CASE("tails started later keep their stated value") {
  InstantiateOptions from2;
  from2.from = 2;
  FamilyInstance inst = catalog().instantiate("nine.vi", {{"m", "3"}, {"f", "2*n^5"}}, from2);
  CHECK(inst.exact_limit() == Q("19/7"));
  CHECK(verify_identity(inst, Q("1/10^20")).agree);
}

TEST_CASE("rational limits are enclosed") {
  for (const auto& def : catalog().families()) {
    FamilyInstance inst = catalog().instantiate(def.id);
    if (!inst.exact_limit() || def.id == "pochhammer" || def.id == "shifted_squares")
      continue;
    CAPTURE(def.id);
    IdentityReport r = verify_identity(inst, Q("1/10^12"), 5000);
    CHECK(r.agree);
    CHECK(r.rigorous);
  }
}

TEST_CASE("tietze refuses rational limits and certifies the series families") {
  for (const auto& def : catalog().families()) {
    FamilyInstance inst = catalog().instantiate(def.id);
    if (!inst.exact_limit())
      continue;
    CAPTURE(def.id);
    CHECK_FALSE(tietze_check(inst.cf.a, inst.cf.b, {}, inst.cf.n0).certified());
  }
  for (const char* m2 : {"1", "4", "9"}) {
    for (const char* id : {"sinc", "cosine"}) {
      CAPTURE(id);
      CAPTURE(m2);
      FamilyInstance inst = catalog().instantiate(id, {{"m2", m2}});
      CHECK(tietze_check(inst.cf.a, inst.cf.b, {}, inst.cf.n0).certified());
    }
  }
  for (const char* nu : {"0", "1", "2"}) {
    for (const char* m2 : {"1", "4"}) {
      CAPTURE(nu);
      CAPTURE(m2);
      FamilyInstance inst = catalog().instantiate("bessel", {{"nu", nu}, {"m2", m2}});
      CHECK(tietze_check(inst.cf.a, inst.cf.b, {}, inst.cf.n0).certified());
    }
  }
}
