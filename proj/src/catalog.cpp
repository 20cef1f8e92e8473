#include "pcf/catalog.hpp"

#include "pcf/parse.hpp"
#include "pcf/roots.hpp"
#include "pcf/transforms.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#ifndef PCF_DEFAULT_CATALOG_DIR
#define PCF_DEFAULT_CATALOG_DIR "catalog"
#endif

namespace pcf {

using nlohmann::json;

std::string to_string(FamilyKind kind) {
  switch (kind) {
  case FamilyKind::pincherle:
    return "pincherle";
  case FamilyKind::hype:
    return "hype";
  case FamilyKind::series:
    return "series";
  case FamilyKind::fraction:
    return "fraction";
  }
  return "fraction";
}

bool FamilyInstance::conditions_ok() const {
  return std::all_of(side_conditions.begin(), side_conditions.end(),
                     [](const ConditionResult& c) { return c.passed; });
}

namespace {

std::string text_of(const json& v) {
  if (v.is_string())
    return v.get<std::string>();
  return v.dump();
}

FamilyKind kind_from(const std::string& s, const std::filesystem::path& file) {
  if (s == "pincherle")
    return FamilyKind::pincherle;
  if (s == "hype")
    return FamilyKind::hype;
  if (s == "series")
    return FamilyKind::series;
  if (s == "fraction")
    return FamilyKind::fraction;
  throw Error(file.string() + ": unknown kind '" + s + "'");
}

std::vector<ConditionSpec> conditions_from(const json& arr) {
  std::vector<ConditionSpec> out;
  for (const auto& c : arr) {
    ConditionSpec spec;
    for (const auto& [k, v] : c.items()) {
      if (k == "check")
        spec.check = v.get<std::string>();
      else if (k == "message")
        spec.message = v.get<std::string>();
      else
        spec.args[k] = text_of(v);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::map<long, std::string> overrides_from(const json& obj) {
  std::map<long, std::string> out;
  for (const auto& [k, v] : obj.items())
    out[std::stol(k)] = text_of(v);
  return out;
}

std::set<std::string> all_names(const FamilyDef& def) {
  std::set<std::string> s;
  for (const auto& p : def.params)
    s.insert(p.name);
  return s;
}

std::set<std::string> rational_names(const FamilyDef& def) {
  std::set<std::string> s;
  for (const auto& p : def.params)
    if (p.type != ParamSpec::Type::poly)
      s.insert(p.name);
  return s;
}

// Exact value of a parameter-only expression.
BigRational constant_value(const std::string& text, const std::set<std::string>& names,
                           const Bindings& params) {
  auto v = ConstantExpr::parse(text, &names).exact(params);
  if (!v)
    throw Error("'" + text + "' is not an exact rational expression");
  return *v;
}

struct Builder {
  const FamilyDef& def;
  FamilyInstance& inst;
  const InstantiateOptions& opt;

  std::set<std::string> names() const { return rational_names(def); }

  BigRational value(const std::string& text) const { return constant_value(text, names(), inst.params); }

  SequenceExpr expr(const std::string& text, bool keep_free = false) const {
    return resolve_expr(def, text, inst.params, inst.poly_params, keep_free);
  }

  Poly poly(const std::string& text) const {
    auto p = expr(text).as_poly();
    if (!p)
      throw Error("'" + text + "' is not polynomial in n");
    return *p;
  }

  const std::string& need(const std::string& role) const {
    auto it = def.exprs.find(role);
    if (it == def.exprs.end())
      throw Error("family " + def.id + " has no '" + role + "' expression");
    return it->second;
  }

  void record(std::vector<ConditionResult>& into, ConditionResult r) const {
    into.push_back(r);
    if (opt.enforce && !r.passed && &into == &inst.side_conditions)
      throw SideConditionError("side condition violated: " + r.name +
                               (r.detail.empty() ? "" : " (" + r.detail + ")"));
  }

  void bind_params(const std::map<std::string, std::string>& raw) {
    for (const auto& [k, v] : raw) {
      bool known = std::any_of(def.params.begin(), def.params.end(),
                               [&](const ParamSpec& p) { return p.name == k; });
      if (!known)
        throw Error("family " + def.id + " has no parameter '" + k + "'");
    }
    std::set<std::string> none;
    for (const auto& p : def.params) {
      auto it = raw.find(p.name);
      std::string text = it != raw.end() ? it->second : p.default_value;
      if (text.empty())
        throw Error("missing parameter '" + p.name + "' for family " + def.id);
      if (p.type == ParamSpec::Type::poly) {
        Poly q = parse_poly(text, &none);
        inst.poly_params[p.name] = q;
        continue;
      }
      BigRational q = constant_value(text, none, {});
      inst.params[p.name] = q;
      if (p.type == ParamSpec::Type::integer)
        record(inst.side_conditions, {p.name + " is an integer", is_integer(q), p.name + " = " + to_string(q)});
      if (p.min)
        record(inst.side_conditions,
               {p.name + " >= " + to_string(*p.min), q >= *p.min, p.name + " = " + to_string(q)});
      if (p.nonzero)
        record(inst.side_conditions, {p.name + " != 0", q != 0, ""});
    }
  }

  ConditionResult check(const ConditionSpec& c) const {
    ConditionResult r;
    auto arg = [&](const char* key) -> const std::string& {
      auto it = c.args.find(key);
      if (it == c.args.end())
        throw Error("condition '" + c.check + "' in family " + def.id + " lacks '" + key + "'");
      return it->second;
    };
    try {
      if (c.check == "greater") {
        r.name = arg("lhs") + " > " + arg("rhs");
        r.passed = value(arg("lhs")) > value(arg("rhs"));
      } else if (c.check == "nonzero") {
        r.name = arg("expr") + " != 0";
        r.passed = value(arg("expr")) != 0;
      } else if (c.check == "not_negative_integer") {
        r.name = arg("expr") + " is not a negative integer";
        BigRational v = value(arg("expr"));
        r.passed = !(is_integer(v) && v < 0);
        r.detail = arg("expr") + " = " + to_string(v);
      } else if (c.check == "poly_at_least") {
        r.name = arg("seq") + " >= " + arg("value") + " for n >= 1";
        Poly p = poly(arg("seq")) - Poly(value(arg("value")));
        auto from = holds_from(IndexPoly(p), SignCondition::nonnegative, 1);
        r.passed = from && *from == 1;
        if (!r.passed)
          r.detail = arg("seq") + " = " + poly(arg("seq")).to_string();
      } else if (c.check == "min_degree") {
        r.name = "deg " + arg("seq") + " >= " + arg("value");
        r.passed = poly(arg("seq")).degree() >= std::stol(arg("value"));
      } else if (c.check == "value_greater") {
        r.name = arg("seq") + "(" + arg("at") + ") > " + arg("value");
        BigRational v = poly(arg("seq")).eval(BigRational(std::stol(arg("at"))));
        r.passed = v > value(arg("value"));
        r.detail = "value " + to_string(v);
      } else if (c.check == "lead_gt_if_linear") {
        r.name = "leading coefficient of " + arg("seq") + " > " + arg("than") + " when it is linear";
        Poly p = poly(arg("seq"));
        r.passed = p.degree() != 1 || p.leading_coefficient().constant_value().value() > value(arg("than"));
      } else if (c.check == "nonzero_numerators") {
        r.name = "no partial numerator vanishes";
        NumeratorCheck nc = check_numerators(inst.cf);
        r.passed = nc.status != NumeratorCheck::Status::violated;
        if (nc.status == NumeratorCheck::Status::violated)
          r.detail = "a_n = 0 at n = " + std::to_string(nc.index);
        else if (nc.status == NumeratorCheck::Status::checked_to_horizon)
          r.detail = "checked to n = " + std::to_string(nc.index);
        else
          r.detail = "proven";
      } else {
        throw Error("unknown condition '" + c.check + "' in family " + def.id);
      }
    } catch (const DomainError& e) {
      r.passed = false;
      r.detail = e.what();
    }
    if (!c.message.empty())
      r.name = c.message;
    return r;
  }

  bool needs_cf(const ConditionSpec& c) const { return c.check == "nonzero_numerators"; }

  Sequence with_overrides(Sequence s, const std::map<long, std::string>& at) const {
    for (const auto& [k, text] : at)
      s = s.with_value(k, value(text));
    return s;
  }

  void build() {
    switch (inst.kind) {
    case FamilyKind::pincherle:
    case FamilyKind::hype: {
      PincherleSolution sol{Sequence(expr(need("G"), true)), Sequence(expr(need("a"), true)),
                            Sequence(expr(need("b"), true)), inst.params, {}};
      Verification v = verify_recurrence(sol);
      inst.side_conditions.push_back({"G_n = a_n G_{n-2} + b_n G_{n-1}", v.passed, to_string(v.kind) + ": " + v.detail});
      if (!v.passed)
        throw Error("family " + def.id + ": solution fails the recurrence: " + v.detail);
      if (sol.G.at(-1, sol.params) == 0)
        record(inst.side_conditions, {"G_{-1} != 0", false, ""});
      if (inst.kind == FamilyKind::pincherle) {
        inst.cf = CFSpec{0, 1, sol.a.bind(sol.params), sol.b.bind(sol.params), {}};
        inst.derived_limit = -sol.G.at(0, sol.params) / sol.G.at(-1, sol.params);
      } else {
        Sequence f(expr(need("f")));
        try {
          HypeConstruction h = hype_construct(sol, f);
          inst.cf = h.cf;
          inst.derived_limit = h.limit;
        } catch (const DomainError& e) {
          throw SideConditionError(std::string("side condition violated: no partial numerator vanishes (") +
                                   e.what() + ")");
        }
      }
      inst.solution = std::move(sol);
      break;
    }
    case FamilyKind::fraction: {
      BigRational b0 = def.exprs.count("b0") ? value(def.exprs.at("b0")) : BigRational(0);
      long from = def.exprs.count("from") ? std::stol(def.exprs.at("from")) : 1;
      inst.cf = CFSpec{b0, from, with_overrides(Sequence(expr(need("a"))), def.a_at),
                       with_overrides(Sequence(expr(need("b"))), def.b_at), {}};
      break;
    }
    case FamilyKind::series: {
      Sequence b = with_overrides(Sequence(expr(need("b"))), def.b_at);
      BigRational x = def.exprs.count("x") ? value(def.exprs.at("x")) : BigRational(1);
      try {
        inst.cf = series_to_cf(b, x).cf;
      } catch (const DomainError& e) {
        throw SideConditionError(std::string("side condition violated: b_n != 0 (") + e.what() + ")");
      }
      if (def.exprs.count("b0_shift"))
        inst.cf.b0 += value(def.exprs.at("b0_shift"));
      if (def.exprs.count("scale"))
        inst.cf = equiv_scale(inst.cf, Sequence(Poly(value(def.exprs.at("scale")))));
      break;
    }
    }
  }

  void hypotheses() {
    if (inst.solution) {
      const PincherleSolution& sol = *inst.solution;
      Sequence w = sol.G.bind(sol.params);
      try {
        DecayReport d = decay_report(inst.cf, w, opt.decay_horizon, inst.derived_limit);
        inst.hypotheses.push_back({"G_n / B_n -> 0 (empirical)", d.supported, d.detail});
        inst.decay = d;
      } catch (const DomainError& e) {
        inst.hypotheses.push_back({"G_n / B_n -> 0 (empirical)", false, e.what()});
      }
    }
    for (const auto& c : def.hypotheses) {
      if (c.check != "growth")
        throw Error("unknown hypothesis '" + c.check + "' in family " + def.id);
      auto it = c.args.find("seq");
      if (it == c.args.end())
        throw Error("growth hypothesis in family " + def.id + " lacks 'seq'");
      DecayReport d = decay_report(inst.cf, Sequence(expr(it->second)), opt.decay_horizon);
      inst.hypotheses.push_back({c.message.empty() ? it->second + " / B_n -> 0 (empirical)" : c.message,
                                 d.supported, d.detail});
    }
  }

  void shift_start() {
    if (opt.from == 1)
      return;
    if (opt.from < 1)
      throw Error("start index must be at least 1");
    if (inst.kind != FamilyKind::pincherle && inst.kind != FamilyKind::hype)
      throw Error("a later start index applies only to pincherle and hype families");
    auto L = inst.exact_limit();
    if (!L)
      throw Error("a later start index needs an exact limit");
    // L = a_1/(b_1 + X_2), so X_{j+1} = a_j / X_j - b_j.
    BigRational X = *L;
    for (long j = 1; j < opt.from; ++j) {
      if (X == 0)
        throw DomainError("tail value vanishes; cannot start later", j);
      X = inst.cf.a.at(j) / X - inst.cf.b.at(j);
    }
    inst.cf.n0 = opt.from;
    inst.claimed_limit = ConstantExpr::rational(X);
    inst.from = opt.from;
  }
};

} // namespace

SequenceExpr resolve_expr(const FamilyDef& def, const std::string& text, const Bindings& params,
                          const std::map<std::string, Poly>& poly_params, bool keep_free) {
  std::set<std::string> known = all_names(def);
  SequenceExpr e = parse_sequence(text, &known);
  for (const auto& [name, p] : poly_params)
    e = e.substitute(name, p);
  if (!keep_free)
    e = e.bind(params);
  return e;
}

FamilyDef parse_family_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in)
    throw Error("cannot open " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(file.string() + ": " + e.what());
  }
  FamilyDef def;
  def.source = file;
  try {
    def.id = j.at("id").get<std::string>();
    def.title = j.value("title", "");
    def.anchor = j.value("anchor", "");
    def.kind = kind_from(j.at("kind").get<std::string>(), file);
    def.limit = text_of(j.at("limit"));
    for (const auto& p : j.value("params", json::array())) {
      ParamSpec spec;
      spec.name = p.at("name").get<std::string>();
      std::string type = p.value("type", "rational");
      if (type == "integer")
        spec.type = ParamSpec::Type::integer;
      else if (type == "rational")
        spec.type = ParamSpec::Type::rational;
      else if (type == "poly")
        spec.type = ParamSpec::Type::poly;
      else
        throw Error(file.string() + ": unknown parameter type '" + type + "'");
      if (p.contains("min"))
        spec.min = parse_rational(text_of(p["min"]));
      spec.nonzero = p.value("nonzero", false);
      if (p.contains("default"))
        spec.default_value = text_of(p["default"]);
      spec.description = p.value("description", "");
      def.params.push_back(spec);
    }
    for (const char* role : {"G", "a", "b", "f", "b0", "from", "x", "scale", "b0_shift"})
      if (j.contains(role))
        def.exprs[role] = text_of(j[role]);
    if (j.contains("a_at"))
      def.a_at = overrides_from(j["a_at"]);
    if (j.contains("b_at"))
      def.b_at = overrides_from(j["b_at"]);
    if (j.contains("display"))
      for (const auto& [k, v] : j["display"].items())
        def.display[k] = text_of(v);
    def.conditions = conditions_from(j.value("conditions", json::array()));
    def.hypotheses = conditions_from(j.value("hypotheses", json::array()));
  } catch (const json::exception& e) {
    throw Error(file.string() + ": " + e.what());
  }
  return def;
}

Catalog Catalog::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error("catalog directory not found: " + dir.string());
  Catalog c;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      c.families_.push_back(parse_family_file(entry.path()));
  std::sort(c.families_.begin(), c.families_.end(),
            [](const FamilyDef& x, const FamilyDef& y) { return x.id < y.id; });
  for (std::size_t i = 1; i < c.families_.size(); ++i)
    if (c.families_[i].id == c.families_[i - 1].id)
      throw Error("duplicate family id " + c.families_[i].id);
  return c;
}

std::filesystem::path Catalog::default_dir() {
  if (const char* env = std::getenv("PCF_CATALOG_DIR"); env && *env)
    return env;
  return PCF_DEFAULT_CATALOG_DIR;
}

Catalog Catalog::load_default() { return load(default_dir()); }

std::vector<std::string> Catalog::ids() const {
  std::vector<std::string> out;
  for (const auto& f : families_)
    out.push_back(f.id);
  return out;
}

const FamilyDef& Catalog::find(std::string_view id) const {
  for (const auto& f : families_)
    if (f.id == id)
      return f;
  throw Error("unknown family '" + std::string(id) + "'");
}

FamilyInstance Catalog::instantiate(std::string_view id, const std::map<std::string, std::string>& params,
                                    const InstantiateOptions& options) const {
  const FamilyDef& def = find(id);
  FamilyInstance inst;
  inst.family_id = def.id;
  inst.kind = def.kind;
  Builder b{def, inst, options};
  b.bind_params(params);
  for (const auto& c : def.conditions)
    if (!b.needs_cf(c))
      b.record(inst.side_conditions, b.check(c));
  b.build();
  for (const auto& c : def.conditions)
    if (b.needs_cf(c))
      b.record(inst.side_conditions, b.check(c));
  std::set<std::string> names = rational_names(def);
  inst.claimed_limit = ConstantExpr::parse(def.limit, &names);
  if (inst.derived_limit) {
    auto claimed = inst.exact_limit();
    bool match = claimed && *claimed == *inst.derived_limit;
    b.record(inst.side_conditions, {"stated limit equals the Pincherle value", match,
                                    "Pincherle value " + to_string(*inst.derived_limit)});
  }
  b.hypotheses();
  b.shift_start();
  return inst;
}

} // namespace pcf
