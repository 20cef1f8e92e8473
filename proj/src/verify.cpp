#include "pcf/verify.hpp"

namespace pcf {

using nlohmann::json;

IdentityReport verify_identity(const FamilyInstance& inst, const BigRational& width, long n_max) {
  if (width <= 0)
    throw DomainError("width must be positive");
  IdentityReport r;
  r.id = inst.family_id;
  BracketResult br = bracket_limit(inst.cf, width, n_max);
  r.cf_enclosure = br.enclosure;
  r.n_used = br.n_used;
  r.width_reached = br.width_reached;
  r.note = br.note;
  if (auto L = inst.exact_limit()) {
    r.exact_limit = true;
    r.limit_enclosure = Enclosure{*L, *L, true};
    r.agree = r.cf_enclosure.contains(*L);
  } else {
    r.limit_enclosure = constant_enclosure(inst.claimed_limit, width, inst.params);
    r.agree = r.cf_enclosure.intersects(r.limit_enclosure);
  }
  r.margin = abs(BigRational(r.cf_enclosure.center() - r.limit_enclosure.center()));
  r.rigorous = r.cf_enclosure.rigorous && r.limit_enclosure.rigorous;
  if (!r.cf_enclosure.rigorous)
    r.note += (r.note.empty() ? "" : "; ") + std::string("fraction enclosure is heuristic");
  return r;
}

int digits_for(const BigRational& width) {
  if (width <= 0)
    return 30;
  int d = 0;
  BigRational step(1);
  while (step > width / 10 && d < 2000) {
    step /= 10;
    ++d;
  }
  return std::max(d, 6);
}

json enclosure_json(const Enclosure& e, int digits) {
  return json{{"lo", to_decimal(e.lo, digits, Rounding::down)},
              {"hi", to_decimal(e.hi, digits, Rounding::up)},
              {"lo_exact", to_string(e.lo)},
              {"hi_exact", to_string(e.hi)},
              {"width", to_scientific(e.width())},
              {"rigorous", e.rigorous}};
}

json to_json(const IdentityReport& r) {
  int d = digits_for(std::max(r.cf_enclosure.width(), r.limit_enclosure.width()));
  return json{{"id", r.id},
              {"cf_enclosure", enclosure_json(r.cf_enclosure, d)},
              {"limit_enclosure", enclosure_json(r.limit_enclosure, d)},
              {"agree", r.agree},
              {"margin", to_scientific(r.margin)},
              {"rigorous", r.rigorous},
              {"exact_limit", r.exact_limit},
              {"n_used", r.n_used},
              {"width_reached", r.width_reached},
              {"note", r.note}};
}

json to_json(const TietzeResult& r) {
  json j{{"certified", r.certified()},
         {"a", r.a.to_string()},
         {"b", r.b.to_string()},
         {"start", r.start},
         {"scale", to_string(r.scale)}};
  if (r.certificate) {
    const TietzeCertificate& c = *r.certificate;
    j["N0"] = c.N0;
    j["checked_range_end"] = c.checked_range_end;
    j["asymptotic_ok"] = c.asymptotic_ok;
    j["per_n_failures_below_N0"] = c.per_n_failures_below_N0;
  } else {
    j["refusal"] = r.refusal;
  }
  return j;
}

json to_json(const FamilyInstance& inst) {
  json params = json::object();
  for (const auto& [k, v] : inst.params)
    params[k] = to_string(v);
  for (const auto& [k, p] : inst.poly_params)
    params[k] = p.to_string();
  auto conds = [](const std::vector<ConditionResult>& v) {
    json arr = json::array();
    for (const auto& c : v)
      arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return arr;
  };
  json j{{"id", inst.family_id},
         {"kind", to_string(inst.kind)},
         {"params", params},
         {"b0", to_string(inst.cf.b0)},
         {"from", inst.cf.n0},
         {"a", inst.cf.a.to_string()},
         {"b", inst.cf.b.to_string()},
         {"claimed_limit", inst.claimed_limit.to_string()},
         {"side_conditions", conds(inst.side_conditions)},
         {"hypotheses", conds(inst.hypotheses)}};
  if (auto L = inst.exact_limit())
    j["limit_value"] = to_string(*L);
  if (inst.solution) {
    j["solution"] = {{"G", inst.solution->G.to_string()},
                     {"a", inst.solution->a.to_string()},
                     {"b", inst.solution->b.to_string()},
                     {"verified", to_string(inst.solution->verified.kind)}};
  }
  if (inst.decay)
    j["decay"] = {{"supported", inst.decay->supported},
                  {"monotone", inst.decay->monotone},
                  {"final_ratio", to_scientific(inst.decay->final_ratio)},
                  {"horizon", inst.decay->horizon}};
  return j;
}

} // namespace pcf
