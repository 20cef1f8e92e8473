// pcf: command-line front end for the continued fraction library.

#include "pcf/catalog.hpp"
#include "pcf/constants.hpp"
#include "pcf/engine.hpp"
#include "pcf/parse.hpp"
#include "pcf/pincherle.hpp"
#include "pcf/tietze.hpp"
#include "pcf/transforms.hpp"
#include "pcf/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using nlohmann::json;
using namespace pcf;

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Output {
  bool structured = false;

  // Prints a record (structured mode) or the headline (plain mode).
  void emit(const std::string& command, const json& inputs, const json& result, bool rigorous,
            const char* count_key, long count, const std::string& headline) const {
    if (structured) {
      json rec{{"command", command}, {"inputs", inputs}, {"result", result}, {"rigorous", rigorous}};
      rec[count_key] = count;
      std::cout << rec.dump() << '\n';
    } else {
      std::cout << headline << '\n';
    }
  }
};

BigRational parse_rat(const std::string& text) {
  std::set<std::string> none;
  auto v = ConstantExpr::parse(text, &none).exact();
  if (!v)
    throw UsageError("'" + text + "' is not an exact rational");
  return *v;
}

std::map<std::string, std::string> split_params(const std::vector<std::string>& raw) {
  std::map<std::string, std::string> out;
  for (const auto& p : raw) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--param expects name=value, got '" + p + "'");
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

Bindings bind_params(const std::vector<std::string>& raw) {
  Bindings b;
  for (const auto& [k, v] : split_params(raw))
    b[k] = parse_rat(v);
  return b;
}

std::set<std::string> names_of(const Bindings& b) {
  std::set<std::string> s;
  for (const auto& [k, v] : b)
    s.insert(k);
  return s;
}

Sequence seq(const std::string& text, const Bindings& params) {
  auto names = names_of(params);
  return Sequence(parse_sequence(text, &names).bind(params));
}

Sequence seq_free(const std::string& text, const Bindings& params) {
  auto names = names_of(params);
  return Sequence(parse_sequence(text, &names));
}

json params_json(const std::vector<std::string>& raw) {
  json j = json::object();
  for (const auto& [k, v] : split_params(raw))
    j[k] = v;
  return j;
}

std::string interval_text(const Enclosure& e) {
  int d = digits_for(e.width());
  return "[" + to_decimal(e.lo, d, Rounding::down) + ", " + to_decimal(e.hi, d, Rounding::up) + "]";
}

json decay_json(const DecayReport& d) {
  return json{{"supported", d.supported},     {"monotone", d.monotone},
              {"small", d.small},             {"error_shrinking", d.error_shrinking},
              {"final_ratio", to_scientific(d.final_ratio)}, {"horizon", d.horizon},
              {"detail", d.detail}};
}

// Value of a CF after N steps compared against a reference value.
json spot_check(const std::string& what, const BigRational& lhs, const BigRational& rhs) {
  return json{{"check", what}, {"equal", lhs == rhs}};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact evaluation, transformation and verification of polynomial continued fractions"};
  app.require_subcommand(1);
  Output out;
  std::string catalog_dir;
  app.add_flag("--json", out.structured, "Line-delimited JSON records instead of plain text");
  app.add_option("--catalog", catalog_dir, "Family definition directory");

  // eval
  auto* eval = app.add_subcommand("eval", "Approximant or rigorous enclosure of b0 + K a_n/b_n");
  std::string e_a, e_b, e_b0 = "0", e_width;
  long e_from = 1, e_N = 0, e_nmax = 200'000;
  std::vector<std::string> e_params;
  eval->add_option("--a", e_a, "Partial numerators")->required();
  eval->add_option("--b", e_b, "Partial denominators")->required();
  eval->add_option("--b0", e_b0, "Leading term");
  eval->add_option("--from", e_from, "First index of the fraction");
  eval->add_option("--param", e_params, "Parameter binding name=value");
  auto* e_N_opt = eval->add_option("-N", e_N, "Approximant number");
  auto* e_w_opt = eval->add_option("--width", e_width, "Target enclosure width (exact rational)");
  eval->add_option("--n-max", e_nmax, "Step limit for --width");
  e_N_opt->excludes(e_w_opt);

  // limit
  auto* limit = app.add_subcommand("limit", "Pincherle limit -G_0/G_{-1} with decay report");
  std::string l_G, l_a, l_b;
  long l_h = 200;
  std::vector<std::string> l_params;
  limit->add_option("--G", l_G, "Solution G_n, n >= -1")->required();
  limit->add_option("--a", l_a)->required();
  limit->add_option("--b", l_b)->required();
  limit->add_option("--param", l_params, "Parameter binding name=value");
  limit->add_option("--horizon", l_h, "Decay check horizon");

  // construct
  auto* construct = app.add_subcommand("construct", "Build K s_n/t_n from a solution (G, a, b) and f");
  std::string c_G, c_a, c_b, c_f;
  std::vector<std::string> c_params;
  construct->add_option("--G", c_G)->required();
  construct->add_option("--a", c_a)->required();
  construct->add_option("--b", c_b)->required();
  construct->add_option("--f", c_f)->required();
  construct->add_option("--param", c_params, "Parameter binding name=value");

  // family
  auto* family = app.add_subcommand("family", "Catalog of identity families");
  family->require_subcommand(1);
  auto* f_list = family->add_subcommand("list", "List family ids");
  auto* f_show = family->add_subcommand("show", "Show a family instantiated with its defaults");
  std::string f_id;
  std::vector<std::string> f_params;
  f_show->add_option("id", f_id)->required();
  f_show->add_option("--param", f_params, "Parameter binding name=value");
  auto* f_run = family->add_subcommand("run", "Instantiate a family and verify its identity");
  std::string f_width = "1/10^20";
  long f_from = 1, f_nmax = 50'000;
  bool f_all = false, f_lenient = false;
  f_run->add_option("id", f_id);
  f_run->add_option("--param", f_params, "Parameter binding name=value");
  f_run->add_option("--width", f_width, "Enclosure width (exact rational)");
  f_run->add_option("--from", f_from, "Start the fraction at this index");
  f_run->add_option("--n-max", f_nmax, "Step limit");
  f_run->add_flag("--all", f_all, "Run every family with default parameters");
  f_run->add_flag("--no-enforce", f_lenient, "Report failed side conditions instead of refusing");

  // transform
  auto* transform = app.add_subcommand("transform", "Series and continued fraction transformations");
  transform->require_subcommand(1);
  auto* t_euler = transform->add_subcommand("euler", "Series sum c_n as a continued fraction");
  std::string t_term, t_x = "1", t_a, t_b, t_b0 = "0";
  long t_n0 = 0, t_N = 20;
  std::vector<std::string> t_params;
  t_euler->add_option("--term", t_term, "Series term c_n")->required();
  t_euler->add_option("--n0", t_n0, "Index of the first term");
  t_euler->add_option("-N", t_N, "Spot-check depth");
  t_euler->add_option("--param", t_params, "Parameter binding name=value");
  auto* t_series = transform->add_subcommand("series", "b_0 + K b_{n-1}x/(b_n - x)");
  t_series->add_option("--b", t_b, "Sequence b_n, n >= 0")->required();
  t_series->add_option("--x", t_x, "Variable x (exact rational)");
  t_series->add_option("-N", t_N, "Spot-check depth");
  t_series->add_option("--param", t_params, "Parameter binding name=value");
  auto* t_even = transform->add_subcommand("even", "Even part (contraction)");
  t_even->add_option("--a", t_a)->required();
  t_even->add_option("--b", t_b)->required();
  t_even->add_option("--b0", t_b0);
  t_even->add_option("-N", t_N, "Spot-check depth");
  t_even->add_option("--param", t_params, "Parameter binding name=value");

  // tietze
  auto* tietze = app.add_subcommand("tietze", "Irrationality certificate via Tietze's criterion");
  std::string z_a, z_b;
  long z_from = 1;
  std::vector<std::string> z_params;
  tietze->add_option("--a", z_a)->required();
  tietze->add_option("--b", z_b)->required();
  tietze->add_option("--from", z_from, "First index");
  tietze->add_option("--param", z_params, "Parameter binding name=value");

  // const
  auto* constant = app.add_subcommand("const", "Rigorous enclosure of a closed-form constant");
  std::string k_expr;
  int k_digits = 20;
  std::vector<std::string> k_params;
  constant->add_option("--expr", k_expr, "Constant expression")->required();
  constant->add_option("--digits", k_digits, "Fractional digits")->check(CLI::Range(1, 10000));
  constant->add_option("--param", k_params, "Parameter binding name=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto load_catalog = [&] {
    return catalog_dir.empty() ? Catalog::load_default() : Catalog::load(catalog_dir);
  };

  try {
    if (*eval) {
      Bindings p = bind_params(e_params);
      CFSpec cf{parse_rat(e_b0), e_from, seq(e_a, p), seq(e_b, p), {}};
      json inputs{{"a", e_a}, {"b", e_b}, {"b0", e_b0}, {"from", e_from}, {"params", params_json(e_params)}};
      if (!e_width.empty()) {
        BigRational w = parse_rat(e_width);
        if (w <= 0)
          throw UsageError("--width must be positive");
        inputs["width"] = e_width;
        BracketResult r = bracket_limit(cf, w, e_nmax);
        json result{{"enclosure", enclosure_json(r.enclosure, digits_for(w))},
                    {"width_reached", r.width_reached},
                    {"note", r.note}};
        if (r.positive_from)
          result["positive_from"] = *r.positive_from;
        out.emit("eval", inputs, result, r.enclosure.rigorous, "n_used", r.n_used, interval_text(r.enclosure));
        return r.width_reached ? 0 : 1;
      }
      if (e_N_opt->count() == 0 || e_N < 0)
        throw UsageError("eval needs -N or --width");
      BigRational v = eval_forward(cf, e_N);
      inputs["N"] = e_N;
      out.emit("eval", inputs, json{{"value", to_string(v)}, {"decimal", to_decimal(v, 30, Rounding::down)}},
               true, "n_used", e_N, to_string(v));
      return 0;
    }

    if (*limit) {
      Bindings p = bind_params(l_params);
      PincherleSolution sol{seq_free(l_G, p), seq_free(l_a, p), seq_free(l_b, p), p, {}};
      Verification v = verify_recurrence(sol);
      json inputs{{"G", l_G}, {"a", l_a}, {"b", l_b}, {"params", params_json(l_params)}};
      json result{{"verification", {{"kind", to_string(v.kind)}, {"passed", v.passed}, {"detail", v.detail}}}};
      if (!v.passed) {
        out.emit("limit", inputs, result, false, "n_used", 0, "recurrence fails: " + v.detail);
        return 1;
      }
      PincherleLimit L = pincherle_limit(sol, l_h);
      result["limit"] = to_string(L.limit);
      result["decay"] = decay_json(L.decay);
      out.emit("limit", inputs, result, false, "n_used", l_h,
               to_string(L.limit) + (L.decay.supported ? "" : "  (decay hypothesis unsupported)"));
      return 0;
    }

    if (*construct) {
      Bindings p = bind_params(c_params);
      PincherleSolution sol{seq_free(c_G, p), seq_free(c_a, p), seq_free(c_b, p), p, {}};
      Verification v = verify_recurrence(sol);
      json inputs{{"G", c_G}, {"a", c_a}, {"b", c_b}, {"f", c_f}, {"params", params_json(c_params)}};
      if (!v.passed) {
        out.emit("construct", inputs, json{{"verification", v.detail}}, false, "n_used", 0,
                 "recurrence fails: " + v.detail);
        return 1;
      }
      HypeConstruction h = hype_construct(sol, seq_free(c_f, p));
      json result{{"s", h.s.to_string()}, {"t", h.t.to_string()}, {"limit", to_string(h.limit)},
                  {"verification", to_string(v.kind)}};
      out.emit("construct", inputs, result, v.kind == Verification::Kind::symbolic, "n_used", 0,
               "s_n = " + h.s.to_string() + "\nt_n = " + h.t.to_string() + "\nlimit = " + to_string(h.limit));
      return 0;
    }

    if (*family) {
      Catalog cat = load_catalog();
      if (*f_list) {
        for (const auto& d : cat.families()) {
          json inputs = json::object();
          json result{{"id", d.id}, {"kind", to_string(d.kind)}, {"title", d.title}};
          out.emit("family list", inputs, result, true, "n_used", 0, d.id + "\t" + d.title);
        }
        return 0;
      }
      if (*f_show) {
        const FamilyDef& d = cat.find(f_id);
        InstantiateOptions opt;
        opt.enforce = false;
        FamilyInstance inst = cat.instantiate(f_id, split_params(f_params), opt);
        json result = to_json(inst);
        result["title"] = d.title;
        result["anchor"] = d.anchor;
        result["source"] = d.source.string();
        std::string text = d.id + ": " + d.title + "\n  b0 = " + to_string(inst.cf.b0) +
                           ", from n = " + std::to_string(inst.cf.n0) + "\n  a_n = " + inst.cf.a.to_string() +
                           "\n  b_n = " + inst.cf.b.to_string() + "\n  limit = " + inst.claimed_limit.to_string();
        for (const auto& c : inst.side_conditions)
          text += "\n  [" + std::string(c.passed ? "ok" : "FAILED") + "] " + c.name;
        out.emit("family show", json{{"id", f_id}, {"params", params_json(f_params)}}, result, true, "n_used", 0,
                 text);
        return 0;
      }
      BigRational w = parse_rat(f_width);
      if (w <= 0)
        throw UsageError("--width must be positive");
      InstantiateOptions opt;
      opt.enforce = !f_lenient;
      opt.from = f_from;
      std::vector<std::string> ids;
      if (f_all) {
        if (!f_params.empty() || f_from != 1)
          throw UsageError("--all runs defaults only");
        ids = cat.ids();
      } else {
        if (f_id.empty())
          throw UsageError("family run needs an id or --all");
        ids.push_back(f_id);
      }
      auto params = split_params(f_params);
      auto run_one = [&](const std::string& id) -> std::pair<json, std::string> {
        FamilyInstance inst = cat.instantiate(id, params, opt);
        IdentityReport r = verify_identity(inst, w, f_nmax);
        json result = to_json(r);
        result["instance"] = to_json(inst);
        std::string text = id + ": " + (r.agree ? "agree" : "DISAGREE") + " " + interval_text(r.cf_enclosure) +
                           " vs " + inst.claimed_limit.to_string() + (r.rigorous ? "" : " (heuristic)");
        return {result, text};
      };
      std::vector<std::future<std::pair<json, std::string>>> jobs;
      for (const auto& id : ids)
        jobs.push_back(std::async(std::launch::async, run_one, id));
      int code = 0;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        json inputs{{"id", ids[i]}, {"params", params_json(f_params)}, {"width", f_width}, {"from", f_from}};
        try {
          auto [result, text] = jobs[i].get();
          if (!result["agree"].get<bool>())
            code = 1;
          out.emit("family run", inputs, result, result["rigorous"].get<bool>(), "n_used",
                   result["n_used"].get<long>(), text);
        } catch (const Error& e) {
          if (!f_all)
            throw;
          code = 1;
          out.emit("family run", inputs, json{{"error", e.what()}}, false, "n_used", 0, ids[i] + ": " + e.what());
        }
      }
      return code;
    }

    if (*transform) {
      Bindings p = bind_params(t_params);
      if (*t_euler) {
        SeriesSpec s{seq(t_term, p), 1, t_n0, {}};
        CFSpec cf = euler_cf(s, std::max<long>(t_N, 64));
        json check = spot_check("approximant N = partial sum N", eval_forward(cf, t_N), partial_sum(s, t_N));
        json inputs{{"term", t_term}, {"n0", t_n0}, {"N", t_N}, {"params", params_json(t_params)}};
        json result{{"b0", to_string(cf.b0)}, {"a", cf.a.to_string()}, {"b", cf.b.to_string()}, {"spot_check", check}};
        out.emit("transform euler", inputs, result, true, "n_used", t_N,
                 "b0 = " + to_string(cf.b0) + "\na_n = " + cf.a.to_string() + "\nb_n = " + cf.b.to_string());
        return check["equal"].get<bool>() ? 0 : 1;
      }
      if (*t_series) {
        BigRational x = parse_rat(t_x);
        Sequence b = seq(t_b, p);
        SeriesFraction sf = series_to_cf(b, x, std::max<long>(t_N, 64));
        json check = spot_check("approximant N = 1/partial sum N", eval_forward(sf.cf, t_N),
                                reciprocal_series_sum(b, x, t_N));
        json inputs{{"b", t_b}, {"x", t_x}, {"N", t_N}, {"params", params_json(t_params)}};
        json result{{"b0", to_string(sf.cf.b0)}, {"a", sf.cf.a.to_string()}, {"b", sf.cf.b.to_string()},
                    {"zero_denominators", sf.zero_denominators}, {"spot_check", check}};
        out.emit("transform series", inputs, result, true, "n_used", t_N,
                 "b0 = " + to_string(sf.cf.b0) + "\na_n = " + sf.cf.a.to_string() + "\nb_n = " + sf.cf.b.to_string());
        return check["equal"].get<bool>() ? 0 : 1;
      }
      CFSpec cf{parse_rat(t_b0), 1, seq(t_a, p), seq(t_b, p), {}};
      CFSpec ev = even_part(cf, std::max<long>(t_N, 64));
      json check = spot_check("approximant k = input approximant 2k", eval_forward(ev, t_N), eval_forward(cf, 2 * t_N));
      json inputs{{"a", t_a}, {"b", t_b}, {"b0", t_b0}, {"N", t_N}, {"params", params_json(t_params)}};
      json result{{"b0", to_string(ev.b0)}, {"a", ev.a.to_string()}, {"b", ev.b.to_string()}, {"spot_check", check}};
      out.emit("transform even", inputs, result, true, "n_used", t_N,
               "b0 = " + to_string(ev.b0) + "\na_n = " + ev.a.to_string() + "\nb_n = " + ev.b.to_string());
      return check["equal"].get<bool>() ? 0 : 1;
    }

    if (*tietze) {
      Bindings p = bind_params(z_params);
      TietzeResult r = tietze_check(seq(z_a, p), seq(z_b, p), {}, z_from);
      json inputs{{"a", z_a}, {"b", z_b}, {"from", z_from}, {"params", params_json(z_params)}};
      std::string text;
      if (r.certificate) {
        text = "certificate: N0 = " + std::to_string(r.certificate->N0) + ", checked to " +
               std::to_string(r.certificate->checked_range_end);
        if (r.scale != 1)
          text += ", after scaling by " + to_string(r.scale);
      } else {
        text = "refused: " + r.refusal;
      }
      out.emit("tietze", inputs, to_json(r), r.certified(), "N0", r.certificate ? r.certificate->N0 : -1, text);
      return 0;
    }

    if (*constant) {
      Bindings p = bind_params(k_params);
      auto names = names_of(p);
      ConstantExpr c = ConstantExpr::parse(k_expr, &names);
      BigRational w = pow(BigRational(10), -(k_digits + 2));
      Enclosure e = constant_enclosure(c, w, p);
      json inputs{{"expr", k_expr}, {"digits", k_digits}, {"params", params_json(k_params)}};
      json result = enclosure_json(e, k_digits);
      result["rounding"] = "lo toward -inf, hi toward +inf";
      out.emit("const", inputs, result, e.rigorous, "n_used", 0,
               "[" + to_decimal(e.lo, k_digits, Rounding::down) + ", " + to_decimal(e.hi, k_digits, Rounding::up) + "]");
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
