// One line per acceptance criterion: "PASS <n> <summary>" or "FAIL <n> <summary>: <detail>".
#include "pcf/catalog.hpp"
#include "pcf/constants.hpp"
#include "pcf/engine.hpp"
#include "pcf/parse.hpp"
#include "pcf/pincherle.hpp"
#include "pcf/tietze.hpp"
#include "pcf/transforms.hpp"
#include "pcf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pcf;

namespace {

BigRational Q(const char* s) { return parse_rational(s); }
Sequence seq(const std::string& s) { return Sequence(parse_sequence(s)); }

const Catalog& catalog() {
  static const Catalog c = Catalog::load(PCF_TEST_CATALOG_DIR);
  return c;
}

// Collects failures for one criterion; an empty list means pass.
struct Outcome {
  std::vector<std::string> failures;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok)
      failures.push_back(what);
  }
};

std::string show(const Enclosure& e, int digits = 25) {
  return "[" + to_decimal(e.lo, digits, Rounding::down) + ", " + to_decimal(e.hi, digits, Rounding::up) + "]";
}

// Bracketed limit with the requested width and step cap, checked to contain `value`.
void enclose_exact(Outcome& o, const std::string& label, const CFSpec& cf, const BigRational& value,
                   const BigRational& width, long n_max) {
  BracketResult r = bracket_limit(cf, width, n_max);
  bool ok = r.enclosure.rigorous && r.width_reached && r.enclosure.contains(value);
  o.require(ok, label + " " + show(r.enclosure) + " N=" + std::to_string(r.n_used) +
                    (r.enclosure.rigorous ? "" : " (not rigorous)") + (r.width_reached ? "" : " (width not reached)"));
  if (ok)
    o.note += (o.note.empty() ? "" : ", ") + label + " N=" + std::to_string(r.n_used);
}

std::mt19937_64& rng() {
  static std::mt19937_64 g(20240601);
  return g;
}

long rand_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

BigRational rand_rational(bool nonzero = false) {
  BigRational q;
  do
    q = make_rational(BigInt(rand_int(-9, 9)), BigInt(rand_int(1, 7)));
  while (nonzero && q == 0);
  return q;
}

// ------------------------------------------------------------------ criteria

Outcome c1() {
  Outcome o;
  for (int alpha = 1; alpha <= 3; ++alpha) {
    FamilyInstance inst = catalog().instantiate("ramanujan.general", {{"b", "n^" + std::to_string(alpha)}});
    enclose_exact(o, "alpha=" + std::to_string(alpha), inst.cf, 1, Q("1/10^20"), 60);
  }
  return o;
}

Outcome c2() {
  Outcome o;
  enclose_exact(o, "degree 12", catalog().instantiate("degree12").cf, 4, Q("1/10^20"), 50);
  return o;
}

Outcome c3() {
  Outcome o;
  FamilyInstance inst = catalog().instantiate("degree7");
  o.require(inst.cf.n0 == 2, "fraction does not start at n = 2");
  enclose_exact(o, "from n=2", inst.cf, Q("19/7"), Q("1/10^20"), 60);
  return o;
}

Outcome c4() {
  Outcome o;
  enclose_exact(o, "degree 6", catalog().instantiate("degree6").cf, 1, Q("1/10^20"), 50'000);
  return o;
}

Outcome c5() {
  Outcome o;
  for (const char* x : {"3", "5/2"}) {
    FamilyInstance inst = catalog().instantiate("ramanujan", {{"x", x}});
    enclose_exact(o, std::string("x=") + x, inst.cf, 1, Q("1/10^10"), 100);
  }
  return o;
}

Outcome c6() {
  Outcome o;
  bool literal_ok = true;
  for (long mi : {1L, 2L}) {
    BigRational m(mi);
    FamilyInstance inst = catalog().instantiate("pochhammer", {{"m", std::to_string(mi)}});
    auto pairs = convergents(inst.cf, 31);
    auto prod = [&](long hi) {
      BigRational p = 1;
      for (long i = 2; i <= hi; ++i)
        p *= m + i;
      return p;
    };
    for (long k = 0; k <= 15; ++k) {
      BigRational odd = (k + 1) * prod(2 * k + 1);
      o.require(pairs[2 * k].B == odd, "B_" + std::to_string(2 * k + 1) + " at m=" + std::to_string(mi));
      if (k >= 1) {
        BigRational even = (m + k + 1) * prod(2 * k);
        o.require(pairs[2 * k - 1].B == even, "B_" + std::to_string(2 * k) + " at m=" + std::to_string(mi));
        literal_ok = literal_ok && pairs[2 * k - 1].B == odd && pairs[2 * k].B == even;
      }
    }
  }
  o.note = std::string("B_{2k+1} = (k+1) prod_{i=2}^{2k+1}(m+i), B_{2k} = (m+k+1) prod_{i=2}^{2k}(m+i); ") +
           "the assignment with the subscripts exchanged " + (literal_ok ? "also holds" : "does not hold (B_1 = 1)");
  return o;
}

Outcome c7() {
  Outcome o;
  std::vector<std::string> ids;
  for (const char* p : {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"})
    ids.push_back(std::string("nine.") + p);
  for (int r = 1; r <= 5; ++r)
    ids.push_back("cubic." + std::to_string(r));
  ids.push_back("cubic.3b");
  ids.push_back("cubic.4b");
  for (const auto& id : ids) {
    const FamilyDef& def = catalog().find(id);
    PincherleSolution sol{seq(def.exprs.at("G")), seq(def.exprs.at("a")), seq(def.exprs.at("b")), {}, {}};
    Verification v = verify_recurrence(sol);
    o.require(v.kind == Verification::Kind::symbolic && v.passed, id + ": " + v.detail);
  }
  o.note = std::to_string(ids.size()) + " triples, parameters free";
  return o;
}

Outcome c8() {
  Outcome o;
  struct Case {
    const char* id;
    const char* a;
    const char* b;
    const char* c;
  };
  const Case cases[] = {
      {"nine.i", "0", "m", "k"},
      {"nine.ii", "m", "m", "1"},
      {"nine.iii", "1", "4", "4"},
      {"nine.iv", "m^2", "3*m^2-2*m", "2*m^2-2*m+1"},
      {"nine.v", "m^2", "m^2+2*m", "2*m+1"},
      {"nine.vi", "m", "3*m", "2*m+1"},
      {"nine.vii", "m", "m-2", "-1"},
      {"nine.viii", "m", "3*m+2", "2*m+3"},
      {"nine.ix", "4*m", "16*m^2+8*m+1", "16*m^3+16*m^2+5*m+1"},
  };
  Poly n = Poly::index();
  for (const auto& c : cases) {
    const FamilyDef& def = catalog().find(c.id);
    try {
      QuadraticSolution q = quadratic_solve(parse_poly(c.a), parse_poly(c.b), parse_poly(c.c));
      bool same = q.d * n + q.e == parse_poly(def.exprs.at("a")) && q.f * n + q.g == parse_poly(def.exprs.at("b"));
      Verification v = verify_recurrence(q.solution);
      o.require(same && v.kind == Verification::Kind::symbolic && v.passed, std::string(c.id) + " mismatch");
    } catch (const Error& e) {
      o.require(false, std::string(c.id) + ": " + e.what());
    }
  }
  o.note = "9 quadratic solutions";
  return o;
}

Outcome c9() {
  Outcome o;
  FamilyInstance inst = catalog().instantiate("nine.vii", {{"m", "3"}, {"f", "16*n"}});
  o.require(inst.cf.a.as_poly() == parse_poly("48*n^3 - 80*n^2 + 7*n + 2"), "numerator " + inst.cf.a.to_string());
  o.require(inst.cf.b.as_poly() == parse_poly("48*n^3 - 176*n^2 + 135*n + 19"), "denominator " + inst.cf.b.to_string());
  o.require(inst.decay && inst.decay->supported, "decay flag not supported");
  BracketResult r = bracket_limit(inst.cf, Q("1/10^10"), 50'000);
  o.require(r.enclosure.rigorous && r.width_reached && r.enclosure.contains(-1), "enclosure " + show(r.enclosure));
  o.note = "enclosure " + show(r.enclosure, 12) + ", decay supported";
  return o;
}

Outcome c10() {
  Outcome o;
  SeriesSpec cat{seq("(-1)^n/(2*n+1)^2"), 1, 0, {}};
  {
    ConvergentStream cs(euler_cf(cat, 200).normalized());
    BigRational sum = cat.term(0);
    for (long N = 1; N <= 200; ++N) {
      sum += cat.term(N);
      if (cs.advance().value() != sum) {
        o.require(false, "catalan series at N=" + std::to_string(N));
        break;
      }
    }
  }
  for (int t = 0; t < 100; ++t) {
    std::vector<BigRational> terms;
    for (int i = 0; i <= 200; ++i)
      terms.push_back(rand_rational(true));
    SeriesSpec s{Sequence::tabulated(0, terms), 1, 0, {}};
    ConvergentStream cs(euler_cf(s, 200).normalized());
    BigRational sum = terms[0];
    for (long N = 1; N <= 200; ++N) {
      sum += terms[N];
      const ConvergentPair& p = cs.advance();
      if (p.B == 0 || p.A / p.B != sum) {
        o.require(false, "random series " + std::to_string(t) + " at N=" + std::to_string(N));
        break;
      }
    }
  }
  FamilyInstance inst = catalog().instantiate("catalan");
  auto pairs = convergents(inst.cf, 600);
  BigRational x = pairs[598].value(), y = pairs[599].value();
  Enclosure cf{std::min(x, y), std::max(x, y), true};
  Enclosure k = constant_enclosure(ConstantExpr::parse("CATALAN"), Q("1/10^30"));
  o.require(cf.width() <= Q("2/10^6"), "width " + to_scientific(cf.width()));
  o.require(cf.lo <= k.lo && k.hi <= cf.hi, "CATALAN " + show(k) + " not inside " + show(cf));
  o.note = "N=600 enclosure " + show(cf, 8) + " width " + to_scientific(cf.width());
  return o;
}

Outcome c11() {
  Outcome o;
  int done = 0, skipped = 0;
  while (done < 100) {
    long N = rand_int(0, 20);
    BigRational x = rand_rational(true);
    std::vector<BigRational> b;
    for (long i = 0; i <= N; ++i)
      b.push_back(rand_rational(true));
    Sequence bs = Sequence::tabulated(0, b);
    BigRational rhs;
    try {
      rhs = reciprocal_series_sum(bs, x, N);
    } catch (const DomainError&) {
      ++skipped;
      continue;
    }
    SeriesFraction sf = series_to_cf(bs, x, N);
    if (N > 0 && convergents(sf.cf, N).back().B == 0) {
      ++skipped;
      continue;
    }
    o.require(eval_forward(sf.cf, N) == rhs, "draw " + std::to_string(done));
    ++done;
  }
  o.note = "100 draws, " + std::to_string(skipped) + " excluded";
  return o;
}

Outcome c12() {
  Outcome o;
  for (int t = 0; t < 50; ++t) {
    std::vector<BigRational> a, b;
    for (int i = 0; i < 100; ++i) {
      a.push_back(rand_rational(true));
      b.push_back(rand_rational(true));
    }
    CFSpec c{rand_rational(), 1, Sequence::tabulated(1, a), Sequence::tabulated(1, b), {}};
    CFSpec ev = even_part(c, 50);
    auto orig = convergents(c, 100);
    auto even = convergents(ev, 50);
    for (long k = 1; k <= 50; ++k) {
      const auto& p = orig[2 * k - 1];
      const auto& q = even[k - 1];
      if (p.A * q.B != q.A * p.B || (p.B == 0) != (q.B == 0)) {
        o.require(false, "fraction " + std::to_string(t) + " at k=" + std::to_string(k));
        break;
      }
    }
  }
  o.note = "50 fractions, k <= 50";
  return o;
}

Outcome c13() {
  Outcome o;
  std::vector<std::pair<std::string, std::map<std::string, std::string>>> runs;
  for (const char* m2 : {"1", "4", "9"}) {
    runs.push_back({"sinc", {{"m2", m2}}});
    runs.push_back({"cosine", {{"m2", m2}}});
  }
  for (const char* nu : {"0", "1", "2"})
    for (const char* m2 : {"1", "4"})
      runs.push_back({"bessel", {{"nu", nu}, {"m2", m2}}});
  runs.push_back({"expcos", {{"m", "1"}}});
  runs.push_back({"expcos", {{"m", "2"}}});
  runs.push_back({"bessel", {{"nu", "0"}, {"m2", "1/4"}}});
  runs.push_back({"sinc", {{"m2", "1/2"}}});
  for (const auto& [id, params] : runs) {
    std::string label = id;
    for (const auto& [k, v] : params)
      label += " " + k + "=" + v;
    IdentityReport r = verify_identity(catalog().instantiate(id, params), Q("1/10^20"));
    o.require(r.agree && r.rigorous && r.width_reached, label + " " + show(r.cf_enclosure) + " vs " + show(r.limit_enclosure));
  }
  o.note = std::to_string(runs.size()) + " instances";
  return o;
}

Outcome c14() {
  Outcome o;
  {
    FamilyInstance inst = catalog().instantiate("brouncker");
    auto pairs = convergents(inst.cf, 10'000);
    BigRational x = pairs[9998].value(), y = pairs[9999].value();
    Enclosure cf{std::min(x, y), std::max(x, y), true};
    Enclosure v = constant_enclosure(ConstantExpr::parse("4/PI"), Q("1/10^30"));
    o.require(cf.width() <= Q("1/10^3"), "brouncker width " + to_scientific(cf.width()));
    o.require(cf.lo <= v.lo && v.hi <= cf.hi, "4/PI " + show(v) + " not inside " + show(cf));
    o.note = "4/pi in " + show(cf, 6);
  }
  {
    FamilyInstance inst = catalog().instantiate("euler_e");
    auto pairs = convergents(inst.cf, 25);
    BigRational x = pairs[23].value(), y = pairs[24].value();
    Enclosure cf{std::min(x, y), std::max(x, y), true};
    Enclosure v = constant_enclosure(ConstantExpr::parse("E"), Q("1/10^30"));
    o.require(cf.width() <= Q("1/10^10"), "e width " + to_scientific(cf.width()));
    o.require(cf.lo <= v.lo && v.hi <= cf.hi, "E " + show(v) + " not inside " + show(cf));
    o.note += ", e in " + show(cf, 12);
  }
  return o;
}

Outcome c15() {
  Outcome o;
  auto certify = [&](const std::string& label, const Sequence& a, const Sequence& b, long first) {
    TietzeResult t = tietze_check(a, b, {}, first);
    o.require(t.certified(), label + ": " + t.refusal);
    if (t.certified())
      o.note += (o.note.empty() ? "" : ", ") + label + " N0=" + std::to_string(t.certificate->N0) +
                (t.scale == 1 ? "" : " scale=" + to_string(t.scale));
  };
  certify("n^2/(n^2+2n)", seq("n^2"), seq("n^2+2*n"), 1);
  {
    FamilyInstance inst = catalog().instantiate("sinc", {{"m2", "1/2"}});
    certify("sinc m2=1/2", inst.cf.a, inst.cf.b, inst.cf.n0);
    // the display itself, halved, needs the rescaling back to integers
    certify("halved display", seq("n^2/2 + n/4"), seq("n^2 + 5*n/2 + 1"), 1);
  }
  for (const char* m2 : {"1", "4", "9"})
    for (const char* id : {"sinc", "cosine"}) {
      FamilyInstance inst = catalog().instantiate(id, {{"m2", m2}});
      certify(std::string(id) + " m2=" + m2, inst.cf.a, inst.cf.b, inst.cf.n0);
    }
  for (const char* nu : {"0", "1", "2"})
    for (const char* m2 : {"1", "4"}) {
      FamilyInstance inst = catalog().instantiate("bessel", {{"nu", nu}, {"m2", m2}});
      certify(std::string("bessel nu=") + nu + " m2=" + m2, inst.cf.a, inst.cf.b, inst.cf.n0);
    }
  int refused = 0;
  for (const auto& def : catalog().families()) {
    FamilyInstance inst = catalog().instantiate(def.id);
    if (!inst.exact_limit())
      continue;
    TietzeResult t = tietze_check(inst.cf.a, inst.cf.b, {}, inst.cf.n0);
    o.require(!t.certified(), def.id + " has a rational limit but was certified");
    refused += !t.certified();
  }
  o.note += "; " + std::to_string(refused) + " rational-limit families refused";
  return o;
}

Outcome c16() {
  Outcome o;
  const int per_property = 25'000;
  long det_fail = 0, fb_fail = 0, growth_fail = 0, alt_fail = 0, fb_checked = 0;
  for (int t = 0; t < per_property; ++t) {
    long N = rand_int(1, 12);
    std::vector<BigRational> a, b;
    for (long i = 0; i < N; ++i) {
      a.push_back(rand_rational(true));
      b.push_back(rand_rational());
    }
    BigRational b0 = rand_rational();
    CFSpec c{b0, 1, Sequence::tabulated(1, a), Sequence::tabulated(1, b), {}};
    auto pairs = convergents(c, N);
    BigRational pA = b0, pB = 1, prod = 1;
    for (long n = 1; n <= N; ++n) {
      prod *= a[n - 1];
      const auto& p = pairs[n - 1];
      if (p.A * pB - pA * p.B != (n % 2 == 1 ? prod : BigRational(-prod)))
        ++det_fail;
      pA = p.A;
      pB = p.B;
    }
  }
  for (int t = 0; t < per_property; ++t) {
    long N = rand_int(1, 12);
    std::vector<BigRational> a, b;
    for (long i = 0; i < N; ++i) {
      a.push_back(rand_rational(true));
      b.push_back(rand_rational());
    }
    CFSpec c{rand_rational(), 1, Sequence::tabulated(1, a), Sequence::tabulated(1, b), {}};
    if (convergents(c, N).back().B == 0)
      continue;
    BigRational back;
    try {
      back = eval_backward(c, N);
    } catch (const DomainError&) {
      continue; // an inner tail vanishes; the backward fold is undefined there
    }
    ++fb_checked;
    fb_fail += eval_forward(c, N) != back;
  }
  for (int t = 0; t < per_property; ++t) {
    long N = rand_int(2, 20);
    std::vector<BigRational> a, b;
    for (long i = 0; i < N; ++i) {
      a.push_back(make_rational(BigInt(rand_int(1, 40)), BigInt(rand_int(1, 3))) + 1);
      b.push_back(BigRational(rand_int(1, 9)));
    }
    CFSpec c{0, 1, Sequence::tabulated(1, a), Sequence::tabulated(1, b), {}};
    GrowthReport g = growth_report(c, N);
    growth_fail += !(g.applicable && g.fibonacci_ok && g.dominance_ok);
  }
  for (int t = 0; t < per_property; ++t) {
    long N = rand_int(3, 16);
    std::vector<BigRational> a, b;
    for (long i = 0; i < N; ++i) {
      a.push_back(make_rational(BigInt(rand_int(1, 30)), BigInt(rand_int(1, 5))));
      b.push_back(make_rational(BigInt(rand_int(1, 30)), BigInt(rand_int(1, 5))));
    }
    CFSpec c{rand_rational(), 1, Sequence::tabulated(1, a), Sequence::tabulated(1, b), {}};
    auto pairs = convergents(c, N);
    BigRational last = pairs.back().value();
    for (long n = 1; n + 1 < N; ++n)
      if ((pairs[n - 1].value() - last) * (pairs[n].value() - last) > 0) {
        ++alt_fail;
        break;
      }
  }
  o.require(det_fail == 0, std::to_string(det_fail) + " determinant failures");
  o.require(fb_fail == 0, std::to_string(fb_fail) + " forward/backward mismatches");
  o.require(growth_fail == 0, std::to_string(growth_fail) + " growth bound failures");
  o.require(alt_fail == 0, std::to_string(alt_fail) + " alternation failures");
  o.note = std::to_string(4 * per_property) + " cases (" + std::to_string(fb_checked) + " forward/backward comparisons)";
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"K (n^a+1)/n^a = 1 for a = 1, 2, 3", c1},
      {"degree-12 fraction equals 4", c2},
      {"degree-7 fraction from n = 2 equals 19/7", c3},
      {"degree-6 fraction equals 1", c4},
      {"K (x+n)/(x+n-1) = 1 for x = 3, 5/2", c5},
      {"pochhammer denominators in closed form", c6},
      {"polynomial solutions verify symbolically", c7},
      {"quadratic solutions reproduced", c8},
      {"negative-limit example with f = 16n", c9},
      {"Euler transformation and the Catalan fraction", c10},
      {"finite series-fraction identity", c11},
      {"even part approximants", c12},
      {"series-family identities at width 1e-20", c13},
      {"Brouncker and e fractions", c14},
      {"Tietze certificates and refusals", c15},
      {"engine properties", c16},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [title, run] = criteria[i];
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << (o.failures.empty() ? "PASS " : "FAIL ") << (i + 1) << " " << title;
    if (!o.failures.empty()) {
      ++failed;
      line << ": " << o.failures.front();
      if (o.failures.size() > 1)
        line << " (+" << o.failures.size() - 1 << " more)";
    } else if (!o.note.empty()) {
      line << " (" << o.note << ")";
    }
    line.precision(2);
    line << std::fixed << " [" << secs << "s]";
    std::cout << line.str() << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
