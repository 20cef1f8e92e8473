#include "doctest.h"
#include "random.hpp"

#include "pcf/engine.hpp"
#include "pcf/error.hpp"
#include "pcf/parse.hpp"
#include "pcf/transforms.hpp"

using namespace pcf;
using pcf::testing::Rng;

namespace {

Sequence seq(const char* s) { return Sequence(parse_sequence(s)); }
BigRational Q(const char* s) { return parse_rational(s); }

} // namespace

TEST_CASE("euler transform examples") {
  SeriesSpec h{seq("1/(n+1)"), 1, 0, {}};
  CFSpec c = euler_cf(h);
  CHECK(eval_forward(c, 2) == Q("11/6"));
  CHECK(partial_sum(h, 2) == Q("11/6"));

  // sum (-1)^k/(2k+1)^2 against 1/(1 + 1^4/(8 + 3^4/(16 + ...))), one level deeper
  SeriesSpec cat{seq("(-1)^n/(2*n+1)^2"), 1, 0, {}};
  CFSpec ec = euler_cf(cat);
  CFSpec shaped{0, 1, seq("(2*n-3)^4").with_value(1, 1), seq("8*(n-1)").with_value(1, 1), {}};
  for (long N = 0; N <= 30; ++N)
    CHECK(eval_forward(ec, N) == eval_forward(shaped, N + 1));

  // Leibniz series against 4/(1 + K (2n-1)^2/2)
  SeriesSpec leib{seq("(-1)^n/(2*n+1)"), 1, 0, {}};
  CFSpec el = euler_cf(leib);
  CFSpec brouncker{1, 1, seq("(2*n-1)^2"), seq("2"), {}};
  for (long N = 1; N <= 30; ++N)
    CHECK(eval_forward(el, N) * eval_forward(brouncker, N) == 1);

  SeriesSpec bad{seq("n-2"), 1, 0, {}};
  CHECK_THROWS_AS(euler_cf(bad), DomainError);
}

TEST_CASE("series fraction examples") {
  Sequence b = Sequence::tabulated(0, {BigRational(1), BigRational(2), BigRational(3)});
  SeriesFraction sf = series_to_cf(b, 1, 2);
  CHECK(eval_forward(sf.cf, 2) == Q("3/2"));
  CHECK(reciprocal_series_sum(b, 1, 2) == Q("3/2"));

  // cosine family at m = 1
  SeriesFraction cosf = series_to_cf(seq("(2*n+1)*(2*n+2)"), 1);
  CHECK(cosf.cf.b0 == 2);
  CHECK(cosf.cf.a.as_poly() == parse_poly("4*n^2 - 2*n"));
  CHECK(cosf.cf.b.as_poly() == parse_poly("4*n^2 + 6*n + 1"));

  // exp-cos family at m = 1, scaled by c = m^3 = 1
  SeriesFraction ec = series_to_cf(seq("(3*n-2)*(3*n-1)*(3*n)").with_value(0, 1), 1);
  CHECK(ec.cf.b0 == 1);
  CHECK(ec.cf.a.at(1) == 1);
  CHECK(ec.cf.b.at(1) == 5);
  CHECK(ec.cf.a.at(2) == 6);
  CHECK(ec.cf.b.at(2) == 119);

  CHECK_THROWS_AS(series_to_cf(seq("n-3"), 1), DomainError);
  SeriesFraction z = series_to_cf(seq("n+1"), 2, 10);
  CHECK(z.zero_denominators == std::vector<long>{1});
}

TEST_CASE("sinc display from the series form") {
  Bindings m{{"m", BigRational(3)}};
  SeriesFraction sf = series_to_cf(Sequence(parse_sequence("(2*n+2)*(2*n+3)*m^2").bind(m)), 1);
  CFSpec c = sf.cf;
  c.b0 -= 1;
  CFSpec display{6 * 9 - 1, 1, Sequence(parse_sequence("m^2*(4*n^2+2*n)").bind(m)),
                 Sequence(parse_sequence("m^2*(4*n^2+10*n+6) - 1").bind(m)), {}};
  CFSpec scaled = equiv_scale(c, Sequence(1L));
  for (long N = 0; N <= 20; ++N)
    CHECK(eval_forward(scaled, N) == eval_forward(display, N));
}

TEST_CASE("even part examples") {
  CFSpec ones{0, 1, seq("1"), seq("1"), {}};
  CFSpec ev = even_part(ones, 10);
  CHECK(eval_forward(ev, 1) == Q("1/2"));
  CHECK(eval_forward(ones, 2) == Q("1/2"));

  CFSpec sq{0, 1, seq("n^2+1"), seq("n^2"), {}};
  CHECK(eval_forward(even_part(sq), 3) == eval_forward(sq, 6));

  CFSpec lin{0, 1, seq("n+1"), seq("2*n+3"), {}};
  CFSpec el = even_part(lin);
  auto a = el.a.formula() ? el.a.formula()->as_poly() : std::nullopt;
  auto b = el.b.formula() ? el.b.formula()->as_poly() : std::nullopt;
  REQUIRE(a);
  REQUIRE(b);
  // contraction of degree (1, 1) input: numerators of degree 4 over denominators of degree 3
  CHECK(a->degree() == 4);
  CHECK(b->degree() == 3);

  CFSpec lin_b_const{0, 1, seq("n+1"), seq("2"), {}};
  CFSpec ec = even_part(lin_b_const);
  CHECK(ec.a.formula()->as_poly()->degree() == 2);
  CHECK(ec.b.formula()->as_poly()->degree() == 1);

  CFSpec zero_even{0, 1, seq("1"), seq("n-2"), {}};
  CHECK_THROWS_AS(even_part(zero_even, 5), DomainError);
}

TEST_CASE("equivalence scaling examples") {
  CFSpec c{3, 1, seq("n^2+1"), seq("2*n"), {}};
  CFSpec same = equiv_scale(c, Sequence(1L));
  for (long N = 0; N <= 10; ++N)
    CHECK(eval_forward(same, N) == eval_forward(c, N));
  CHECK_THROWS_AS(equiv_scale(c, seq("n-4")), DomainError);
}

TEST_CASE("property: euler approximants equal partial sums") {
  SeriesSpec cat{seq("(-1)^n/(2*n+1)^2"), 1, 0, {}};
  CFSpec cc = euler_cf(cat, 200);
  ConvergentStream cs(cc.normalized());
  BigRational sum = cat.term(0);
  bool ok = true;
  for (long N = 1; N <= 200; ++N) {
    sum += cat.term(N);
    ok = ok && cs.advance().value() == sum;
  }
  CHECK(ok);

  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    std::vector<BigRational> terms;
    for (int i = 0; i <= 60; ++i)
      terms.push_back(rng.nonzero_rational());
    SeriesSpec s{Sequence::tabulated(0, terms), 1, 0, {}};
    CFSpec e = euler_cf(s, 60);
    ConvergentStream st(e.normalized());
    BigRational acc = terms[0];
    bool same = true;
    for (long N = 1; N <= 60; ++N) {
      acc += terms[N];
      const ConvergentPair& p = st.advance();
      same = same && p.B != 0 && p.A / p.B == acc;
    }
    CHECK(same);
  }
}

TEST_CASE("property: series fraction finite identity") {
  Rng rng(32);
  int done = 0;
  while (done < 100) {
    long N = rng.integer(0, 20);
    BigRational x = rng.nonzero_rational();
    std::vector<BigRational> b;
    for (long i = 0; i <= N; ++i)
      b.push_back(rng.nonzero_rational());
    Sequence bs = Sequence::tabulated(0, b);
    BigRational rhs;
    try {
      rhs = reciprocal_series_sum(bs, x, N);
    } catch (const DomainError&) {
      continue; // the partial sum vanishes
    }
    SeriesFraction sf = series_to_cf(bs, x, N);
    if (N > 0 && convergents(sf.cf, N).back().B == 0)
      continue;
    CHECK(eval_forward(sf.cf, N) == rhs);
    ++done;
  }
}

TEST_CASE("property: even part approximants") {
  Rng rng(33);
  for (int t = 0; t < 50; ++t) {
    std::vector<BigRational> a, b;
    for (int i = 0; i < 101; ++i) {
      a.push_back(rng.nonzero_rational());
      b.push_back(rng.nonzero_rational());
    }
    CFSpec c{rng.rational(), 1, Sequence::tabulated(1, a), Sequence::tabulated(1, b), {}};
    CFSpec ev = even_part(c, 50);
    auto orig = convergents(c, 100);
    auto even = convergents(ev, 50);
    bool ok = true;
    for (long k = 1; k <= 50; ++k) {
      const auto& o = orig[2 * k - 1];
      const auto& e = even[k - 1];
      // compare as cross products so vanishing B's do not abort
      ok = ok && o.A * e.B == e.A * o.B && (o.B == 0) == (e.B == 0);
    }
    CHECK(ok);
  }
  // polynomial input keeps the closed form
  CFSpec p{0, 1, seq("n^2+1"), seq("n^2"), {}};
  CFSpec ep = even_part(p);
  for (long k = 1; k <= 50; ++k)
    CHECK(eval_forward(ep, k) == eval_forward(p, 2 * k));
}

TEST_CASE("property: equivalence scaling keeps approximants") {
  Rng rng(34);
  for (int t = 0; t < 50; ++t) {
    std::vector<BigRational> a, b, c;
    for (int i = 0; i < 40; ++i) {
      a.push_back(rng.nonzero_rational());
      b.push_back(rng.rational());
      c.push_back(rng.nonzero_rational());
    }
    CFSpec f{rng.rational(), 1, Sequence::tabulated(1, a), Sequence::tabulated(1, b), {}};
    CFSpec g = equiv_scale(f, Sequence::tabulated(1, c), 40);
    auto x = convergents(f, 40), y = convergents(g, 40);
    bool ok = true;
    for (std::size_t i = 0; i < x.size(); ++i)
      ok = ok && x[i].A * y[i].B == y[i].A * x[i].B;
    CHECK(ok);
  }
}
