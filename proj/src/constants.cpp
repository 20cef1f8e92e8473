#include "pcf/constants.hpp"

#include "pcf/error.hpp"

#include <algorithm>
#include <cctype>

namespace pcf {

// ---------------------------------------------------------------- series

Enclosure sum_series(const SeriesKernel& s, long terms) {
  if (terms < 0)
    throw DomainError("negative truncation order");
  BigRational partial = 0;
  BigRational u = s.first;
  for (long k = 0; k < terms; ++k) {
    partial += u;
    u = s.next(k, u);
  }
  BigRational rho = s.ratio_bound(terms);
  if (s.alternating && rho <= 1) {
    BigRational other = partial + u;
    return partial <= other ? Enclosure{partial, other, true} : Enclosure{other, partial, true};
  }
  if (rho < 1) {
    BigRational r = abs(u) / (1 - rho);
    return Enclosure{partial - r, partial + r, true};
  }
  throw DomainError("no tail bound at this truncation order", terms);
}

Enclosure sum_series_to(const SeriesKernel& s, const BigRational& width, long max_terms) {
  if (width <= 0)
    throw DomainError("enclosure width must be positive");
  BigRational partial = 0;
  BigRational u = s.first;
  for (long k = 0; k <= max_terms; ++k) {
    BigRational rho = s.ratio_bound(k);
    if (s.alternating && rho <= 1 && abs(u) <= width) {
      BigRational other = partial + u;
      return partial <= other ? Enclosure{partial, other, true} : Enclosure{other, partial, true};
    }
    if (rho < 1) {
      BigRational r = abs(u) / (1 - rho);
      if (2 * r <= width)
        return Enclosure{partial - r, partial + r, true};
    }
    partial += u;
    u = s.next(k, u);
  }
  throw DomainError("series did not reach the requested width", max_terms);
}

SeriesKernel kernel_S(const BigRational& t) {
  SeriesKernel s;
  s.first = 1;
  s.next = [t](long k, const BigRational& u) {
    return BigRational(-u * t / ((2 * k + 2) * (2 * k + 3)));
  };
  s.ratio_bound = [t](long k) { return BigRational(abs(t) / ((2 * k + 2) * (2 * k + 3))); };
  s.alternating = t > 0;
  return s;
}

SeriesKernel kernel_C(const BigRational& t) {
  SeriesKernel s;
  s.first = 1;
  s.next = [t](long k, const BigRational& u) {
    return BigRational(-u * t / ((2 * k + 1) * (2 * k + 2)));
  };
  s.ratio_bound = [t](long k) { return BigRational(abs(t) / ((2 * k + 1) * (2 * k + 2))); };
  s.alternating = t > 0;
  return s;
}

SeriesKernel kernel_JT(long nu, const BigRational& t) {
  if (nu < 0)
    throw DomainError("JT needs a nonnegative order");
  SeriesKernel s;
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(nu));
  s.first = BigRational(1) / BigRational(f);
  s.next = [t, nu](long k, const BigRational& u) {
    return BigRational(-u * t / ((k + 1) * (k + 1 + nu)));
  };
  s.ratio_bound = [t, nu](long k) { return BigRational(abs(t) / ((k + 1) * (k + 1 + nu))); };
  s.alternating = t > 0;
  return s;
}

SeriesKernel kernel_EXP(const BigRational& q) {
  SeriesKernel s;
  s.first = 1;
  s.next = [q](long k, const BigRational& u) { return BigRational(u * q / (k + 1)); };
  s.ratio_bound = [q](long k) { return BigRational(abs(q) / (k + 1)); };
  s.alternating = q < 0;
  return s;
}

SeriesKernel kernel_ATAN_small(const BigRational& q) {
  if (abs(q) > BigRational(1, 2))
    throw DomainError("arctangent series needs |q| <= 1/2");
  SeriesKernel s;
  s.first = q;
  BigRational q2 = q * q;
  s.next = [q2](long k, const BigRational& u) {
    return BigRational(-u * q2 * (2 * k + 1) / (2 * k + 3));
  };
  s.ratio_bound = [q2](long) { return q2; };
  s.alternating = q != 0;
  return s;
}

namespace {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// 256^n (580n^2 - 184n + 15) / (64 n^3 (2n-1) C(6n,3n) C(6n,4n) C(4n,2n))
BigRational catalan_term(long n) {
  auto un = static_cast<unsigned long>(n);
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 256, un);
  BigInt num = p * (580 * BigInt(n) * n - 184 * n + 15);
  BigInt den = 64 * BigInt(n) * n * n * (2 * n - 1) * binomial(6 * un, 3 * un) *
               binomial(6 * un, 4 * un) * binomial(4 * un, 2 * un);
  return make_rational(num, den);
}

} // namespace

SeriesKernel kernel_CATALAN() {
  SeriesKernel s;
  s.first = catalan_term(1);
  s.next = [](long k, const BigRational&) { return catalan_term(k + 2); };
  s.ratio_bound = [](long) { return BigRational(1, 10); };
  return s;
}

SeriesKernel kernel_CATALAN_defining() {
  SeriesKernel s;
  s.first = 1;
  s.next = [](long k, const BigRational&) {
    BigRational v = BigRational(1) / ((2 * k + 3) * (2 * k + 3));
    return (k + 1) % 2 == 0 ? v : BigRational(-v);
  };
  s.ratio_bound = [](long) { return BigRational(1); };
  s.alternating = true;
  return s;
}

// ---------------------------------------------------------------- expressions

struct ConstantExpr::Node {
  enum class Op { number, param, neg, add, sub, mul, div, pow, fact, S, C, JT, EXP, ATAN, CATALAN, PI, E };
  Op op = Op::number;
  BigRational value;
  std::string name;
  long exponent = 0;
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using Node = ConstantExpr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Op = Node::Op;

NodePtr make(Op op, std::vector<NodePtr> kids = {}) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->kids = std::move(kids);
  return n;
}

class Parser {
public:
  Parser(std::string_view text, const std::set<std::string>* known) : text_(text), known_(known) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Op::add, {lhs, term()});
      else if (accept('-'))
        lhs = make(Op::sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Op::mul, {lhs, unary()});
      else if (accept('/'))
        lhs = make(Op::div, {lhs, unary()});
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-'))
      return make(Op::neg, {unary()});
    if (accept('+'))
      return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (!accept('^'))
      return base;
    bool negative = accept('-');
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("exponent must be an integer literal");
    BigInt e = integer();
    if (!e.fits_slong_p() || e > 4096)
      fail("exponent too large");
    auto n = std::make_shared<Node>();
    n->op = Op::pow;
    n->exponent = negative ? -e.get_si() : e.get_si();
    n->kids = {base};
    return n;
  }

  BigInt integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<NodePtr> arguments(std::size_t count, const std::string& fn) {
    expect('(');
    std::vector<NodePtr> args;
    for (std::size_t i = 0; i < count; ++i) {
      if (i > 0)
        expect(',');
      args.push_back(expr());
    }
    if (!accept(')'))
      fail(fn + " takes " + std::to_string(count) + " argument" + (count == 1 ? "" : "s"));
    return args;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of expression");
    char c = text_[pos_];
    std::size_t at = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = std::make_shared<Node>();
      n->op = Op::number;
      n->value = BigRational(integer());
      return n;
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (!std::isalpha(static_cast<unsigned char>(c)))
      fail("unexpected '" + std::string(1, c) + "'");
    std::string id = identifier();
    static const std::map<std::string, std::pair<Op, std::size_t>> functions = {
        {"S", {Op::S, 1}},     {"C", {Op::C, 1}},       {"JT", {Op::JT, 2}},
        {"EXP", {Op::EXP, 1}}, {"ATAN", {Op::ATAN, 1}}, {"fact", {Op::fact, 1}},
    };
    if (auto it = functions.find(id); it != functions.end())
      return make(it->second.first, arguments(it->second.second, id));
    if (id == "CATALAN")
      return make(Op::CATALAN);
    if (id == "PI")
      return make(Op::PI);
    if (id == "E")
      return make(Op::E);
    bool lower = std::all_of(id.begin(), id.end(), [](char ch) {
      return std::islower(static_cast<unsigned char>(ch)) || std::isdigit(static_cast<unsigned char>(ch)) ||
             ch == '_';
    });
    if (!lower || !std::islower(static_cast<unsigned char>(id[0])))
      throw ParseError("unknown name '" + id + "'", at);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(')
      throw ParseError("unknown function '" + id + "'", at);
    if (known_ && !known_->contains(id))
      throw ParseError("unknown variable '" + id + "'", at);
    auto n = std::make_shared<Node>();
    n->op = Op::param;
    n->name = id;
    return n;
  }

  std::string_view text_;
  const std::set<std::string>* known_;
  std::size_t pos_ = 0;
};

bool is_kernel(Op op) {
  return op == Op::S || op == Op::C || op == Op::JT || op == Op::EXP || op == Op::ATAN ||
         op == Op::CATALAN || op == Op::PI || op == Op::E;
}

std::optional<BigRational> exact_value(const Node& n, const Bindings& params) {
  if (is_kernel(n.op))
    return std::nullopt;
  std::vector<BigRational> v;
  for (const auto& k : n.kids) {
    auto x = exact_value(*k, params);
    if (!x)
      return std::nullopt;
    v.push_back(*x);
  }
  switch (n.op) {
  case Op::number:
    return n.value;
  case Op::param: {
    auto it = params.find(n.name);
    if (it == params.end())
      throw Error("unbound parameter '" + n.name + "'");
    return it->second;
  }
  case Op::neg:
    return BigRational(-v[0]);
  case Op::add:
    return BigRational(v[0] + v[1]);
  case Op::sub:
    return BigRational(v[0] - v[1]);
  case Op::mul:
    return BigRational(v[0] * v[1]);
  case Op::div:
    if (v[1] == 0)
      throw DomainError("division by zero in constant expression");
    return BigRational(v[0] / v[1]);
  case Op::pow:
    return pcf::pow(v[0], n.exponent);
  case Op::fact: {
    if (!is_integer(v[0]) || v[0] < 0 || v[0] > 100000)
      throw DomainError("fact needs a nonnegative integer argument");
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), v[0].get_num().get_ui());
    return BigRational(f);
  }
  default:
    return std::nullopt;
  }
}

BigRational kernel_argument(const NodePtr& n, const Bindings& params, const char* fn) {
  auto v = exact_value(*n, params);
  if (!v)
    throw DomainError(std::string(fn) + " needs an exact rational argument");
  return *v;
}

// Interval evaluation with kernels summed to `tol` and outward rounding to
// `bits` binary places after every operation.
class IntervalEval {
public:
  IntervalEval(const Bindings& params, BigRational tol, unsigned long bits)
      : params_(params), tol_(std::move(tol)), bits_(bits) {}

  Enclosure eval(const Node& n) {
    if (auto v = exact_value(n, params_))
      return Enclosure{*v, *v, true};
    switch (n.op) {
    case Op::neg: {
      Enclosure x = eval(*n.kids[0]);
      return Enclosure{-x.hi, -x.lo, true};
    }
    case Op::add: {
      Enclosure x = eval(*n.kids[0]), y = eval(*n.kids[1]);
      return round({x.lo + y.lo, x.hi + y.hi, true});
    }
    case Op::sub: {
      Enclosure x = eval(*n.kids[0]), y = eval(*n.kids[1]);
      return round({x.lo - y.hi, x.hi - y.lo, true});
    }
    case Op::mul:
      return mul(eval(*n.kids[0]), eval(*n.kids[1]));
    case Op::div:
      return div(eval(*n.kids[0]), eval(*n.kids[1]));
    case Op::pow:
      return pow(eval(*n.kids[0]), n.exponent);
    case Op::S:
      return round(sum_series_to(kernel_S(kernel_argument(n.kids[0], params_, "S")), tol_));
    case Op::C:
      return round(sum_series_to(kernel_C(kernel_argument(n.kids[0], params_, "C")), tol_));
    case Op::JT: {
      BigRational nu = kernel_argument(n.kids[0], params_, "JT");
      if (!is_integer(nu) || nu < 0 || !nu.get_num().fits_slong_p())
        throw DomainError("JT needs a nonnegative integer order");
      return round(sum_series_to(kernel_JT(nu.get_num().get_si(), kernel_argument(n.kids[1], params_, "JT")), tol_));
    }
    case Op::EXP:
      return round(sum_series_to(kernel_EXP(kernel_argument(n.kids[0], params_, "EXP")), tol_));
    case Op::ATAN:
      return atan(kernel_argument(n.kids[0], params_, "ATAN"), tol_);
    case Op::CATALAN:
      return round(sum_series_to(kernel_CATALAN(), tol_));
    case Op::PI:
      return pi(tol_);
    case Op::E:
      return round(sum_series_to(kernel_EXP(1), tol_));
    default:
      throw DomainError("malformed constant expression");
    }
  }

private:
  Enclosure round(const Enclosure& x) const {
    return Enclosure{round_dyadic(x.lo, bits_, Rounding::down), round_dyadic(x.hi, bits_, Rounding::up), true};
  }

  Enclosure mul(const Enclosure& x, const Enclosure& y) const {
    BigRational p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return round({*std::min_element(p, p + 4), *std::max_element(p, p + 4), true});
  }

  Enclosure div(const Enclosure& x, const Enclosure& y) const {
    if (y.lo <= 0 && y.hi >= 0)
      throw DomainError("division by an interval containing 0");
    return mul(x, Enclosure{1 / y.hi, 1 / y.lo, true});
  }

  Enclosure pow(const Enclosure& x, long e) const {
    if (e < 0)
      return div(Enclosure{1, 1, true}, pow(x, -e));
    BigRational lo = pcf::pow(x.lo, e), hi = pcf::pow(x.hi, e);
    if (x.lo >= 0)
      return round({lo, hi, true});
    if (e % 2 == 1)
      return round({lo, hi, true});
    if (x.hi <= 0)
      return round({hi, lo, true});
    return round({0, std::max(lo, hi), true});
  }

  Enclosure atan(const BigRational& q, const BigRational& tol) const {
    if (q < 0) {
      Enclosure r = atan(-q, tol);
      return Enclosure{-r.hi, -r.lo, true};
    }
    if (q <= BigRational(1, 2))
      return round(sum_series_to(kernel_ATAN_small(q), tol));
    if (q <= 1) {
      // atan q = atan(1/2) + atan((q - 1/2) / (1 + q/2)), second argument <= 1/3
      Enclosure a = atan(BigRational(1, 2), tol / 2);
      Enclosure b = atan((q - BigRational(1, 2)) / (1 + q / 2), tol / 2);
      return round({a.lo + b.lo, a.hi + b.hi, true});
    }
    Enclosure p = pi(tol / 2);
    Enclosure b = atan(1 / q, tol / 4);
    return round({p.lo / 2 - b.hi, p.hi / 2 - b.lo, true});
  }

  Enclosure pi(const BigRational& tol) const {
    Enclosure a = round(sum_series_to(kernel_ATAN_small(BigRational(1, 5)), tol / 40));
    Enclosure b = round(sum_series_to(kernel_ATAN_small(BigRational(1, 239)), tol / 40));
    return round({16 * a.lo - 4 * b.hi, 16 * a.hi - 4 * b.lo, true});
  }

  const Bindings& params_;
  BigRational tol_;
  unsigned long bits_;
};

unsigned long bits_for(const BigRational& tol) {
  long b = static_cast<long>(mpz_sizeinbase(tol.get_den().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(tol.get_num().get_mpz_t(), 2));
  return static_cast<unsigned long>(std::max(b, 0L)) + 40;
}

std::string print(const Node& n);

std::string print_operand(const Node& n) {
  bool simple = n.op == Op::param || n.op == Op::CATALAN || n.op == Op::PI || n.op == Op::E ||
                (n.op == Op::number && n.value >= 0 && is_integer(n.value)) ||
                (n.op >= Op::fact && n.op <= Op::ATAN);
  return simple ? print(n) : "(" + print(n) + ")";
}

std::string print(const Node& n) {
  switch (n.op) {
  case Op::number:
    return to_string(n.value);
  case Op::param:
    return n.name;
  case Op::neg:
    return "-" + print_operand(*n.kids[0]);
  case Op::add:
    return print(*n.kids[0]) + " + " + print_operand(*n.kids[1]);
  case Op::sub:
    return print(*n.kids[0]) + " - " + print_operand(*n.kids[1]);
  case Op::mul:
    return print_operand(*n.kids[0]) + "*" + print_operand(*n.kids[1]);
  case Op::div:
    return print_operand(*n.kids[0]) + "/" + print_operand(*n.kids[1]);
  case Op::pow:
    return print_operand(*n.kids[0]) + "^" + std::to_string(n.exponent);
  case Op::fact:
    return "fact(" + print(*n.kids[0]) + ")";
  case Op::S:
    return "S(" + print(*n.kids[0]) + ")";
  case Op::C:
    return "C(" + print(*n.kids[0]) + ")";
  case Op::JT:
    return "JT(" + print(*n.kids[0]) + ", " + print(*n.kids[1]) + ")";
  case Op::EXP:
    return "EXP(" + print(*n.kids[0]) + ")";
  case Op::ATAN:
    return "ATAN(" + print(*n.kids[0]) + ")";
  case Op::CATALAN:
    return "CATALAN";
  case Op::PI:
    return "PI";
  case Op::E:
    return "E";
  }
  return "";
}

void collect_params(const Node& n, std::set<std::string>& out) {
  if (n.op == Op::param)
    out.insert(n.name);
  for (const auto& k : n.kids)
    collect_params(*k, out);
}

} // namespace

ConstantExpr ConstantExpr::parse(std::string_view text, const std::set<std::string>* known_params) {
  return ConstantExpr(Parser(text, known_params).parse());
}

ConstantExpr ConstantExpr::rational(const BigRational& q) {
  auto n = std::make_shared<Node>();
  n->op = Op::number;
  n->value = q;
  return ConstantExpr(n);
}

std::optional<BigRational> ConstantExpr::exact(const Bindings& params) const {
  if (!root_)
    throw Error("empty constant expression");
  return exact_value(*root_, params);
}

std::set<std::string> ConstantExpr::parameters() const {
  std::set<std::string> out;
  if (root_)
    collect_params(*root_, out);
  return out;
}

std::string ConstantExpr::to_string() const { return root_ ? print(*root_) : ""; }

Enclosure constant_enclosure(const ConstantExpr& c, const BigRational& width, const Bindings& params) {
  if (c.empty())
    throw Error("empty constant expression");
  if (width <= 0)
    throw DomainError("enclosure width must be positive");
  if (auto v = c.exact(params))
    return Enclosure{*v, *v, true};
  BigRational tol = width / 64;
  for (int attempt = 0; attempt < 12; ++attempt) {
    IntervalEval ev(params, tol, bits_for(tol));
    Enclosure r = ev.eval(*c.root());
    if (r.width() <= width)
      return r;
    tol /= BigRational(BigInt(1) << 40);
  }
  throw DomainError("could not reach the requested enclosure width");
}

} // namespace pcf
