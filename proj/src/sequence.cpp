#include "pcf/sequence.hpp"

#include "pcf/error.hpp"

#include <algorithm>
#include <tuple>

namespace pcf {

namespace {

std::string index_text(long offset) {
  if (offset == 0)
    return "n";
  return offset > 0 ? "n+" + std::to_string(offset) : "n-" + std::to_string(-offset);
}

std::string base_text(const Poly& base) {
  auto c = base.constant_value();
  if (c && *c > 0 && is_integer(*c))
    return to_string(*c);
  if (!c && base.terms().size() == 1 && base.terms().begin()->second == 1 &&
      base.total_degree() == 1)
    return base.to_string();
  return "(" + base.to_string() + ")";
}

int kind_rank(SequenceAtom::Kind k) { return static_cast<int>(k); }

BigInt factorial_of(long k) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

} // namespace

SequenceExpr::SequenceExpr(const Poly& p) : num_(p) { normalize(); }

SequenceExpr SequenceExpr::sign(long offset) {
  SequenceExpr s;
  s.sign_offset_ = offset;
  s.normalize();
  return s;
}

SequenceExpr SequenceExpr::geometric(const Poly& base, long offset) {
  if (base.depends_on_index())
    throw DomainError("geometric base must not depend on n: " + base.to_string());
  if (base.is_zero())
    throw DomainError("zero base in geometric atom");
  SequenceExpr s;
  s.atoms_.push_back({SequenceAtom::Kind::geometric, base, offset, 1});
  s.normalize();
  return s;
}

SequenceExpr SequenceExpr::factorial(long offset) {
  SequenceExpr s;
  s.atoms_.push_back({SequenceAtom::Kind::factorial, Poly(), offset, 1});
  s.normalize();
  return s;
}

SequenceExpr SequenceExpr::pochhammer(const Poly& base, long offset) {
  if (base.depends_on_index())
    throw DomainError("pochhammer base must not depend on n: " + base.to_string());
  SequenceExpr s;
  s.atoms_.push_back({SequenceAtom::Kind::pochhammer, base, offset, 1});
  s.normalize();
  return s;
}

void SequenceExpr::normalize() {
  if (den_.is_zero())
    throw DomainError("sequence with zero denominator");
  if (scale_ == 0 || num_.is_zero()) {
    scale_ = 0;
    num_ = Poly(1L);
    den_ = Poly(1L);
    sign_offset_.reset();
    atoms_.clear();
    return;
  }
  BigRational c = num_.greatest_coefficient();
  if (c != 1) {
    scale_ *= c;
    num_ = num_ * Poly(BigRational(1 / c));
  }
  c = den_.greatest_coefficient();
  if (c != 1) {
    scale_ /= c;
    den_ = den_ * Poly(BigRational(1 / c));
  }

  // Constant geometric bases: 1 disappears, negative bases split off a sign.
  std::vector<SequenceAtom> kept;
  int sign_parity = sign_offset_ ? 1 : 0;
  long sign_off = sign_offset_.value_or(0);
  for (SequenceAtom a : atoms_) {
    if (a.kind == SequenceAtom::Kind::geometric) {
      if (auto v = a.base.constant_value()) {
        if (*v == 0)
          throw DomainError("zero base in geometric atom");
        if (*v == 1)
          continue;
        if (*v < 0) {
          if (a.exponent % 2 != 0) {
            // (-1)^(n+c) * (-1)^(n+d) = (-1)^(c+d)
            if (sign_parity == 1 && ((sign_off + a.offset) % 2 != 0))
              scale_ = -scale_;
            sign_off = sign_parity == 1 ? 0 : a.offset;
            sign_parity ^= 1;
          }
          if (*v == -1)
            continue;
          a.base = Poly(BigRational(-*v));
        }
      }
    }
    kept.push_back(std::move(a));
  }
  if (sign_parity == 1)
    sign_offset_ = ((sign_off % 2) + 2) % 2;
  else
    sign_offset_.reset();

  std::sort(kept.begin(), kept.end(), [](const SequenceAtom& x, const SequenceAtom& y) {
    auto bx = x.base.to_string(), by = y.base.to_string();
    return std::make_tuple(kind_rank(x.kind), bx, x.offset) < std::make_tuple(kind_rank(y.kind), by, y.offset);
  });
  atoms_.clear();
  for (auto& a : kept) {
    if (!atoms_.empty() && atoms_.back().kind == a.kind && atoms_.back().base == a.base &&
        atoms_.back().offset == a.offset) {
      atoms_.back().exponent += a.exponent;
      if (atoms_.back().exponent == 0)
        atoms_.pop_back();
    } else if (a.exponent != 0) {
      atoms_.push_back(std::move(a));
    }
  }
}

bool SequenceExpr::is_polynomial() const {
  return !sign_offset_ && atoms_.empty() && den_.is_constant();
}

std::optional<Poly> SequenceExpr::as_poly() const {
  if (!is_polynomial())
    return std::nullopt;
  if (scale_ == 0)
    return Poly();
  return num_ * Poly(scale_);
}

std::set<std::string> SequenceExpr::parameters() const {
  std::set<std::string> out = num_.parameters();
  auto add = [&](const Poly& p) {
    auto ps = p.parameters();
    out.insert(ps.begin(), ps.end());
  };
  add(den_);
  for (const auto& a : atoms_)
    add(a.base);
  return out;
}

SequenceExpr SequenceExpr::shift(long delta) const {
  SequenceExpr s = *this;
  s.num_ = num_.shift(delta);
  s.den_ = den_.shift(delta);
  if (s.sign_offset_)
    *s.sign_offset_ += delta;
  for (auto& a : s.atoms_)
    a.offset += delta;
  s.normalize();
  return s;
}

SequenceExpr SequenceExpr::bind(const Bindings& params) const {
  SequenceExpr s = *this;
  s.num_ = num_.bind(params);
  s.den_ = den_.bind(params);
  for (auto& a : s.atoms_)
    a.base = a.base.bind(params);
  s.normalize();
  return s;
}

SequenceExpr SequenceExpr::substitute(const std::string& var, const Poly& value) const {
  SequenceExpr s = *this;
  s.num_ = num_.substitute(var, value);
  s.den_ = den_.substitute(var, value);
  for (auto& a : s.atoms_) {
    a.base = a.base.substitute(var, value);
    if (a.base.depends_on_index())
      throw DomainError("substitution makes an atom base depend on n");
  }
  s.normalize();
  return s;
}

BigRational SequenceExpr::eval(long n, const Bindings& params) const {
  if (scale_ == 0)
    return 0;
  BigRational nn(n);
  BigRational value = scale_ * num_.eval(nn, params);
  BigRational d = den_.eval(nn, params);
  if (d == 0)
    throw DomainError("sequence denominator vanishes", n);
  value /= d;
  if (sign_offset_ && ((n + *sign_offset_) % 2 != 0))
    value = -value;
  for (const auto& a : atoms_) {
    long k = n + a.offset;
    BigRational factor;
    switch (a.kind) {
    case SequenceAtom::Kind::geometric: {
      BigRational b = a.base.eval(0, params);
      if (b == 0)
        throw DomainError("zero base in geometric atom", n);
      factor = pcf::pow(b, k);
      break;
    }
    case SequenceAtom::Kind::factorial:
      if (k < 0)
        throw DomainError("factorial of a negative argument", n);
      factor = BigRational(factorial_of(k));
      break;
    case SequenceAtom::Kind::pochhammer: {
      if (k < 0)
        throw DomainError("pochhammer symbol with negative length", n);
      BigRational b = a.base.eval(0, params);
      factor = 1;
      for (long i = 0; i < k; ++i)
        factor *= b + i;
      break;
    }
    }
    if (a.exponent < 0 && factor == 0)
      throw DomainError("division by a vanishing factor", n);
    value *= pcf::pow(factor, a.exponent);
  }
  return value;
}

SequenceExpr SequenceExpr::inverse() const {
  if (scale_ == 0)
    throw DomainError("inverse of the zero sequence");
  SequenceExpr s = *this;
  s.scale_ = 1 / scale_;
  std::swap(s.num_, s.den_);
  for (auto& a : s.atoms_)
    a.exponent = -a.exponent;
  s.normalize();
  return s;
}

SequenceExpr SequenceExpr::pow(unsigned exponent) const {
  SequenceExpr r(1L);
  for (unsigned i = 0; i < exponent; ++i)
    r = r * *this;
  return r;
}

SequenceExpr operator*(const SequenceExpr& lhs, const SequenceExpr& rhs) {
  SequenceExpr s;
  s.scale_ = lhs.scale_ * rhs.scale_;
  s.num_ = lhs.num_ * rhs.num_;
  s.den_ = lhs.den_ * rhs.den_;
  if (lhs.sign_offset_ && rhs.sign_offset_) {
    if ((*lhs.sign_offset_ + *rhs.sign_offset_) % 2 != 0)
      s.scale_ = -s.scale_;
  } else if (lhs.sign_offset_) {
    s.sign_offset_ = lhs.sign_offset_;
  } else {
    s.sign_offset_ = rhs.sign_offset_;
  }
  s.atoms_ = lhs.atoms_;
  s.atoms_.insert(s.atoms_.end(), rhs.atoms_.begin(), rhs.atoms_.end());
  s.normalize();
  return s;
}

std::string SequenceExpr::to_string() const {
  if (is_polynomial())
    return as_poly()->to_string();

  std::vector<std::string> factors, divisors;
  Poly lead = num_ * Poly(scale_);
  if (auto c = lead.constant_value()) {
    if (*c != 1)
      factors.push_back(pcf::to_string(*c));
  } else {
    factors.push_back("(" + lead.to_string() + ")");
  }
  if (sign_offset_)
    factors.push_back("(-1)^" + (*sign_offset_ == 0 ? std::string("n") : "(" + index_text(*sign_offset_) + ")"));
  if (!den_.is_constant())
    divisors.push_back("(" + den_.to_string() + ")");
  for (const auto& a : atoms_) {
    std::string text;
    switch (a.kind) {
    case SequenceAtom::Kind::geometric:
      text = base_text(a.base) + "^(" + index_text(a.offset) + ")";
      break;
    case SequenceAtom::Kind::factorial:
      text = "fact(" + index_text(a.offset) + ")";
      break;
    case SequenceAtom::Kind::pochhammer:
      text = "poch(" + a.base.to_string() + ", " + index_text(a.offset) + ")";
      break;
    }
    int e = a.exponent < 0 ? -a.exponent : a.exponent;
    if (e != 1)
      text += "^" + std::to_string(e);
    (a.exponent > 0 ? factors : divisors).push_back(text);
  }
  std::string out = factors.empty() ? "1" : factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i)
    out += " * " + factors[i];
  for (const auto& d : divisors)
    out += " / " + d;
  return out;
}

// ---------------------------------------------------------------- Sequence

Sequence::Sequence(SequenceExpr formula) : body_(std::move(formula)) {}

Sequence Sequence::tabulated(long first_index, std::vector<BigRational> values) {
  Sequence s;
  s.body_ = Table{first_index, std::make_shared<const std::vector<BigRational>>(std::move(values))};
  return s;
}

Sequence Sequence::derived(Rule rule, std::string label) {
  Sequence s;
  s.body_ = Derived{std::make_shared<const Rule>(std::move(rule)), std::move(label)};
  return s;
}

Sequence Sequence::with_value(long n, const BigRational& value) const {
  Sequence s = *this;
  s.overrides_[n] = value;
  return s;
}

BigRational Sequence::at(long n, const Bindings& params) const {
  if (auto it = overrides_.find(n); it != overrides_.end())
    return it->second;
  return std::visit(
      [&](const auto& body) -> BigRational {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, SequenceExpr>) {
          return body.eval(n, params);
        } else if constexpr (std::is_same_v<T, Table>) {
          long i = n - body.first;
          if (i < 0 || i >= static_cast<long>(body.values->size()))
            throw DomainError("index outside tabulated range", n);
          return (*body.values)[static_cast<std::size_t>(i)];
        } else {
          return (*body.rule)(n);
        }
      },
      body_);
}

const SequenceExpr* Sequence::formula() const { return std::get_if<SequenceExpr>(&body_); }

std::optional<long> Sequence::horizon() const {
  if (const auto* t = std::get_if<Table>(&body_))
    return t->first + static_cast<long>(t->values->size()) - 1;
  return std::nullopt;
}

std::optional<Poly> Sequence::as_poly() const {
  if (!overrides_.empty())
    return std::nullopt;
  if (const auto* f = formula())
    return f->as_poly();
  return std::nullopt;
}

Sequence Sequence::shift(long delta) const {
  if (delta == 0)
    return *this;
  Sequence s;
  s.body_ = std::visit(
      [&](const auto& body) -> decltype(body_) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, SequenceExpr>) {
          return body.shift(delta);
        } else if constexpr (std::is_same_v<T, Table>) {
          return Table{body.first - delta, body.values};
        } else {
          auto rule = body.rule;
          return Derived{std::make_shared<const Rule>([rule, delta](long n) { return (*rule)(n + delta); }),
                         body.label + " shifted by " + std::to_string(delta)};
        }
      },
      body_);
  for (const auto& [k, v] : overrides_)
    s.overrides_[k - delta] = v;
  return s;
}

Sequence Sequence::bind(const Bindings& params) const {
  Sequence s = *this;
  if (const auto* f = formula())
    s.body_ = f->bind(params);
  return s;
}

std::string Sequence::to_string() const {
  std::string out = std::visit(
      [](const auto& body) -> std::string {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, SequenceExpr>) {
          return body.to_string();
        } else if constexpr (std::is_same_v<T, Table>) {
          return "table[" + std::to_string(body.first) + ".." +
                 std::to_string(body.first + static_cast<long>(body.values->size()) - 1) + "]";
        } else {
          return body.label;
        }
      },
      body_);
  for (const auto& [k, v] : overrides_)
    out += "; at " + std::to_string(k) + ": " + pcf::to_string(v);
  return out;
}

} // namespace pcf
