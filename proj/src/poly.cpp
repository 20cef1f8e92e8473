#include "pcf/poly.hpp"

#include "pcf/error.hpp"

#include <algorithm>

namespace pcf {

bool variable_less(const std::string& lhs, const std::string& rhs) {
  if (lhs == rhs)
    return false;
  if (lhs == kIndexVar)
    return true;
  if (rhs == kIndexVar)
    return false;
  return lhs < rhs;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(const std::string& name, unsigned exponent) {
  Monomial m;
  if (exponent > 0)
    m.factors_.emplace_back(name, exponent);
  return m;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [var, e] : factors_)
    d += e;
  return d;
}

unsigned Monomial::degree_in(const std::string& var) const {
  for (const auto& [v, e] : factors_)
    if (v == var)
      return e;
  return 0;
}

Monomial Monomial::without(const std::string& var) const {
  Monomial m;
  for (const auto& f : factors_)
    if (f.first != var)
      m.factors_.push_back(f);
  return m;
}

bool Monomial::divisible_by(const Monomial& divisor) const {
  for (const auto& [v, e] : divisor.factors_)
    if (degree_in(v) < e)
      return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial m;
  for (const auto& [v, e] : factors_) {
    unsigned r = e - divisor.degree_in(v);
    if (r > 0)
      m.factors_.emplace_back(v, r);
  }
  return m;
}

Monomial operator*(const Monomial& lhs, const Monomial& rhs) {
  Monomial m;
  auto i = lhs.factors_.begin();
  auto j = rhs.factors_.begin();
  while (i != lhs.factors_.end() || j != rhs.factors_.end()) {
    if (j == rhs.factors_.end() || (i != lhs.factors_.end() && variable_less(i->first, j->first))) {
      m.factors_.push_back(*i++);
    } else if (i == lhs.factors_.end() || variable_less(j->first, i->first)) {
      m.factors_.push_back(*j++);
    } else {
      m.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return m;
}

bool GradedLex::operator()(const Monomial& lhs, const Monomial& rhs) const {
  unsigned dl = lhs.total_degree(), dr = rhs.total_degree();
  if (dl != dr)
    return dl < dr;
  const auto& a = lhs.factors();
  const auto& b = rhs.factors();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first != b[j].first)
      // the side holding the earlier variable has the larger exponent there
      return variable_less(b[j].first, a[i].first);
    if (a[i].second != b[j].second)
      return a[i].second < b[j].second;
    ++i;
    ++j;
  }
  return i == a.size() && j < b.size();
}

// -------------------------------------------------------------------- Poly

Poly::Poly(const BigRational& constant) {
  if (constant != 0)
    terms_.emplace(Monomial(), constant);
}

Poly Poly::variable(const std::string& name) {
  Poly p;
  p.terms_.emplace(Monomial::variable(name), BigRational(1));
  return p;
}

void Poly::add_term(const Monomial& m, const BigRational& c) {
  if (c == 0)
    return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<BigRational> Poly::constant_value() const {
  if (terms_.empty())
    return BigRational(0);
  if (is_constant())
    return terms_.begin()->second;
  return std::nullopt;
}

int Poly::degree() const {
  if (terms_.empty())
    return -1;
  unsigned d = 0;
  for (const auto& [m, c] : terms_)
    d = std::max(d, m.degree_in(kIndexVar));
  return static_cast<int>(d);
}

unsigned Poly::total_degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.total_degree();
}

std::vector<Poly> Poly::coefficients_in_index() const {
  std::vector<Poly> out(static_cast<std::size_t>(std::max(degree(), 0) + 1));
  for (const auto& [m, c] : terms_)
    out[m.degree_in(kIndexVar)].add_term(m.without(kIndexVar), c);
  return out;
}

Poly Poly::leading_coefficient() const {
  if (terms_.empty())
    return Poly();
  return coefficients_in_index().back();
}

std::set<std::string> Poly::variables() const {
  std::set<std::string> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors())
      vars.insert(v);
  return vars;
}

std::set<std::string> Poly::parameters() const {
  auto vars = variables();
  vars.erase(kIndexVar);
  return vars;
}

bool Poly::depends_on_index() const { return degree() > 0; }

Poly Poly::shift(long delta) const {
  if (delta == 0)
    return *this;
  return compose_index(1, delta);
}

Poly Poly::compose_index(long scale, long offset) const {
  Poly image = Poly(BigRational(scale)) * Poly::index() + Poly(BigRational(offset));
  return substitute(kIndexVar, image);
}

Poly Poly::substitute(const std::string& var, const Poly& value) const {
  // Group by power of `var`, then evaluate with Horner in `value`.
  std::map<unsigned, Poly> by_power;
  for (const auto& [m, c] : terms_)
    by_power[m.degree_in(var)].add_term(m.without(var), c);
  if (by_power.empty())
    return Poly();
  Poly result;
  unsigned top = by_power.rbegin()->first;
  for (unsigned k = top + 1; k-- > 0;) {
    result = result * value;
    if (auto it = by_power.find(k); it != by_power.end())
      result += it->second;
  }
  return result;
}

Poly Poly::bind(const Bindings& params) const {
  Poly result;
  for (const auto& [m, c] : terms_) {
    BigRational coeff = c;
    Monomial rest;
    for (const auto& [v, e] : m.factors()) {
      auto it = params.find(v);
      if (it != params.end() && v != kIndexVar)
        coeff *= pcf::pow(it->second, static_cast<long>(e));
      else
        rest = rest * Monomial::variable(v, e);
    }
    result.add_term(rest, coeff);
  }
  return result;
}

BigRational Poly::eval(const BigRational& n, const Bindings& params) const {
  BigRational total = 0;
  for (const auto& [m, c] : terms_) {
    BigRational term = c;
    for (const auto& [v, e] : m.factors()) {
      if (v == kIndexVar) {
        term *= pcf::pow(n, static_cast<long>(e));
      } else {
        auto it = params.find(v);
        if (it == params.end())
          throw DomainError("unbound parameter '" + v + "'");
        term *= pcf::pow(it->second, static_cast<long>(e));
      }
    }
    total += term;
  }
  return total;
}

const BigRational& Poly::greatest_coefficient() const {
  if (terms_.empty())
    throw DomainError("zero polynomial has no leading term");
  return terms_.rbegin()->second;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero())
    throw DomainError("polynomial division by zero");
  const auto& [lead_m, lead_c] = *divisor.terms_.rbegin();
  Poly remainder = *this;
  Poly quotient;
  while (!remainder.is_zero()) {
    const auto& [m, c] = *remainder.terms_.rbegin();
    if (!m.divisible_by(lead_m))
      return std::nullopt;
    Poly step;
    step.add_term(m.quotient(lead_m), c / lead_c);
    quotient += step;
    remainder -= step * divisor;
  }
  return quotient;
}

Poly& Poly::operator+=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_)
    add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_)
    add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  Poly out;
  for (const auto& [ma, ca] : lhs.terms_)
    for (const auto& [mb, cb] : rhs.terms_)
      out.add_term(ma * mb, ca * cb);
  return out;
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly operator-(const Poly& p) {
  Poly out;
  for (const auto& [m, c] : p.terms_)
    out.terms_.emplace(m, -c);
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(1L);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U)
      result *= base;
    exponent >>= 1U;
    if (exponent > 0)
      base *= base;
  }
  return result;
}

std::string Poly::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    BigRational mag = pcf::abs(c);
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string vars;
    for (const auto& [v, e] : m.factors()) {
      if (!vars.empty())
        vars += "*";
      vars += v;
      if (e > 1)
        vars += "^" + std::to_string(e);
    }
    if (vars.empty())
      out += pcf::to_string(mag);
    else if (mag == 1)
      out += vars;
    else
      out += pcf::to_string(mag) + "*" + vars;
  }
  return out;
}

// ---------------------------------------------------------------- IndexPoly

IndexPoly::IndexPoly(const Poly& p) {
  if (!p.parameters().empty())
    throw DomainError("polynomial still depends on parameters: " + p.to_string());
  for (const Poly& c : p.coefficients_in_index())
    coeffs_.push_back(c.constant_value().value_or(0));
  if (p.is_zero())
    coeffs_.clear();
}

BigRational IndexPoly::operator()(const BigRational& n) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= n;
    acc += *it;
  }
  return acc;
}

} // namespace pcf
