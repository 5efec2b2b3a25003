#include "chowcalc/poly.hpp"

#include <algorithm>
#include <cctype>

#include "chowcalc/error.hpp"

namespace chowcalc {

Monomial Monomial::of(std::string_view name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(std::string(name), exponent);
    m.degree_ = exponent;
  }
  return m;
}

unsigned Monomial::exponent(std::string_view name) const {
  for (const auto& [n, e] : factors_)
    if (n == name) return e;
  return 0;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [n, e] : factors_)
    if (other.exponent(n) < e) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  auto a = factors_.begin(), b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a, ++b;
    }
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r;
  for (const auto& [n, e] : other.factors_) {
    unsigned mine = exponent(n);
    if (e > mine) r.factors_.emplace_back(n, e - mine);
  }
  r.degree_ = other.degree_ - degree_;
  return r;
}

Monomial Monomial::without(std::string_view name) const {
  Monomial r;
  for (const auto& f : factors_)
    if (f.first != name) {
      r.factors_.push_back(f);
      r.degree_ += f.second;
    }
  return r;
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [n, e] : factors_) {
    if (!s.empty()) s += '*';
    s += n;
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
  }
  return false;  // equal degree and equal prefix means equal monomials
}

PolyExpr::PolyExpr(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial(), c);
}

PolyExpr PolyExpr::var(std::string_view name) {
  if (!ParamContext::is_valid_name(name))
    throw Error(Errc::InvalidArgument, "bad parameter name '" + std::string(name) + "'");
  return term(1, Monomial::of(name));
}

PolyExpr PolyExpr::term(const Rational& coeff, const Monomial& m) {
  PolyExpr p;
  p.add_term(m, coeff);
  return p;
}

void PolyExpr::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool PolyExpr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational PolyExpr::constant_value() const {
  if (!is_constant())
    throw Error(Errc::NonConstantCoefficient, "'" + to_string() + "' is not a constant");
  return constant_term();
}

Rational PolyExpr::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational() : it->second;
}

std::pair<Monomial, Rational> PolyExpr::leading_term() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "zero polynomial has no leading term");
  return *terms_.rbegin();
}

unsigned PolyExpr::total_degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

unsigned PolyExpr::degree_in(std::string_view x) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(x));
  return d;
}

PolyExpr PolyExpr::coefficient_of(std::string_view x, unsigned k) const {
  PolyExpr r;
  for (const auto& [m, c] : terms_)
    if (m.exponent(x) == k) r.add_term(m.without(x), c);
  return r;
}

std::set<std::string> PolyExpr::params() const {
  std::set<std::string> s;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) s.insert(f.first);
  return s;
}

PolyExpr PolyExpr::operator-() const {
  PolyExpr r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

PolyExpr& PolyExpr::operator+=(const PolyExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolyExpr& PolyExpr::operator-=(const PolyExpr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolyExpr& PolyExpr::operator*=(const PolyExpr& o) {
  PolyExpr r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  *this = std::move(r);
  return *this;
}

PolyExpr& PolyExpr::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

PolyExpr& PolyExpr::operator/=(const Rational& c) {
  if (c.is_zero()) throw Error(Errc::DivisionByZero, "polynomial divided by zero");
  return *this *= c.inverse();
}

PolyExpr PolyExpr::pow(unsigned k) const {
  PolyExpr result(1), base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::string PolyExpr::to_string(bool compact) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<const Monomial*, const Rational*>> order;
  for (const auto& [m, c] : terms_)
    if (!m.is_one()) order.emplace_back(&m, &c);
  auto k = terms_.find(Monomial());
  if (k != terms_.end()) order.emplace_back(&k->first, &k->second);

  std::string s;
  bool first = true;
  for (auto [m, c] : order) {
    bool negative = c->sign() < 0;
    if (first) {
      if (negative) s += '-';
    } else if (compact) {
      s += negative ? "-" : "+";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    Rational a = c->abs();
    if (m->is_one()) {
      s += a.to_string();
    } else if (a.is_one()) {
      s += m->to_string();
    } else {
      s += a.to_string() + "*" + m->to_string();
    }
  }
  return s;
}

PolyExpr add(const PolyExpr& p, const PolyExpr& q) { return p + q; }
PolyExpr sub(const PolyExpr& p, const PolyExpr& q) { return p - q; }
PolyExpr neg(const PolyExpr& p) { return -p; }
PolyExpr mul(const PolyExpr& p, const PolyExpr& q) { return p * q; }

PolyExpr substitute(const PolyExpr& p, std::string_view x, const PolyExpr& value) {
  unsigned top = p.degree_in(x);
  if (top == 0) return p;
  std::vector<PolyExpr> powers{PolyExpr(1)};
  for (unsigned i = 1; i <= top; ++i) powers.push_back(powers.back() * value);
  PolyExpr r;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m.exponent(x);
    r += PolyExpr::term(c, m.without(x)) * powers[e];
  }
  return r;
}

PolyExpr solve_linear(const PolyExpr& p, std::string_view x) {
  if (p.degree_in(x) != 1)
    throw Error(Errc::NotLinear, "'" + p.to_string() + "' is not of degree one in " + std::string(x));
  PolyExpr lead = p.coefficient_of(x, 1);
  if (!lead.is_constant())
    throw Error(Errc::NonConstantCoefficient,
                "coefficient of " + std::string(x) + " is '" + lead.to_string() + "'");
  return -p.coefficient_of(x, 0) / lead.constant_value();
}

Rational eval_at(const PolyExpr& p, const Assignment& assignment) {
  Rational total;
  for (const auto& [m, c] : p.terms()) {
    Rational v = c;
    for (const auto& [name, e] : m.factors()) {
      auto it = assignment.find(name);
      if (it == assignment.end())
        throw Error(Errc::MissingAssignment, "no value for parameter " + name);
      mpq_class pw;
      mpz_pow_ui(pw.get_num_mpz_t(), it->second.raw().get_num_mpz_t(), e);
      mpz_pow_ui(pw.get_den_mpz_t(), it->second.raw().get_den_mpz_t(), e);
      v *= Rational(pw.get_num(), pw.get_den());
    }
    total += v;
  }
  return total;
}

PolyExpr binom_poly(const PolyExpr& p, unsigned k) {
  PolyExpr r(1);
  Integer fact = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= p - PolyExpr(Rational(static_cast<long>(i)));
    fact *= i + 1;
  }
  return r / Rational(fact);
}

PolyExpr divide_exact(const PolyExpr& p, const PolyExpr& q) {
  if (q.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero polynomial");
  auto [lm, lc] = q.leading_term();
  PolyExpr rest = p, quotient;
  while (!rest.is_zero()) {
    auto [m, c] = rest.leading_term();
    if (!lm.divides(m))
      throw Error(Errc::NotDivisible, "'" + q.to_string() + "' does not divide '" + p.to_string() + "'");
    PolyExpr t = PolyExpr::term(c / lc, lm.quotient_of(m));
    quotient += t;
    rest -= t * q;
  }
  return quotient;
}

PrimitiveForm primitive_form(const PolyExpr& p) {
  if (p.is_zero()) return {PolyExpr(), Rational(1)};
  Integer den = 1, content = 0;
  for (const auto& [m, c] : p.terms()) den = lcm(den, c.denominator());
  for (const auto& [m, c] : p.terms()) content = gcd(content, (c * Rational(den)).numerator());
  Rational scale(content, den);
  if (p.leading_term().second.sign() < 0) scale = -scale;
  return {p / scale, scale};
}

ParamContext::ParamContext() : names_(reserved().begin(), reserved().end()) {}

const std::vector<std::string>& ParamContext::reserved() {
  static const std::vector<std::string> names{
      "n",  "r",   "d",   "g",   "e",   "a",    "alpha", "c1",   "c2", "c2B",
      "m1", "m2",  "m12", "m1m2", "k2", "kc1",  "km1",   "km2",  "c12", "c1m1", "c1m2"};
  return names;
}

bool ParamContext::is_valid_name(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

bool ParamContext::declare(std::string_view name) {
  if (!is_valid_name(name))
    throw Error(Errc::InvalidArgument, "bad parameter name '" + std::string(name) + "'");
  return names_.insert(std::string(name)).second;
}

}  // namespace chowcalc
