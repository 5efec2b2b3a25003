#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chowcalc/rational.hpp"

namespace chowcalc {

// Product of parameters with positive exponents, factors sorted by name.
class Monomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;
  static Monomial of(std::string_view name, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned degree() const { return degree_; }
  unsigned exponent(std::string_view name) const;
  bool is_one() const { return factors_.empty(); }
  bool divides(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  // Requires divides(other).
  Monomial quotient_of(const Monomial& other) const;
  Monomial without(std::string_view name) const;

  std::string to_string() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

// Graded order: total degree first, then the monomial with the larger exponent on the
// alphabetically first differing name comes first. Compatible with multiplication.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using Assignment = std::map<std::string, Rational, std::less<>>;

class PolyExpr {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  PolyExpr() = default;
  PolyExpr(const Rational& c);
  template <std::integral T>
  PolyExpr(T c) : PolyExpr(Rational(c)) {}

  static PolyExpr var(std::string_view name);
  static PolyExpr term(const Rational& coeff, const Monomial& m);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // throws NonConstantCoefficient
  Rational constant_term() const;
  // Largest monomial in the order, with its coefficient. Requires nonzero.
  std::pair<Monomial, Rational> leading_term() const;

  unsigned total_degree() const;
  unsigned degree_in(std::string_view x) const;
  bool depends_on(std::string_view x) const { return degree_in(x) > 0; }
  // Coefficient of x^k, as a polynomial in the remaining parameters.
  PolyExpr coefficient_of(std::string_view x, unsigned k) const;
  std::set<std::string> params() const;

  PolyExpr operator-() const;
  PolyExpr& operator+=(const PolyExpr& o);
  PolyExpr& operator-=(const PolyExpr& o);
  PolyExpr& operator*=(const PolyExpr& o);
  PolyExpr& operator*=(const Rational& c);
  PolyExpr& operator/=(const Rational& c);
  friend PolyExpr operator+(PolyExpr a, const PolyExpr& b) { return a += b; }
  friend PolyExpr operator-(PolyExpr a, const PolyExpr& b) { return a -= b; }
  friend PolyExpr operator*(PolyExpr a, const PolyExpr& b) { return a *= b; }
  friend PolyExpr operator/(PolyExpr a, const Rational& c) { return a /= c; }
  friend bool operator==(const PolyExpr& a, const PolyExpr& b) { return a.terms_ == b.terms_; }

  PolyExpr pow(unsigned k) const;

  // "3/4*c1^2 - c1 + 2"; compact drops the blanks around binary signs.
  std::string to_string(bool compact = false) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

PolyExpr add(const PolyExpr& p, const PolyExpr& q);
PolyExpr sub(const PolyExpr& p, const PolyExpr& q);
PolyExpr neg(const PolyExpr& p);
PolyExpr mul(const PolyExpr& p, const PolyExpr& q);
PolyExpr substitute(const PolyExpr& p, std::string_view x, const PolyExpr& value);
// Unique x with p == 0; p must have degree one in x with a constant coefficient.
PolyExpr solve_linear(const PolyExpr& p, std::string_view x);
Rational eval_at(const PolyExpr& p, const Assignment& assignment);
// p(p-1)...(p-k+1)/k!
PolyExpr binom_poly(const PolyExpr& p, unsigned k);
// Exact quotient p/q; throws NotDivisible when q does not divide p.
PolyExpr divide_exact(const PolyExpr& p, const PolyExpr& q);

// p == scale * poly with poly integral, content one and positive leading coefficient.
struct PrimitiveForm {
  PolyExpr poly;
  Rational scale;
};
PrimitiveForm primitive_form(const PolyExpr& p);

// Parameter names visible in a scenario. Reserved names always exist.
class ParamContext {
 public:
  ParamContext();
  static const std::vector<std::string>& reserved();
  static bool is_valid_name(std::string_view name);
  // Returns false when the name was already present.
  bool declare(std::string_view name);
  bool contains(std::string_view name) const { return names_.count(std::string(name)) > 0; }
  const std::set<std::string>& names() const { return names_; }

 private:
  std::set<std::string> names_;
};

}  // namespace chowcalc
