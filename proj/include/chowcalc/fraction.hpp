#pragma once

#include <string>
#include <string_view>

#include "chowcalc/poly.hpp"

namespace chowcalc {

// Quotient of polynomials, kept unreduced except for constant denominators and exact
// polynomial quotients. Used for solutions whose defining coefficient is not constant.
class Fraction {
 public:
  Fraction() : den_(1) {}
  Fraction(const PolyExpr& p) : num_(p), den_(1) {}
  template <std::integral T>
  Fraction(T c) : num_(c), den_(1) {}
  Fraction(const PolyExpr& num, const PolyExpr& den);

  const PolyExpr& num() const { return num_; }
  const PolyExpr& den() const { return den_; }
  bool is_polynomial() const { return den_.is_constant(); }
  PolyExpr as_polynomial() const;  // throws NonConstantCoefficient
  bool is_zero() const { return num_.is_zero(); }
  bool depends_on(std::string_view x) const { return num_.depends_on(x) || den_.depends_on(x); }

  Fraction operator-() const { return Fraction(-num_, den_); }
  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  Fraction pow(unsigned k) const { return Fraction(num_.pow(k), den_.pow(k)); }

  std::string to_string(bool compact = false) const;

 private:
  void normalize();
  PolyExpr num_;
  PolyExpr den_;
};

// value = num/den gives den^k * p(num/den) / den^k with k = deg_x p, computed exactly.
Fraction substitute(const Fraction& p, std::string_view x, const Fraction& value);
// den^k * p(num/den) for a polynomial p, k = deg_x p: the relation p == 0 with denominators cleared.
PolyExpr substitute_fraction(const PolyExpr& p, std::string_view x, const PolyExpr& num,
                             const PolyExpr& den);
// x with p == 0 for p of degree one in x; the coefficient may involve other parameters.
Fraction solve_linear_fraction(const PolyExpr& p, std::string_view x);

}  // namespace chowcalc
