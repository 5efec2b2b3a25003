#include "chowcalc/fraction.hpp"

#include "chowcalc/error.hpp"

namespace chowcalc {

Fraction::Fraction(const PolyExpr& num, const PolyExpr& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw Error(Errc::DivisionByZero, "fraction with zero denominator");
  normalize();
}

void Fraction::normalize() {
  if (num_.is_zero()) {
    den_ = PolyExpr(1);
    return;
  }
  if (den_.is_constant()) {
    num_ /= den_.constant_value();
    den_ = PolyExpr(1);
    return;
  }
  try {
    num_ = divide_exact(num_, den_);
    den_ = PolyExpr(1);
    return;
  } catch (const Error& e) {
    if (e.code() != Errc::NotDivisible) throw;
  }
  // Monic denominator keeps the printed form stable.
  Rational lead = den_.leading_term().second;
  num_ /= lead;
  den_ /= lead;
}

PolyExpr Fraction::as_polynomial() const {
  if (!is_polynomial())
    throw Error(Errc::NonConstantCoefficient, "'" + to_string() + "' is not a polynomial");
  return num_;
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.den_ == b.den_) return Fraction(a.num_ + b.num_, a.den_);
  return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  return Fraction(a.num_ * b.num_, a.den_ * b.den_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by a zero fraction");
  return Fraction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string Fraction::to_string(bool compact) const {
  if (is_polynomial()) return num_.to_string(compact);
  return "(" + num_.to_string(compact) + ")/(" + den_.to_string(compact) + ")";
}

PolyExpr substitute_fraction(const PolyExpr& p, std::string_view x, const PolyExpr& num,
                             const PolyExpr& den) {
  if (den.is_zero()) throw Error(Errc::DivisionByZero, "substitution with zero denominator");
  unsigned top = p.degree_in(x);
  if (top == 0) return p;
  std::vector<PolyExpr> np{PolyExpr(1)}, dp{PolyExpr(1)};
  for (unsigned i = 1; i <= top; ++i) {
    np.push_back(np.back() * num);
    dp.push_back(dp.back() * den);
  }
  PolyExpr r;
  for (unsigned k = 0; k <= top; ++k) {
    PolyExpr c = p.coefficient_of(x, k);
    if (!c.is_zero()) r += c * np[k] * dp[top - k];
  }
  return r;
}

Fraction substitute(const Fraction& p, std::string_view x, const Fraction& value) {
  unsigned kn = p.num().degree_in(x), kd = p.den().degree_in(x);
  PolyExpr n = substitute_fraction(p.num(), x, value.num(), value.den());
  PolyExpr d = substitute_fraction(p.den(), x, value.num(), value.den());
  // num/den = (n / D^kn) / (d / D^kd)
  if (kn >= kd) return Fraction(n, d * value.den().pow(kn - kd));
  return Fraction(n * value.den().pow(kd - kn), d);
}

Fraction solve_linear_fraction(const PolyExpr& p, std::string_view x) {
  if (p.degree_in(x) != 1)
    throw Error(Errc::NotLinear, "'" + p.to_string() + "' is not of degree one in " + std::string(x));
  return Fraction(-p.coefficient_of(x, 0), p.coefficient_of(x, 1));
}

}  // namespace chowcalc
