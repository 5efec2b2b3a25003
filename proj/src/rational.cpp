#include "chowcalc/rational.hpp"

#include <algorithm>

#include "chowcalc/error.hpp"

namespace chowcalc {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotLinear: return "NotLinear";
    case Errc::NonConstantCoefficient: return "NonConstantCoefficient";
    case Errc::MissingAssignment: return "MissingAssignment";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IncompletePairingTable: return "IncompletePairingTable";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::ModelMismatch: return "ModelMismatch";
    case Errc::UnsupportedSection: return "UnsupportedSection";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::BoxTooLarge: return "BoxTooLarge";
    case Errc::NotQuadratic: return "NotQuadratic";
    case Errc::UnknownName: return "UnknownName";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::AssertionFailure: return "AssertionFailure";
  }
  return "Unknown";
}

static std::string parse_message(int line, int column, const std::vector<std::string>& expected,
                                 const std::string& detail) {
  std::string msg = "line " + std::to_string(line) + ", column " + std::to_string(column);
  if (!detail.empty()) msg += ": " + detail;
  if (!expected.empty()) {
    msg += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += expected[i];
    }
    msg += ")";
  }
  return msg;
}

ParseError::ParseError(int line, int column, std::vector<std::string> expected,
                       const std::string& detail)
    : Error(Errc::ParseError, parse_message(line, column, expected, detail)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw Error(Errc::InvalidArgument, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s, 10));
    return Rational(Integer(s.substr(0, slash), 10), Integer(s.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw Error(Errc::InvalidArgument, "bad rational literal '" + std::string(text) + "'");
  }
}

Rational Rational::abs() const {
  Rational r;
  r.value_ = ::abs(value_);
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  Rational r;
  r.value_ = 1 / value_;
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::to_string() const { return value_.get_str(10); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "isqrt of a negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace chowcalc
