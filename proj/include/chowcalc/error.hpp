#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chowcalc {

enum class Errc {
  NotLinear,
  NonConstantCoefficient,
  MissingAssignment,
  NotDivisible,
  DivisionByZero,
  IncompletePairingTable,
  DegreeOverflow,
  ModelMismatch,
  UnsupportedSection,
  ZeroPolynomial,
  BoxTooLarge,
  NotQuadratic,
  UnknownName,
  InvalidArgument,
  ParseError,
  AssertionFailure,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by the expression and scenario parsers; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, const std::string& detail);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

}  // namespace chowcalc
