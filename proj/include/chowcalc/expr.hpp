#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "chowcalc/chern.hpp"
#include "chowcalc/fraction.hpp"

namespace chowcalc {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Parsed polynomial or class expression. Positions are 1-based.
struct Expr {
  enum class Kind { Number, Ident, Pullback, ChernRef, Binom, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  Rational number;   // Number
  std::string name;  // Ident, Pullback symbol, ChernRef bundle
  unsigned index = 0;  // ChernRef k, Pow exponent, Binom k
  ExprPtr lhs, rhs;  // operands; Neg, Binom and Pow use lhs
  int line = 1, column = 1;
};

bool same_expr(const Expr& a, const Expr& b);

// column_offset shifts reported columns when the text is a slice of a longer line.
ExprPtr parse_expression(std::string_view text, int line = 1, int column_offset = 0);
std::string render_expression(const Expr& e);

struct EvalEnv {
  const ChowModel* model = nullptr;
  const std::map<std::string, ChowClass, std::less<>>* classes = nullptr;
  const std::map<std::string, FormalBundle, std::less<>>* bundles = nullptr;
  const std::map<std::string, Fraction, std::less<>>* values = nullptr;
  const ParamContext* params = nullptr;  // when set, unknown identifiers are rejected
};

Fraction eval_scalar(const Expr& e, const EvalEnv& env);
PolyExpr eval_poly(const Expr& e, const EvalEnv& env);
ChowClass eval_class(const Expr& e, const EvalEnv& env);

// Convenience wrappers used by tests, bindings and the CLI.
PolyExpr parse_poly(std::string_view text, const EvalEnv& env = {});
ChowClass parse_class(std::string_view text, const ChowModel& model);

}  // namespace chowcalc
