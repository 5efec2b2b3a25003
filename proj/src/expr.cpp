#include "chowcalc/expr.hpp"

#include <cctype>
#include <vector>

#include "chowcalc/error.hpp"

namespace chowcalc {

namespace {

struct Token {
  enum class Kind { Number, Ident, Symbol, End } kind;
  std::string text;
  int column;
};

std::vector<Token> lex(std::string_view s, int line, int offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    int col = static_cast<int>(i) + 1 + offset;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (std::string_view("+-*/^(),").find(ch) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, ch), col});
      ++i;
    } else {
      throw ParseError(line, col, {"expression"}, std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Token::Kind::End, "", static_cast<int>(s.size()) + 1 + offset});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (peek().kind != Token::Kind::End) fail({"operator", "end of input"});
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool is(const char* sym, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Token::Kind::Symbol && t.text == sym;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(line_, t.column, std::move(expected), "unexpected " + got);
  }
  void expect(const char* sym) {
    if (!is(sym)) fail({std::string("'") + sym + "'"});
    ++pos_;
  }
  std::shared_ptr<Expr> node(Expr::Kind k, const Token& at) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->line = line_;
    e->column = at.column;
    return e;
  }

  ExprPtr expr() {
    ExprPtr left = term();
    while (is("+") || is("-")) {
      const Token& op = peek();
      auto e = node(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, op);
      ++pos_;
      e->lhs = left;
      e->rhs = term();
      left = e;
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (is("*") || is("/")) {
      const Token& op = peek();
      auto e = node(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, op);
      ++pos_;
      e->lhs = left;
      e->rhs = unary();
      left = e;
    }
    return left;
  }

  ExprPtr unary() {
    if (is("-")) {
      auto e = node(Expr::Kind::Neg, peek());
      ++pos_;
      e->lhs = unary();
      return e;
    }
    return power();
  }

  unsigned small_integer() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.text.size() > 4) fail({"integer"});
    ++pos_;
    return static_cast<unsigned>(std::stoul(t.text));
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (is("^")) {
      auto e = node(Expr::Kind::Pow, peek());
      ++pos_;
      e->lhs = base;
      e->index = small_integer();
      return e;
    }
    return base;
  }

  ExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      auto e = node(Expr::Kind::Number, t);
      e->number = Rational(Integer(t.text, 10));
      ++pos_;
      return e;
    }
    if (is("(")) {
      ++pos_;
      ExprPtr inner = expr();
      expect(")");
      return inner;
    }
    if (t.kind != Token::Kind::Ident) fail({"number", "identifier", "'('"});
    const Token id = t;
    ++pos_;
    if (id.text == "pi" && (is("(") || (is("*") && is("(", 1)))) {
      if (is("*")) ++pos_;
      ++pos_;
      auto e = node(Expr::Kind::Pullback, id);
      if (peek().kind != Token::Kind::Ident) fail({"base divisor symbol"});
      e->name = peek().text;
      ++pos_;
      expect(")");
      return e;
    }
    if (id.text == "binom" && is("(")) {
      ++pos_;
      auto e = node(Expr::Kind::Binom, id);
      e->lhs = expr();
      expect(",");
      e->index = small_integer();
      expect(")");
      return e;
    }
    if (id.text.size() == 2 && id.text[0] == 'c' && id.text[1] >= '1' && id.text[1] <= '4' && is("(")) {
      ++pos_;
      auto e = node(Expr::Kind::ChernRef, id);
      e->index = static_cast<unsigned>(id.text[1] - '0');
      if (peek().kind != Token::Kind::Ident) fail({"bundle name"});
      e->name = peek().text;
      ++pos_;
      expect(")");
      return e;
    }
    auto e = node(Expr::Kind::Ident, id);
    e->name = id.text;
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, bool parens) {
  std::string s = render_expression(e);
  return parens ? "(" + s + ")" : s;
}

}  // namespace

bool same_expr(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.number != b.number || a.name != b.name || a.index != b.index) return false;
  if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
  if (a.lhs && !same_expr(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !same_expr(*a.rhs, *b.rhs)) return false;
  return true;
}

ExprPtr parse_expression(std::string_view text, int line, int column_offset) {
  return Parser(lex(text, line, column_offset), line).parse();
}

std::string render_expression(const Expr& e) {
  int p = precedence(e);
  switch (e.kind) {
    case Expr::Kind::Number: return e.number.to_string();
    case Expr::Kind::Ident: return e.name;
    case Expr::Kind::Pullback: return "pi(" + e.name + ")";
    case Expr::Kind::ChernRef: return "c" + std::to_string(e.index) + "(" + e.name + ")";
    case Expr::Kind::Binom:
      return "binom(" + render_expression(*e.lhs) + ", " + std::to_string(e.index) + ")";
    case Expr::Kind::Neg: return "-" + wrap(*e.lhs, precedence(*e.lhs) <= p);
    case Expr::Kind::Pow: return wrap(*e.lhs, precedence(*e.lhs) <= p) + "^" + std::to_string(e.index);
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      const char* op = e.kind == Expr::Kind::Add   ? " + "
                       : e.kind == Expr::Kind::Sub ? " - "
                       : e.kind == Expr::Kind::Mul ? "*"
                                                   : "/";
      return wrap(*e.lhs, precedence(*e.lhs) < p) + op + wrap(*e.rhs, precedence(*e.rhs) <= p);
    }
  }
  return "";
}

namespace {

[[noreturn]] void fail_at(const Expr& e, Errc code, const std::string& what) {
  throw Error(code, "line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ": " + what);
}

bool is_atom_name(std::string_view name) {
  return name == "xi" || name == "f" || name == "F" || name == "H" || name == "R";
}

Fraction scalar_ident(const Expr& e, const EvalEnv& env) {
  if (env.values)
    if (auto it = env.values->find(e.name); it != env.values->end()) return it->second;
  if (env.params && !env.params->contains(e.name))
    fail_at(e, Errc::UnknownName, "unknown parameter '" + e.name + "'");
  return Fraction(PolyExpr::var(e.name));
}

std::optional<ChowClass> class_atom(const Expr& e, const EvalEnv& env) {
  const ChowModel& m = *env.model;
  if (env.classes)
    if (auto it = env.classes->find(e.name); it != env.classes->end()) return it->second;
  if (e.name == m.generator_name()) return m.generator();
  if (e.name == m.fiber_name()) return m.fiber();
  if (e.name == "R" && m.kind() == ModelKind::PBundleOverSurface && m.base_symbols().count("R"))
    return m.pullback("R");
  if (is_atom_name(e.name) && !(env.values && env.values->count(e.name)) &&
      !(env.params && env.params->contains(e.name)))
    fail_at(e, Errc::ModelMismatch,
            "atom " + e.name + " is not available in model " + std::string(model_kind_name(m.kind())));
  return std::nullopt;
}

}  // namespace

Fraction eval_scalar(const Expr& e, const EvalEnv& env) {
  switch (e.kind) {
    case Expr::Kind::Number: return Fraction(PolyExpr(e.number));
    case Expr::Kind::Ident: return scalar_ident(e, env);
    case Expr::Kind::Pullback:
    case Expr::Kind::ChernRef: fail_at(e, Errc::InvalidArgument, "class atom in a scalar expression");
    case Expr::Kind::Binom: {
      Fraction arg = eval_scalar(*e.lhs, env);
      if (!arg.is_polynomial()) fail_at(e, Errc::InvalidArgument, "binom of a fraction");
      return Fraction(binom_poly(arg.as_polynomial(), e.index));
    }
    case Expr::Kind::Neg: return -eval_scalar(*e.lhs, env);
    case Expr::Kind::Add: return eval_scalar(*e.lhs, env) + eval_scalar(*e.rhs, env);
    case Expr::Kind::Sub: return eval_scalar(*e.lhs, env) - eval_scalar(*e.rhs, env);
    case Expr::Kind::Mul: return eval_scalar(*e.lhs, env) * eval_scalar(*e.rhs, env);
    case Expr::Kind::Div: {
      Fraction d = eval_scalar(*e.rhs, env);
      if (d.is_zero()) fail_at(e, Errc::DivisionByZero, "division by zero");
      return eval_scalar(*e.lhs, env) / d;
    }
    case Expr::Kind::Pow: return eval_scalar(*e.lhs, env).pow(e.index);
  }
  return {};
}

PolyExpr eval_poly(const Expr& e, const EvalEnv& env) {
  Fraction f = eval_scalar(e, env);
  if (!f.is_polynomial())
    fail_at(e, Errc::NonConstantCoefficient, "'" + f.to_string() + "' is not a polynomial");
  return f.as_polynomial();
}

ChowClass eval_class(const Expr& e, const EvalEnv& env) {
  if (!env.model) fail_at(e, Errc::InvalidArgument, "class expression without a model");
  const ChowModel& m = *env.model;
  switch (e.kind) {
    case Expr::Kind::Number: return ChowClass::scalar(PolyExpr(e.number));
    case Expr::Kind::Ident: {
      if (auto c = class_atom(e, env)) return *c;
      return ChowClass::scalar(eval_poly(e, env));
    }
    case Expr::Kind::Pullback: {
      try {
        return m.pullback(e.name);
      } catch (const Error& err) {
        fail_at(e, err.code(), err.what());
      }
    }
    case Expr::Kind::ChernRef: {
      if (!env.bundles) fail_at(e, Errc::UnknownName, "no bundles in scope");
      auto it = env.bundles->find(e.name);
      if (it == env.bundles->end()) fail_at(e, Errc::UnknownName, "unknown bundle '" + e.name + "'");
      if (!(*it->second.ambient() == m))
        fail_at(e, Errc::ModelMismatch, "bundle '" + e.name + "' lives on another model");
      return it->second.c(e.index);
    }
    case Expr::Kind::Binom: return ChowClass::scalar(eval_poly(e, env));
    case Expr::Kind::Neg: return -eval_class(*e.lhs, env);
    case Expr::Kind::Add: return eval_class(*e.lhs, env) + eval_class(*e.rhs, env);
    case Expr::Kind::Sub: return eval_class(*e.lhs, env) - eval_class(*e.rhs, env);
    case Expr::Kind::Mul: return mul_class(eval_class(*e.lhs, env), eval_class(*e.rhs, env), m);
    case Expr::Kind::Div: {
      Fraction d = eval_scalar(*e.rhs, env);
      if (d.is_zero() || !d.num().is_constant() || !d.den().is_constant())
        fail_at(e, Errc::InvalidArgument, "classes may only be divided by nonzero numbers");
      Rational c = d.den().constant_value() / d.num().constant_value();
      return PolyExpr(c) * eval_class(*e.lhs, env);
    }
    case Expr::Kind::Pow: return pow_class(eval_class(*e.lhs, env), e.index, m);
  }
  return {};
}

PolyExpr parse_poly(std::string_view text, const EvalEnv& env) {
  return eval_poly(*parse_expression(text), env);
}

ChowClass parse_class(std::string_view text, const ChowModel& model) {
  EvalEnv env;
  env.model = &model;
  return eval_class(*parse_expression(text), env);
}

}  // namespace chowcalc
