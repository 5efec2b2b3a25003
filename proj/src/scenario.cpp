#include "chowcalc/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "chowcalc/diophantine.hpp"
#include "chowcalc/error.hpp"
#include "chowcalc/ulrich.hpp"
#include "json.hpp"

namespace chowcalc {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

class Cursor {
 public:
  Cursor(std::string_view s, int line) : s_(s), line_(line) {}

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    ws();
    return pos_ >= s_.size();
  }
  int column() {
    ws();
    return static_cast<int>(pos_) + 1;
  }
  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail = "") {
    ws();
    throw ParseError(line_, static_cast<int>(pos_) + 1, std::move(expected), detail);
  }

  std::string name(const char* what) {
    ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (start == pos_) fail({what});
    return std::string(s_.substr(start, pos_ - start));
  }
  bool peek_word(std::string_view kw) {
    ws();
    return s_.substr(pos_, kw.size()) == kw &&
           (pos_ + kw.size() >= s_.size() || !ident_char(s_[pos_ + kw.size()]));
  }
  bool accept_word(std::string_view kw) {
    if (!peek_word(kw)) return false;
    pos_ += kw.size();
    return true;
  }
  void expect_word(std::string_view kw) {
    if (!accept_word(kw)) fail({"'" + std::string(kw) + "'"});
  }
  bool accept_sym(std::string_view sym) {
    ws();
    if (s_.substr(pos_, sym.size()) != sym) return false;
    pos_ += sym.size();
    return true;
  }
  void expect_sym(std::string_view sym) {
    if (!accept_sym(sym)) fail({"'" + std::string(sym) + "'"});
  }
  std::string quoted() {
    ws();
    if (pos_ >= s_.size() || s_[pos_] != '"') fail({"quoted text"});
    std::size_t end = s_.find('"', pos_ + 1);
    if (end == std::string_view::npos) fail({"closing quote"});
    std::string out(s_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return out;
  }
  Integer integer() {
    ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) {
      pos_ = start;
      fail({"integer"});
    }
    return Integer(std::string(s_.substr(start, pos_ - start)), 10);
  }
  std::pair<Integer, Integer> range() {
    Integer lo = integer();
    expect_sym("..");
    return {lo, integer()};
  }
  std::vector<std::pair<Integer, Integer>> ranges() {
    std::vector<std::pair<Integer, Integer>> out{range()};
    while (accept_sym(",")) out.push_back(range());
    return out;
  }
  std::vector<std::string> name_list(const char* what) {
    std::vector<std::string> out{name(what)};
    while (accept_sym(",")) out.push_back(name(what));
    return out;
  }

  // Expression up to a stop position at bracket depth zero.
  ExprPtr expr(const std::function<bool(std::size_t)>& stop) {
    ws();
    std::size_t start = pos_, i = pos_;
    int depth = 0;
    while (i < s_.size()) {
      char c = s_[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && stop(i)) break;
      ++i;
    }
    std::size_t end = i;
    while (end > start && std::isspace(static_cast<unsigned char>(s_[end - 1]))) --end;
    if (end == start) fail({"expression"});
    ExprPtr e = parse_expression(s_.substr(start, end - start), line_, static_cast<int>(start));
    pos_ = i;
    return e;
  }
  ExprPtr expr_until_words(std::initializer_list<std::string_view> words) {
    std::vector<std::string_view> ws(words);
    return expr([this, ws](std::size_t i) { return word_at(i, ws); });
  }
  ExprPtr expr_until_comma_or_words(std::initializer_list<std::string_view> words) {
    std::vector<std::string_view> ws(words);
    return expr([this, ws](std::size_t i) { return s_[i] == ',' || word_at(i, ws); });
  }
  ExprPtr expr_until_equals() {
    return expr([this](std::size_t i) { return s_[i] == '=' && (i == 0 || s_[i - 1] != ':'); });
  }
  // Stops before "<identifier>=" preceded by a blank.
  ExprPtr expr_until_key() {
    return expr([this](std::size_t i) {
      if (i == 0 || !std::isspace(static_cast<unsigned char>(s_[i - 1])) || !ident_char(s_[i])) return false;
      std::size_t j = i;
      while (j < s_.size() && ident_char(s_[j])) ++j;
      return j < s_.size() && s_[j] == '=';
    });
  }
  ExprPtr expr_to_end() {
    return expr([](std::size_t) { return false; });
  }

 private:
  bool word_at(std::size_t i, const std::vector<std::string_view>& words) const {
    if (i > 0 && !std::isspace(static_cast<unsigned char>(s_[i - 1]))) return false;
    for (auto w : words)
      if (s_.substr(i, w.size()) == w && (i + w.size() >= s_.size() || std::isspace(static_cast<unsigned char>(s_[i + w.size()]))))
        return true;
    return false;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

void parse_expect(Cursor& c, Directive& d) {
  c.expect_word("expect");
  if (c.accept_word("empty")) {
    d.expect_empty = true;
    return;
  }
  do {
    c.expect_sym("(");
    std::vector<Integer> point{c.integer()};
    while (c.accept_sym(",")) point.push_back(c.integer());
    c.expect_sym(")");
    d.expected.push_back(std::move(point));
  } while (c.accept_sym(";"));
}

void parse_optional_as(Cursor& c, Directive& d) {
  if (c.accept_word("as")) d.words.push_back(c.name("name"));
}

void parse_step(Cursor& c, Directive& d) {
  const int kind_column = c.column();
  d.step = c.name("step kind");
  const std::string& k = d.step;
  if (k == "residual_c1" || k == "residual_c2" || k == "residual_c3" || k == "rr_surface" ||
      k == "schur22" || k == "porteous3") {
    d.words.push_back(c.name("bundle name"));
    c.expect_word("as");
    d.words.push_back(c.name("name"));
  } else if (k == "top") {
    d.exprs.push_back(c.expr_until_words({"as"}));
    c.expect_word("as");
    d.words.push_back(c.name("name"));
  } else if (k == "solve") {
    d.words.push_back(c.name("name"));
    c.expect_word("for");
    d.words.push_back(c.name("parameter"));
    parse_optional_as(c, d);
  } else if (k == "subst" || k == "specialize") {
    d.words.push_back(c.name("parameter"));
    c.expect_sym(":=");
    if (k == "subst") {
      d.exprs.push_back(c.expr_until_words({"in"}));
      c.expect_word("in");
      d.words.push_back(c.name("name"));
      parse_optional_as(c, d);
    } else {
      d.exprs.push_back(c.expr_to_end());
    }
  } else if (k == "divide") {
    d.words.push_back(c.name("name"));
    c.expect_word("by");
    d.exprs.push_back(c.expr_until_words({"as", "because"}));
    parse_optional_as(c, d);
    c.expect_word("because");
    d.text = c.quoted();
  } else if (k == "declare") {
    d.words.push_back(c.name("name"));
    c.expect_sym("=");
    d.exprs.push_back(c.expr_until_words({"because"}));
    c.expect_word("because");
    d.text = c.quoted();
  } else if (k == "assert_zero") {
    d.words.push_back(c.name("name"));
  } else if (k == "assert_equals") {
    d.words.push_back(c.name("name"));
    if (c.accept_word("exact")) {
      d.words.push_back("exact");
    } else if (c.accept_word("primitive")) {
      d.words.push_back("primitive");
    } else {
      c.fail({"'exact'", "'primitive'"});
    }
    c.ws();
    d.text = c.quoted();
    d.exprs.push_back(parse_expression(d.text, d.line, 0));
  } else if (k == "assert_class") {
    d.exprs.push_back(c.expr_until_equals());
    c.expect_sym("=");
    d.exprs.push_back(c.expr_to_end());
  } else if (k == "whitney") {
    d.words.push_back(c.name("bundle name"));
    d.words.push_back(c.name("bundle name"));
    c.expect_word("as");
    d.words.push_back(c.name("name"));
  } else if (k == "dual") {
    d.words.push_back(c.name("bundle name"));
    c.expect_word("as");
    d.words.push_back(c.name("name"));
  } else if (k == "twist") {
    d.words.push_back(c.name("bundle name"));
    c.expect_word("by");
    d.exprs.push_back(c.expr_until_words({"as"}));
    c.expect_word("as");
    d.words.push_back(c.name("name"));
  } else if (k == "chi_roots") {
    d.words.push_back(c.name("name"));
    c.expect_word("in");
    d.words.push_back(c.name("parameter"));
    c.expect_word("required");
    d.number = c.integer().get_si();
    d.has_number = true;
  } else if (k == "numdim") {
    d.exprs.push_back(c.expr_until_words({"at", "expect"}));
    if (c.accept_word("at")) {
      do {
        std::string key = c.name("parameter");
        c.expect_sym("=");
        d.options.emplace_back(key, c.expr_until_comma_or_words({"expect"}));
      } while (c.accept_sym(","));
    }
    c.expect_word("expect");
    d.number = c.integer().get_si();
    d.has_number = true;
  } else if (k == "diophantine") {
    d.words.push_back(c.name("name"));
    c.expect_word("vars");
    for (auto& v : c.name_list("variable")) d.words.push_back(v);
    c.expect_word("box");
    d.ranges = c.ranges();
    if (d.ranges.size() + 1 != d.words.size()) c.fail({"one range per variable"});
    parse_expect(c, d);
  } else if (k == "qscan") {
    d.words.push_back(c.name("name"));
    c.expect_word("quad");
    d.words.push_back(c.name("variable"));
    if (c.accept_word("min")) {
      d.number = c.integer().get_si();
      d.has_number = true;
    }
    c.expect_word("scan");
    d.words.push_back(c.name("variable"));
    c.expect_word("range");
    d.ranges.push_back(c.range());
    parse_expect(c, d);
  } else if (k == "consistency") {
  } else if (k == "c2_section") {
    d.number = c.integer().get_si();
    d.has_number = true;
    c.expect_word("as");
    d.words.push_back(c.name("name"));
  } else {
    throw ParseError(d.line, kind_column, {"step kind"}, "unknown step '" + k + "'");
  }
  if (!c.done()) c.fail({"end of line"});
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& name) {
  Scenario sc;
  sc.name = name;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    Cursor c(line, line_no);
    if (c.done()) continue;
    Directive d;
    d.line = line_no;
    d.source = raw;
    d.kind = c.name("directive");
    if (d.kind == "model") {
      const int kind_column = c.column();
      d.words.push_back(c.name("model kind"));
      if (d.words[0] != "pbundle_curve" && d.words[0] != "pbundle_surface" &&
          d.words[0] != "hyperquadric_curve")
        throw ParseError(d.line, kind_column, {"pbundle_curve", "pbundle_surface", "hyperquadric_curve"},
                         "unknown model kind '" + d.words[0] + "'");
      while (!c.done()) {
        std::string key = c.name("key");
        c.expect_sym("=");
        d.options.emplace_back(key, c.expr_until_key());
      }
    } else if (d.kind == "param") {
      while (!c.done()) d.words.push_back(c.name("parameter"));
      if (d.words.empty()) c.fail({"parameter"});
    } else if (d.kind == "pairing") {
      c.expect_sym("(");
      d.words.push_back(c.name("symbol"));
      c.expect_sym(",");
      d.words.push_back(c.name("symbol"));
      c.expect_sym(")");
      c.expect_sym("=");
      d.exprs.push_back(c.expr_to_end());
    } else if (d.kind == "class" || d.kind == "poly") {
      d.words.push_back(c.name("name"));
      c.expect_sym("=");
      d.exprs.push_back(c.expr_to_end());
    } else if (d.kind == "bundle") {
      d.words.push_back(c.name("bundle name"));
      while (!c.done()) {
        std::string key = c.name("key");
        c.expect_sym("=");
        d.options.emplace_back(key, c.expr_until_key());
      }
    } else if (d.kind == "note" || d.kind == "final") {
      d.text = c.quoted();
    } else if (d.kind == "step") {
      parse_step(c, d);
    } else {
      throw ParseError(line_no, 1, {"model", "param", "pairing", "class", "poly", "bundle", "step",
                                    "note", "final"},
                       "unknown directive '" + d.kind + "'");
    }
    if (d.kind != "step" && !c.done()) c.fail({"end of line"});
    sc.directives.push_back(std::move(d));
  }
  return sc;
}

}  // namespace chowcalc

namespace chowcalc {

namespace {

using Json = nlohmann::ordered_json;

struct DivisorValue {
  BaseDivisor lin;
  PolyExpr scal;
};

void add_into(BaseDivisor& a, const BaseDivisor& b, const Rational& sign) {
  for (const auto& [sym, c] : b) {
    PolyExpr sum = a[sym] + c * PolyExpr(sign);
    if (sum.is_zero()) {
      a.erase(sym);
    } else {
      a[sym] = sum;
    }
  }
}

std::string render_points(const std::vector<std::vector<Integer>>& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ";";
    out += "(";
    for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + p[i].get_str();
    out += ")";
  }
  return out.empty() ? "empty" : out;
}

class Runner {
 public:
  explicit Runner(Report& report) : report_(report) {}

  void run(const Scenario& sc) {
    std::size_t index = 0;
    for (const auto& d : sc.directives) {
      StepOutcome out;
      if (d.kind == "step") {
        out.index = ++index;
        out.kind = d.step;
        out.line = d.line;
      }
      try {
        directive(d, out);
      } catch (const std::exception& ex) {
        report_.error = "line " + std::to_string(d.line) + ": " + ex.what();
        report_.passed = false;
        if (d.kind == "step") {
          out.passed = false;
          out.payload.emplace_back("error", ex.what());
          report_.steps.push_back(std::move(out));
        }
        return;
      }
      if (d.kind == "step") {
        if (!out.passed) {
          report_.passed = false;
          report_.failures.push_back("AssertionFailure: step " + std::to_string(out.index) + " " +
                                     out.kind + " at line " + std::to_string(d.line));
        }
        report_.steps.push_back(std::move(out));
      }
    }
    if (!model_ && model_dir_) {
      try {
        ensure_model();
      } catch (const std::exception& ex) {
        report_.error = ex.what();
        report_.passed = false;
      }
    }
  }

 private:
  EvalEnv env() const {
    EvalEnv e;
    e.model = model_.get();
    e.classes = &classes_;
    e.bundles = &bundles_;
    e.values = &values_;
    e.params = &params_;
    return e;
  }
  EvalEnv param_env() const {
    EvalEnv e;
    e.params = &params_;
    return e;
  }

  const Fraction& value(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw Error(Errc::UnknownName, "no value named '" + name + "'");
    return it->second;
  }
  const FormalBundle& bundle(const std::string& name) const {
    auto it = bundles_.find(name);
    if (it == bundles_.end()) throw Error(Errc::UnknownName, "no bundle named '" + name + "'");
    return it->second;
  }
  void check_free(const std::string& name) const {
    if (params_.contains(name))
      throw Error(Errc::InvalidArgument, "'" + name + "' is a parameter and cannot name a value");
  }
  void set_value(const std::string& name, Fraction v, StepOutcome& out) {
    check_free(name);
    out.payload.emplace_back(name, v.to_string());
    values_.insert_or_assign(name, std::move(v));
  }
  void set_bundle(const std::string& name, FormalBundle b, StepOutcome& out) {
    out.payload.emplace_back("bundle", name);
    out.payload.emplace_back("rank", b.rank().to_string());
    for (unsigned k = 1; k <= kMaxChern; ++k) {
      ChowClass c = b.c(k);
      if (!c.is_zero()) out.payload.emplace_back("c" + std::to_string(k), render_class(c, *model_));
    }
    bundles_.insert_or_assign(name, std::move(b));
  }
  PolyExpr polynomial_value(const std::string& name) const {
    const Fraction& v = value(name);
    return v.num();
  }

  DivisorValue divisor(const Expr& e, const std::set<std::string>& symbols) const {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Number:
        return {{}, PolyExpr(e.number)};
      case K::Ident:
        if (symbols.count(e.name)) return {{{e.name, PolyExpr(1)}}, PolyExpr()};
        return {{}, eval_poly(e, param_env())};
      case K::Pullback:
        if (!symbols.count(e.name))
          throw Error(Errc::UnknownName, "unknown base divisor '" + e.name + "'");
        return {{{e.name, PolyExpr(1)}}, PolyExpr()};
      case K::Neg: {
        DivisorValue v = divisor(*e.lhs, symbols);
        BaseDivisor lin;
        add_into(lin, v.lin, -1);
        return {lin, -v.scal};
      }
      case K::Add:
      case K::Sub: {
        DivisorValue a = divisor(*e.lhs, symbols), b = divisor(*e.rhs, symbols);
        Rational sign = e.kind == K::Add ? 1 : -1;
        add_into(a.lin, b.lin, sign);
        return {a.lin, a.scal + b.scal * PolyExpr(sign)};
      }
      case K::Mul: {
        DivisorValue a = divisor(*e.lhs, symbols), b = divisor(*e.rhs, symbols);
        if (!a.lin.empty() && !b.lin.empty())
          throw Error(Errc::InvalidArgument, "product of two base divisors is not a divisor");
        if (a.lin.empty()) std::swap(a, b);
        for (auto& [sym, c] : a.lin) c = c * b.scal;
        std::erase_if(a.lin, [](const auto& kv) { return kv.second.is_zero(); });
        return {a.lin, a.scal * b.scal};
      }
      case K::Div: {
        DivisorValue a = divisor(*e.lhs, symbols);
        Rational q = eval_poly(*e.rhs, param_env()).constant_value();
        if (q.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
        for (auto& [sym, c] : a.lin) c = c / q;
        return {a.lin, a.scal / q};
      }
      default:
        return {{}, eval_poly(e, param_env())};
    }
  }
  BaseDivisor pure_divisor(const Expr& e, const std::set<std::string>& symbols) const {
    DivisorValue v = divisor(e, symbols);
    if (!v.scal.is_zero())
      throw Error(Errc::InvalidArgument, "'" + render_expression(e) + "' is not a base divisor");
    return v.lin;
  }
  static std::string generator_name(const Expr& e) {
    if (e.kind != Expr::Kind::Ident) throw Error(Errc::InvalidArgument, "gen= expects a name");
    return e.name;
  }

  void ensure_model() {
    if (model_) return;
    if (!model_dir_) throw Error(Errc::InvalidArgument, "no model declared");
    const Directive& d = *model_dir_;
    const std::string& kind = d.words.at(0);
    auto scalar = [&](const ExprPtr& e) { return eval_poly(*e, param_env()); };
    auto unknown = [&](const std::string& key) {
      return Error(Errc::InvalidArgument, "unknown key '" + key + "' for model " + kind);
    };
    if (kind == "pbundle_curve") {
      CurveBundleConfig c;
      for (const auto& [key, e] : d.options) {
        if (key == "n") c.dim = scalar(e);
        else if (key == "g") c.genus = scalar(e);
        else if (key == "degF") c.deg_f = scalar(e);
        else if (key == "xitop") c.xi_top = scalar(e);
        else if (key == "gen") c.generator = generator_name(*e);
        else if (key.rfind("deg.", 0) == 0) c.divisor_degrees[key.substr(4)] = scalar(e);
        else throw unknown(key);
      }
      model_ = ChowModel::pbundle_over_curve(c);
    } else if (kind == "pbundle_surface") {
      SurfaceBundleConfig c;
      if (has_pairings_) c.table = table_;
      std::set<std::string> symbols = c.table.symbols();
      for (const auto& [key, e] : d.options) {
        if (key == "n") c.dim = scalar(e);
        else if (key == "c1F") c.c1F = pure_divisor(*e, symbols);
        else if (key == "KB") c.kB = pure_divisor(*e, symbols);
        else if (key == "c2F") c.c2F = scalar(e);
        else if (key == "c2B") c.c2B = scalar(e);
        else if (key == "xitop") c.xi_top = scalar(e);
        else if (key == "gen") c.generator = generator_name(*e);
        else throw unknown(key);
      }
      model_ = ChowModel::pbundle_over_surface(c);
    } else if (kind == "hyperquadric_curve") {
      HyperquadricConfig c;
      for (const auto& [key, e] : d.options) {
        if (key == "n") c.dim = scalar(e);
        else if (key == "g") c.genus = scalar(e);
        else if (key == "d") c.degree = scalar(e);
        else if (key == "e") c.e = scalar(e);
        else if (key == "fiber") c.fiber_degree = scalar(e);
        else if (key == "gen") c.generator = generator_name(*e);
        else if (key.rfind("deg.", 0) == 0) c.divisor_degrees[key.substr(4)] = scalar(e);
        else throw unknown(key);
      }
      model_ = ChowModel::hyperquadric_over_curve(c);
    } else {
      throw Error(Errc::InvalidArgument, "unknown model kind '" + kind + "'");
    }
    refresh_auto_classes();
    report_.model = model_->describe();
  }

  void refresh_auto_classes() {
    if (!user_classes_.count("KX")) classes_.insert_or_assign("KX", canonical_class(*model_));
    if (!user_classes_.count("c2X")) classes_.insert_or_assign("c2X", c2_tangent(*model_));
  }

  void directive(const Directive& d, StepOutcome& out) {
    if (d.kind == "model") {
      if (model_dir_) throw Error(Errc::InvalidArgument, "model declared twice");
      model_dir_ = &d;
    } else if (d.kind == "param") {
      for (const auto& w : d.words) {
        if (!ParamContext::is_valid_name(w))
          throw Error(Errc::InvalidArgument, "invalid parameter name '" + w + "'");
        if (values_.count(w)) throw Error(Errc::InvalidArgument, "'" + w + "' already names a value");
        params_.declare(w);
      }
    } else if (d.kind == "pairing") {
      if (model_) throw Error(Errc::InvalidArgument, "pairing lines must precede the first use of the model");
      table_.set(d.words[0], d.words[1], eval_poly(*d.exprs[0], param_env()));
      has_pairings_ = true;
    } else if (d.kind == "class") {
      ensure_model();
      ChowClass c = eval_class(*d.exprs[0], env());
      user_classes_.insert(d.words[0]);
      classes_.insert_or_assign(d.words[0], std::move(c));
    } else if (d.kind == "poly") {
      ensure_model();
      check_free(d.words[0]);
      values_.insert_or_assign(d.words[0], eval_scalar(*d.exprs[0], env()));
    } else if (d.kind == "bundle") {
      ensure_model();
      define_bundle(d, out);
    } else if (d.kind == "note") {
      report_.notes.push_back(d.text);
    } else if (d.kind == "final") {
      report_.final_text = d.text;
    } else if (d.kind == "step") {
      ensure_model();
      step(d, out);
    }
  }

  void define_bundle(const Directive& d, StepOutcome& out) {
    std::optional<PolyExpr> rank;
    std::optional<ChowClass> split;
    std::vector<ChowClass> chern(kMaxChern);
    for (const auto& [key, e] : d.options) {
      if (key == "rank") {
        rank = eval_poly(*e, env());
      } else if (key == "split") {
        split = eval_class(*e, env());
      } else if (key.size() == 2 && key[0] == 'c' && key[1] >= '1' && key[1] <= '0' + int(kMaxChern)) {
        chern[key[1] - '1'] = eval_class(*e, env());
      } else {
        throw Error(Errc::InvalidArgument, "unknown bundle key '" + key + "'");
      }
    }
    if (!rank) throw Error(Errc::InvalidArgument, "bundle needs rank=");
    if (split) {
      bundles_.insert_or_assign(d.words[0], FormalBundle::split_sum(model_, *split, *rank));
    } else {
      bundles_.insert_or_assign(d.words[0], FormalBundle(model_, *rank, chern));
    }
    (void)out;
  }

  void compare_points(const std::vector<std::vector<Integer>>& found, const Directive& d,
                      StepOutcome& out) {
    out.payload.emplace_back("found", render_points(found));
    out.payload.emplace_back("expected", d.expect_empty ? "empty" : render_points(d.expected));
    out.passed = d.expect_empty ? found.empty() : found == d.expected;
  }

  void step(const Directive& d, StepOutcome& out) {
    const std::string& k = d.step;
    const auto& w = d.words;
    if (k == "residual_c1" || k == "residual_c2" || k == "residual_c3") {
      UlrichContext ctx{bundle(w[0]), classes_.at("KX"), classes_.at("c2X")};
      PolyExpr p = k == "residual_c1" ? residual_c1(ctx)
                   : k == "residual_c2" ? residual_c2(ctx)
                                        : residual_c3(ctx);
      set_value(w[1], p, out);
    } else if (k == "top") {
      set_value(w[0], top_intersect({eval_class(*d.exprs[0], env())}, *model_), out);
    } else if (k == "solve") {
      const Fraction& v = value(w[0]);
      const std::string& x = w[1];
      if (!v.is_polynomial()) report_.assumptions.push_back(v.den().to_string() + " != 0");
      Fraction sol;
      try {
        sol = solve_linear(v.num(), x);
      } catch (const Error& ex) {
        if (ex.code() != Errc::NonConstantCoefficient) throw;
        sol = solve_linear_fraction(v.num(), x);
        report_.assumptions.push_back(sol.den().to_string() + " != 0");
      }
      set_value(w.size() > 2 ? w[2] : x + "_sol", sol, out);
    } else if (k == "subst") {
      Fraction val = eval_scalar(*d.exprs[0], env());
      set_value(w.size() > 2 ? w[2] : w[1], substitute(value(w[1]), w[0], val), out);
    } else if (k == "specialize") {
      specialize(w[0], eval_scalar(*d.exprs[0], env()), out);
    } else if (k == "divide") {
      PolyExpr q = eval_poly(*d.exprs[0], env());
      const Fraction& v = value(w[0]);
      Fraction res(divide_exact(v.num(), q), v.den());
      report_.assumptions.push_back(q.to_string() + " != 0 (" + d.text + ")");
      set_value(w.size() > 1 ? w[1] : w[0], res, out);
    } else if (k == "declare") {
      Fraction v = eval_scalar(*d.exprs[0], env());
      report_.assumptions.push_back(w[0] + " := " + v.to_string() + " = 0 (" + d.text + ")");
      set_value(w[0], v, out);
    } else if (k == "assert_zero") {
      const Fraction& v = value(w[0]);
      out.payload.emplace_back(w[0], v.to_string());
      out.passed = v.is_zero();
    } else if (k == "assert_equals") {
      const Fraction& v = value(w[0]);
      Fraction golden = eval_scalar(*d.exprs[0], param_env());
      if (w[1] == "exact") {
        out.payload.emplace_back(w[0], v.to_string());
        out.passed = v == golden;
      } else {
        PolyExpr p = primitive_form(v.num()).poly;
        out.payload.emplace_back(w[0], p.to_string());
        out.passed = p == primitive_form(golden.num()).poly;
      }
      out.payload.emplace_back("expected", d.text);
    } else if (k == "assert_class") {
      ChowClass a = eval_class(*d.exprs[0], env()), b = eval_class(*d.exprs[1], env());
      out.payload.emplace_back("lhs", render_class(a, *model_));
      out.payload.emplace_back("rhs", render_class(b, *model_));
      out.passed = a == b;
    } else if (k == "whitney") {
      set_bundle(w[2], whitney(bundle(w[0]), bundle(w[1])), out);
    } else if (k == "dual") {
      set_bundle(w[1], dual(bundle(w[0])), out);
    } else if (k == "twist") {
      set_bundle(w[1], twist_line(bundle(w[0]), eval_class(*d.exprs[0], env())), out);
    } else if (k == "rr_surface") {
      set_value(w[1], rr_surface_bundle(bundle(w[0])), out);
    } else if (k == "schur22" || k == "porteous3") {
      const FormalBundle& b = bundle(w[0]);
      ChowClass c = k == "schur22" ? schur_s22(b) : porteous_codim3(b).difference();
      out.payload.emplace_back("class", render_class(c, *model_));
      set_value(w[1], top_intersect({c}, *model_), out);
    } else if (k == "c2_section") {
      ChowClass c = c2_linear_section(classes_.at("c2X"), classes_.at("KX"),
                                      static_cast<unsigned>(d.number), *model_);
      out.payload.emplace_back(w[0], render_class(c, *model_));
      user_classes_.insert(w[0]);
      classes_.insert_or_assign(w[0], c);
    } else if (k == "chi_roots") {
      PolyExpr chi = polynomial_value(w[0]);
      bool impossible = chi_root_count(chi, w[1], static_cast<unsigned long>(d.number));
      out.payload.emplace_back("degree", std::to_string(chi.degree_in(w[1])));
      out.payload.emplace_back("required", std::to_string(d.number));
      out.payload.emplace_back("impossible", impossible ? "true" : "false");
      out.passed = impossible;
    } else if (k == "numdim") {
      ChowClass det = eval_class(*d.exprs[0], env());
      Assignment at;
      for (const auto& [key, e] : d.options) at[key] = eval_poly(*e, param_env()).constant_value();
      unsigned nd = numerical_dimension(det, *model_, at);
      out.payload.emplace_back("numerical_dimension", std::to_string(nd));
      out.payload.emplace_back("expected", std::to_string(d.number));
      out.passed = static_cast<long>(nd) == d.number;
    } else if (k == "diophantine") {
      SearchBox box{{w.begin() + 1, w.end()}, d.ranges};
      auto hits = search_box(polynomial_value(w[0]), box);
      std::vector<std::vector<Integer>> found;
      for (const auto& a : hits) {
        std::vector<Integer> p;
        for (const auto& v : box.vars) p.push_back(a.at(v).numerator());
        found.push_back(std::move(p));
      }
      out.payload.emplace_back("box", box.size().get_str());
      compare_points(found, d, out);
    } else if (k == "qscan") {
      PolyExpr p = polynomial_value(w[0]);
      const auto& [lo, hi] = d.ranges[0];
      auto res = quadratic_scan(p, w[1], w[2], lo, hi);
      std::vector<std::vector<Integer>> found;
      for (const auto& a : res.solutions) {
        Integer q = a.at(w[1]).numerator();
        if (d.has_number && q < d.number) continue;
        found.push_back({q, a.at(w[2]).numerator()});
      }
      if (p.degree_in(w[1]) == 2) {
        auto cert = discriminant_certificate(p, w[1], w[2], lo, hi);
        out.payload.emplace_back("discriminant", cert.summary);
      }
      compare_points(found, d, out);
      if (!res.identically_zero.empty()) {
        out.payload.emplace_back("identically_zero", std::to_string(res.identically_zero.size()));
        out.passed = false;
      }
    } else if (k == "consistency") {
      ConsistencyReport r = relation_consistency_check(*model_);
      out.payload.emplace_back("checks", std::to_string(r.checks.size()));
      for (std::size_t i = 0; i < r.checks.size(); ++i)
        out.payload.emplace_back("check" + std::to_string(i + 1), r.checks[i]);
      out.passed = r.ok;
    }
  }

  void specialize(const std::string& x, const Fraction& val, StepOutcome& out) {
    if (!val.is_polynomial())
      throw Error(Errc::InvalidArgument, "specialize needs a polynomial value for '" + x + "'");
    PolyExpr v = val.as_polynomial();
    auto f = [&](const PolyExpr& p) { return substitute(p, x, v); };
    model_ = model_->transformed(f);
    for (auto& [name, c] : classes_) c = c.transformed(f);
    refresh_auto_classes();
    for (auto& [name, b] : bundles_) b = b.transformed(model_, f);
    for (auto& [name, fr] : values_) fr = substitute(fr, x, val);
    report_.model = model_->describe();
    out.payload.emplace_back(x, v.to_string());
  }

  Report& report_;
  const Directive* model_dir_ = nullptr;
  PairingTable table_;
  bool has_pairings_ = false;
  ModelPtr model_;
  ParamContext params_;
  std::map<std::string, ChowClass, std::less<>> classes_;
  std::set<std::string, std::less<>> user_classes_;
  std::map<std::string, FormalBundle, std::less<>> bundles_;
  std::map<std::string, Fraction, std::less<>> values_;
};

}  // namespace

std::string Report::step_line(const StepOutcome& s) const {
  std::string out = "STEP " + std::to_string(s.index) + " " + s.kind + " " + (s.passed ? "PASS" : "FAIL");
  out += " line=" + std::to_string(s.line);
  for (const auto& [k, v] : s.payload) {
    bool bare = !v.empty() && std::all_of(v.begin(), v.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_.*^/+-(),;").find(c) != std::string_view::npos;
    });
    out += " " + k + "=" + (bare ? v : Json(v).dump());
  }
  return out;
}

std::string Report::to_json_lines() const {
  std::string out;
  for (const auto& s : steps) out += step_line(s) + "\n";
  return out;
}

std::string Report::to_text(bool with_timing) const {
  std::ostringstream os;
  os << "SCENARIO " << scenario << "\n";
  if (!model.empty()) os << "MODEL " << model << "\n";
  for (const auto& n : notes) os << "NOTE " << n << "\n";
  os << to_json_lines();
  for (const auto& a : assumptions) os << "ASSUME " << a << "\n";
  for (const auto& f : failures) os << "FAILURE " << f << "\n";
  if (!error.empty()) os << "ERROR " << error << "\n";
  os << "VERDICT " << (passed ? "PASS" : "FAIL");
  if (with_timing) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.1f ms)", elapsed_ms);
    os << buf;
  }
  os << "\n";
  if (!final_text.empty()) os << final_line() << "\n";
  return os.str();
}

std::string Report::final_line() const {
  return "FINAL " + (passed ? final_text : "NOT ESTABLISHED: " + final_text);
}

Report run_scenario(const Scenario& scenario) {
  auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.scenario = scenario.name;
  Runner(report).run(scenario);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

Report run_text(std::string_view text, const std::string& name) {
  return run_scenario(parse_scenario(text, name));
}

Report run_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.rfind('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return run_text(ss.str(), name);
}

Report run_builtin(std::string_view name) {
  return run_text(builtin_text(name), std::string(name));
}

}  // namespace chowcalc
