#include "chowcalc/chow.hpp"

#include <sstream>

#include "chowcalc/error.hpp"

namespace chowcalc {

namespace {

PolyExpr var(const char* name) { return PolyExpr::var(name); }

std::string render_coeff_sum(const BaseDivisor& d) {
  std::string s;
  for (const auto& [sym, c] : d) {
    if (!s.empty()) s += ",";
    s += sym + ":" + c.to_string(true);
  }
  return "{" + s + "}";
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::PBundleOverCurve: return "pbundle_curve";
    case ModelKind::PBundleOverSurface: return "pbundle_surface";
    case ModelKind::HyperquadricOverCurve: return "hyperquadric_curve";
  }
  return "?";
}

// ---- PairingTable ----

void PairingTable::set(const std::string& a, const std::string& b, const PolyExpr& value) {
  entries_[a <= b ? Key{a, b} : Key{b, a}] = value;
}

const PolyExpr* PairingTable::find(std::string_view a, std::string_view b) const {
  Key k = a <= b ? Key{std::string(a), std::string(b)} : Key{std::string(b), std::string(a)};
  auto it = entries_.find(k);
  return it == entries_.end() ? nullptr : &it->second;
}

PolyExpr PairingTable::at(std::string_view a, std::string_view b) const {
  if (const PolyExpr* v = find(a, b)) return *v;
  throw Error(Errc::IncompletePairingTable,
              "no entry for (" + std::string(a) + "," + std::string(b) + ")");
}

PolyExpr PairingTable::pair(const BaseDivisor& x, const BaseDivisor& y) const {
  PolyExpr total;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) total += ca * cb * at(a, b);
  return total;
}

std::set<std::string> PairingTable::symbols() const {
  std::set<std::string> s;
  for (const auto& [k, v] : entries_) {
    s.insert(k.first);
    s.insert(k.second);
  }
  return s;
}

PairingTable PairingTable::transformed(const std::function<PolyExpr(const PolyExpr&)>& f) const {
  PairingTable t;
  for (const auto& [k, v] : entries_) t.entries_[k] = f(v);
  return t;
}

PairingTable standard_surface_table() {
  PairingTable t;
  t.set("KB", "KB", var("k2"));
  t.set("KB", "C1F", var("kc1"));
  t.set("KB", "M1", var("km1"));
  t.set("KB", "M2", var("km2"));
  t.set("C1F", "C1F", var("c12"));
  t.set("C1F", "M1", var("c1m1"));
  t.set("C1F", "M2", var("c1m2"));
  t.set("M1", "M1", var("m12"));
  t.set("M1", "M2", var("m1m2"));
  t.set("M2", "M2", PolyExpr(0));
  return t;
}

// ---- ChowClass ----

bool TermKeyOrder::operator()(const TermKey& a, const TermKey& b) const {
  if (a.xi_power != b.xi_power) return a.xi_power > b.xi_power;
  if (a.base_degree != b.base_degree) return a.base_degree < b.base_degree;
  return a.symbol < b.symbol;
}

ChowClass ChowClass::term(const TermKey& key, const PolyExpr& coeff) {
  ChowClass c;
  c.add_term(key, coeff);
  return c;
}

void ChowClass::add_term(const TermKey& key, const PolyExpr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::set<unsigned> ChowClass::degrees() const {
  std::set<unsigned> s;
  for (const auto& [k, c] : terms_) s.insert(k.degree());
  return s;
}

ChowClass ChowClass::part_of_degree(unsigned k) const {
  ChowClass r;
  for (const auto& [key, c] : terms_)
    if (key.degree() == k) r.add_term(key, c);
  return r;
}

PolyExpr ChowClass::coefficient(const TermKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? PolyExpr() : it->second;
}

ChowClass ChowClass::transformed(const std::function<PolyExpr(const PolyExpr&)>& f) const {
  ChowClass r;
  for (const auto& [k, c] : terms_) r.add_term(k, f(c));
  return r;
}

ChowClass ChowClass::operator-() const {
  ChowClass r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

ChowClass& ChowClass::operator+=(const ChowClass& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

ChowClass& ChowClass::operator-=(const ChowClass& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

ChowClass& ChowClass::operator*=(const PolyExpr& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  TermMap out;
  for (auto& [k, v] : terms_) {
    PolyExpr p = v * c;
    if (!p.is_zero()) out.emplace(k, std::move(p));
  }
  terms_ = std::move(out);
  return *this;
}

// ---- ChowModel ----

ModelPtr ChowModel::make(Config config) {
  auto m = std::shared_ptr<ChowModel>(new ChowModel(std::move(config)));
  m->validate();
  return m;
}

ModelPtr ChowModel::pbundle_over_curve(CurveBundleConfig config) { return make(std::move(config)); }
ModelPtr ChowModel::pbundle_over_surface(SurfaceBundleConfig config) { return make(std::move(config)); }
ModelPtr ChowModel::hyperquadric_over_curve(HyperquadricConfig config) { return make(std::move(config)); }

ModelKind ChowModel::kind() const {
  switch (config_.index()) {
    case 0: return ModelKind::PBundleOverCurve;
    case 1: return ModelKind::PBundleOverSurface;
    default: return ModelKind::HyperquadricOverCurve;
  }
}

void ChowModel::validate() const {
  if (auto s = std::get_if<SurfaceBundleConfig>(&config_)) {
    std::set<std::string> syms = s->table.symbols();
    for (const auto& [k, v] : s->c1F) syms.insert(k);
    for (const auto& [k, v] : s->kB) syms.insert(k);
    for (const auto& a : syms)
      for (const auto& b : syms)
        if (!s->table.find(a, b))
          throw Error(Errc::IncompletePairingTable, "missing pairing (" + a + "," + b + ")");
  }
  if (!ParamContext::is_valid_name(generator_name()))
    throw Error(Errc::InvalidArgument, "bad generator name '" + generator_name() + "'");
  if (auto d = concrete_dim(); d && *d < static_cast<long>(base_dim()) + 1)
    throw Error(Errc::InvalidArgument, "dimension too small for the model");
}

const PolyExpr& ChowModel::dim() const {
  return std::visit([](const auto& c) -> const PolyExpr& { return c.dim; }, config_);
}

std::optional<long> ChowModel::concrete_dim() const {
  const PolyExpr& n = dim();
  if (!n.is_constant()) return std::nullopt;
  Rational v = n.constant_value();
  if (!v.is_integer() || !v.numerator().fits_slong_p())
    throw Error(Errc::InvalidArgument, "dimension must be an integer");
  return v.numerator().get_si();
}

const std::string& ChowModel::generator_name() const {
  return std::visit([](const auto& c) -> const std::string& { return c.generator; }, config_);
}

PolyExpr ChowModel::xi_top() const {
  switch (kind()) {
    case ModelKind::PBundleOverCurve: {
      const auto& c = std::get<CurveBundleConfig>(config_);
      return c.xi_top ? *c.xi_top : c.deg_f;
    }
    case ModelKind::PBundleOverSurface: return std::get<SurfaceBundleConfig>(config_).xi_top;
    case ModelKind::HyperquadricOverCurve: return std::get<HyperquadricConfig>(config_).degree;
  }
  return {};
}

std::set<std::string> ChowModel::base_symbols() const {
  if (auto s = std::get_if<SurfaceBundleConfig>(&config_)) {
    std::set<std::string> syms = s->table.symbols();
    for (const auto& [k, v] : s->c1F) syms.insert(k);
    for (const auto& [k, v] : s->kB) syms.insert(k);
    return syms;
  }
  std::set<std::string> syms{"KB", "C1F"};
  if (auto c = std::get_if<CurveBundleConfig>(&config_))
    for (const auto& [k, v] : c->divisor_degrees) syms.insert(k);
  if (auto h = std::get_if<HyperquadricConfig>(&config_))
    for (const auto& [k, v] : h->divisor_degrees) syms.insert(k);
  return syms;
}

ChowClass ChowModel::generator() const { return ChowClass::term({1, 0, ""}, PolyExpr(1)); }

ChowClass ChowModel::fiber() const {
  return ChowClass::term({0, base_dim(), ""}, PolyExpr(1));
}

ChowClass ChowModel::pullback(std::string_view symbol) const {
  std::string sym(symbol);
  if (kind() == ModelKind::PBundleOverSurface) {
    if (!base_symbols().count(sym))
      throw Error(Errc::UnknownName, "base divisor '" + sym + "' is not in the pairing table");
    return ChowClass::term({0, 1, sym}, PolyExpr(1));
  }
  // On a curve a divisor is its degree times the fiber class.
  PolyExpr degree;
  const std::map<std::string, PolyExpr, std::less<>>* extra = nullptr;
  if (auto c = std::get_if<CurveBundleConfig>(&config_)) {
    extra = &c->divisor_degrees;
    if (sym == "KB") degree = PolyExpr(2) * c->genus - PolyExpr(2);
    if (sym == "C1F") degree = c->deg_f;
  } else {
    const auto& h = std::get<HyperquadricConfig>(config_);
    extra = &h.divisor_degrees;
    if (sym == "KB") degree = PolyExpr(2) * h.genus - PolyExpr(2);
    if (sym == "C1F") degree = h.e;
  }
  if (auto it = extra->find(sym); it != extra->end()) {
    degree = it->second;
  } else if (sym != "KB" && sym != "C1F") {
    throw Error(Errc::UnknownName, "base divisor '" + sym + "' has no declared degree");
  }
  return ChowClass::term({0, 1, ""}, degree);
}

ChowClass ChowModel::pullback(const BaseDivisor& divisor) const {
  ChowClass r;
  for (const auto& [sym, c] : divisor) r += c * pullback(sym);
  return r;
}

ModelPtr ChowModel::transformed(const std::function<PolyExpr(const PolyExpr&)>& f) const {
  Config c = config_;
  auto each = [&](auto& map) {
    for (auto& [k, v] : map) v = f(v);
  };
  std::visit(
      [&](auto& cfg) {
        using T = std::decay_t<decltype(cfg)>;
        cfg.dim = f(cfg.dim);
        if constexpr (std::is_same_v<T, CurveBundleConfig>) {
          cfg.genus = f(cfg.genus);
          cfg.deg_f = f(cfg.deg_f);
          if (cfg.xi_top) cfg.xi_top = f(*cfg.xi_top);
          each(cfg.divisor_degrees);
        } else if constexpr (std::is_same_v<T, SurfaceBundleConfig>) {
          cfg.table = cfg.table.transformed(f);
          each(cfg.c1F);
          each(cfg.kB);
          cfg.c2F = f(cfg.c2F);
          cfg.c2B = f(cfg.c2B);
          cfg.xi_top = f(cfg.xi_top);
        } else {
          cfg.genus = f(cfg.genus);
          cfg.degree = f(cfg.degree);
          cfg.e = f(cfg.e);
          cfg.fiber_degree = f(cfg.fiber_degree);
          each(cfg.divisor_degrees);
        }
      },
      c);
  return make(std::move(c));
}

std::string ChowModel::describe() const {
  std::ostringstream os;
  os << model_kind_name(kind()) << " n=" << dim().to_string(true) << " gen=" << generator_name();
  if (auto c = std::get_if<CurveBundleConfig>(&config_)) {
    os << " g=" << c->genus.to_string(true) << " degF=" << c->deg_f.to_string(true)
       << " xitop=" << xi_top().to_string(true);
    for (const auto& [k, v] : c->divisor_degrees) os << " deg." << k << "=" << v.to_string(true);
  } else if (auto s = std::get_if<SurfaceBundleConfig>(&config_)) {
    os << " c1F=" << render_coeff_sum(s->c1F) << " KB=" << render_coeff_sum(s->kB)
       << " c2F=" << s->c2F.to_string(true) << " c2B=" << s->c2B.to_string(true)
       << " xitop=" << s->xi_top.to_string(true);
    for (const auto& [k, v] : s->table.entries())
      os << " (" << k.first << "," << k.second << ")=" << v.to_string(true);
  } else {
    const auto& h = std::get<HyperquadricConfig>(config_);
    os << " g=" << h.genus.to_string(true) << " d=" << h.degree.to_string(true)
       << " e=" << h.e.to_string(true) << " fiber=" << h.fiber_degree.to_string(true);
    for (const auto& [k, v] : h.divisor_degrees) os << " deg." << k << "=" << v.to_string(true);
  }
  return os.str();
}

// ---- operations ----

ChowClass mul_class(const ChowClass& a, const ChowClass& b, const ChowModel& model) {
  const auto* surface = std::get_if<SurfaceBundleConfig>(&model.config());
  ChowClass r;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      unsigned base = ka.base_degree + kb.base_degree;
      if (base > model.base_dim()) continue;
      TermKey key{ka.xi_power + kb.xi_power, base, ""};
      PolyExpr c = ca * cb;
      if (surface && ka.base_degree == 1 && kb.base_degree == 1) {
        c *= surface->table.at(ka.symbol, kb.symbol);
      } else if (base == 1) {
        key.symbol = ka.base_degree == 1 ? ka.symbol : kb.symbol;
      }
      r += ChowClass::term(key, c);
    }
  }
  return r;
}

ChowClass pow_class(const ChowClass& a, unsigned k, const ChowModel& model) {
  ChowClass r = ChowClass::scalar(PolyExpr(1));
  for (unsigned i = 0; i < k; ++i) r = mul_class(r, a, model);
  return r;
}

PolyExpr top_intersect(const std::vector<ChowClass>& factors, const ChowModel& model) {
  ChowClass product = ChowClass::scalar(PolyExpr(1));
  unsigned k = 0;
  for (const auto& f : factors) {
    if (f.is_zero()) return PolyExpr();
    auto degs = f.degrees();
    if (degs.size() != 1)
      throw Error(Errc::InvalidArgument, "factor " + render_class(f, model) + " is not homogeneous");
    k += *degs.begin();
    product = mul_class(product, f, model);
  }
  if (auto n = model.concrete_dim(); n && static_cast<long>(k) > *n)
    throw Error(Errc::DegreeOverflow,
                "degree " + std::to_string(k) + " exceeds dimension " + std::to_string(*n));

  PolyExpr total;
  for (const auto& [key, c] : product.terms()) {
    PolyExpr value;
    switch (key.base_degree) {
      case 0:
        value = model.xi_top();
        break;
      case 1:
        if (const auto* s = std::get_if<SurfaceBundleConfig>(&model.config())) {
          value = s->table.pair(s->c1F, BaseDivisor{{key.symbol, PolyExpr(1)}});
        } else if (const auto* h = std::get_if<HyperquadricConfig>(&model.config())) {
          value = h->fiber_degree;
        } else {
          value = PolyExpr(1);
        }
        break;
      default:
        value = PolyExpr(1);
        break;
    }
    total += c * value;
  }
  return total;
}

ChowClass canonical_class(const ChowModel& model) {
  const PolyExpr& n = model.dim();
  ChowClass xi = model.generator();
  switch (model.kind()) {
    case ModelKind::PBundleOverCurve: {
      const auto& c = std::get<CurveBundleConfig>(model.config());
      return -n * xi + (PolyExpr(2) * c.genus - PolyExpr(2) + c.deg_f) * model.fiber();
    }
    case ModelKind::PBundleOverSurface: {
      const auto& s = std::get<SurfaceBundleConfig>(model.config());
      return -(n - PolyExpr(1)) * xi + model.pullback(s.kB) + model.pullback(s.c1F);
    }
    case ModelKind::HyperquadricOverCurve: {
      const auto& h = std::get<HyperquadricConfig>(model.config());
      return -(n - PolyExpr(1)) * xi +
             (h.degree + PolyExpr(2) * h.genus - PolyExpr(2) - h.e) * model.fiber();
    }
  }
  return {};
}

ChowClass c2_tangent(const ChowModel& model) {
  const PolyExpr& n = model.dim();
  ChowClass xi = model.generator();
  ChowClass xi2 = mul_class(xi, xi, model);
  switch (model.kind()) {
    case ModelKind::PBundleOverCurve: {
      // degree-2 part of c(F^* (x) O(xi)) c(T_B), rank F = n
      const auto& c = std::get<CurveBundleConfig>(model.config());
      PolyExpr k_b = PolyExpr(2) * c.genus - PolyExpr(2);
      ChowClass xif = mul_class(xi, model.fiber(), model);
      return binom_poly(n, 2) * xi2 + (-(n - PolyExpr(1)) * c.deg_f - n * k_b) * xif;
    }
    case ModelKind::PBundleOverSurface: {
      const auto& s = std::get<SurfaceBundleConfig>(model.config());
      PolyExpr m = n - PolyExpr(1);
      ChowClass pt = model.fiber();
      return binom_poly(m, 2) * xi2 -
             (m - PolyExpr(1)) * mul_class(xi, model.pullback(s.c1F), model) + s.c2F * pt -
             m * mul_class(xi, model.pullback(s.kB), model) + s.table.pair(s.kB, s.c1F) * pt +
             s.c2B * pt;
    }
    case ModelKind::HyperquadricOverCurve: {
      // X is a divisor of class 2xi + (d - 2e)F in the ambient P(F), rank F = n + 1.
      const auto& h = std::get<HyperquadricConfig>(model.config());
      ChowClass f = model.fiber();
      PolyExpr m = n + PolyExpr(1);
      PolyExpr k_b = PolyExpr(2) * h.genus - PolyExpr(2);
      ChowClass c1p = m * xi + (-k_b - h.e) * f;
      ChowClass c2p = binom_poly(m, 2) * xi2 + (-(m - PolyExpr(1)) * h.e - m * k_b) * mul_class(xi, f, model);
      ChowClass normal = PolyExpr(2) * xi + (h.degree - PolyExpr(2) * h.e) * f;
      return c2p - mul_class(c1p, normal, model) + mul_class(normal, normal, model);
    }
  }
  return {};
}

ConsistencyReport relation_consistency_check(const ChowModel& model) {
  ConsistencyReport rep;
  auto compare = [&](const std::string& label, const PolyExpr& lhs, const PolyExpr& rhs) {
    bool ok = lhs == rhs;
    rep.ok = rep.ok && ok;
    rep.checks.push_back(label + ": " + lhs.to_string() + (ok ? " == " : " != ") + rhs.to_string());
  };
  const PolyExpr top = top_intersect({}, model);
  switch (model.kind()) {
    case ModelKind::PBundleOverCurve: {
      // xi^n = c1(F) xi^{n-1}, and xi^{n-1} f = 1
      const auto& c = std::get<CurveBundleConfig>(model.config());
      compare("xi^n via the Grothendieck relation", top,
              top_intersect({model.pullback("C1F")}, model));
      compare("xi^n against deg F", top, c.deg_f);
      break;
    }
    case ModelKind::PBundleOverSurface: {
      // xi^n = c1(F) xi^{n-1} - c2(F) xi^{n-2}
      const auto& s = std::get<SurfaceBundleConfig>(model.config());
      PolyExpr route = top_intersect({model.pullback(s.c1F)}, model) -
                       top_intersect({s.c2F * model.fiber()}, model);
      compare("xi^n via the Grothendieck relation", top, route);
      compare("(c1F.c1F) - c2F", route, s.table.pair(s.c1F, s.c1F) - s.c2F);
      for (const auto& a : model.base_symbols())
        for (const auto& b : model.base_symbols())
          if (a < b && !(s.table.at(a, b) == s.table.at(b, a)))
            compare("symmetry (" + a + "," + b + ")", s.table.at(a, b), s.table.at(b, a));
      break;
    }
    case ModelKind::HyperquadricOverCurve: {
      // ambient route: X = 2 xi + (d - 2e) F in P(F), xi^{n+1} = e, xi^n F = 1
      const auto& h = std::get<HyperquadricConfig>(model.config());
      PolyExpr ambient_top = PolyExpr(2) * h.e + (h.degree - PolyExpr(2) * h.e);
      compare("H^n via the ambient projective bundle", top, ambient_top);
      PolyExpr fiber = top_intersect({model.fiber()}, model);
      compare("H^(n-1) F via the ambient projective bundle", fiber, PolyExpr(2));
      break;
    }
  }
  return rep;
}

std::string render_class(const ChowClass& c, const ChowModel& model) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [key, coeff] : c.terms()) {
    std::string atom;
    if (key.xi_power == 1) atom = model.generator_name();
    if (key.xi_power > 1) atom = model.generator_name() + "^" + std::to_string(key.xi_power);
    std::string base;
    if (key.base_degree == 1)
      base = model.kind() == ModelKind::PBundleOverSurface ? "pi*(" + key.symbol + ")"
                                                           : model.fiber_name();
    if (key.base_degree == 2) base = model.fiber_name();
    if (!base.empty()) atom = atom.empty() ? base : atom + "*" + base;

    std::string term;
    if (atom.empty()) {
      term = coeff.size() > 1 ? "(" + coeff.to_string(true) + ")" : coeff.to_string(true);
    } else if (coeff.size() == 1) {
      const auto& [m, v] = *coeff.terms().begin();
      if (m.is_one() && v.is_one()) {
        term = atom;
      } else if (m.is_one() && v == Rational(-1)) {
        term = "-" + atom;
      } else {
        term = coeff.to_string(true) + "*" + atom;
      }
    } else {
      std::string s = coeff.to_string(true);
      term = s[0] == '-' ? "-(" + (-coeff).to_string(true) + ")*" + atom : "(" + s + ")*" + atom;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace chowcalc
