#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "chowcalc/poly.hpp"

namespace chowcalc {

enum class ModelKind { PBundleOverCurve, PBundleOverSurface, HyperquadricOverCurve };

std::string_view model_kind_name(ModelKind kind);

// Integer combination of base divisor symbols, e.g. c1*R or KB.
using BaseDivisor = std::map<std::string, PolyExpr, std::less<>>;

// Symmetric intersection numbers of base divisor symbols on a surface.
class PairingTable {
 public:
  using Key = std::pair<std::string, std::string>;

  void set(const std::string& a, const std::string& b, const PolyExpr& value);
  const PolyExpr* find(std::string_view a, std::string_view b) const;
  PolyExpr at(std::string_view a, std::string_view b) const;
  PolyExpr pair(const BaseDivisor& x, const BaseDivisor& y) const;
  std::set<std::string> symbols() const;
  const std::map<Key, PolyExpr>& entries() const { return entries_; }
  PairingTable transformed(const std::function<PolyExpr(const PolyExpr&)>& f) const;
  friend bool operator==(const PairingTable&, const PairingTable&) = default;

 private:
  std::map<Key, PolyExpr> entries_;
};

// KB, C1F, M1, M2 with the reserved parameter names (k2, kc1, ..., M2^2 = 0).
PairingTable standard_surface_table();

// xi^xi_power times a base class of degree base_degree; symbol names the base divisor
// for base_degree 1 on a surface, and is empty otherwise.
struct TermKey {
  unsigned xi_power = 0;
  unsigned base_degree = 0;
  std::string symbol;
  unsigned degree() const { return xi_power + base_degree; }
  friend bool operator==(const TermKey&, const TermKey&) = default;
};

// Higher generator powers first, then base degree, then symbol.
struct TermKeyOrder {
  bool operator()(const TermKey& a, const TermKey& b) const;
};

class ChowClass {
 public:
  using TermMap = std::map<TermKey, PolyExpr, TermKeyOrder>;

  ChowClass() = default;
  static ChowClass term(const TermKey& key, const PolyExpr& coeff);
  static ChowClass scalar(const PolyExpr& coeff) { return term({0, 0, ""}, coeff); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::set<unsigned> degrees() const;
  bool is_homogeneous() const { return degrees().size() <= 1; }
  ChowClass part_of_degree(unsigned k) const;
  PolyExpr coefficient(const TermKey& key) const;
  ChowClass transformed(const std::function<PolyExpr(const PolyExpr&)>& f) const;

  ChowClass operator-() const;
  ChowClass& operator+=(const ChowClass& o);
  ChowClass& operator-=(const ChowClass& o);
  ChowClass& operator*=(const PolyExpr& c);
  friend ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }
  friend ChowClass operator-(ChowClass a, const ChowClass& b) { return a -= b; }
  friend ChowClass operator*(const PolyExpr& c, ChowClass a) { return a *= c; }
  friend bool operator==(const ChowClass&, const ChowClass&) = default;

 private:
  void add_term(const TermKey& key, const PolyExpr& c);
  TermMap terms_;
};

// P(F) over a curve of genus g, rank F = n, deg F = degF; xi^n = xi_top, xi^{n-1} f = 1.
struct CurveBundleConfig {
  PolyExpr dim = PolyExpr::var("n");
  PolyExpr genus = PolyExpr::var("g");
  PolyExpr deg_f = PolyExpr::var("d");
  std::optional<PolyExpr> xi_top;  // defaults to deg_f
  std::map<std::string, PolyExpr, std::less<>> divisor_degrees;  // KB and C1F are implicit
  std::string generator = "xi";
};

// P(F) over a surface, rank F = n - 1; xi^{n-2} pt = 1, xi^{n-1} pi*N = (c1F.N).
struct SurfaceBundleConfig {
  PolyExpr dim = PolyExpr::var("n");
  PairingTable table = standard_surface_table();
  BaseDivisor c1F{{"C1F", PolyExpr(1)}};
  BaseDivisor kB{{"KB", PolyExpr(1)}};
  PolyExpr c2F = PolyExpr::var("c2");
  PolyExpr c2B = PolyExpr::var("c2B");
  PolyExpr xi_top = PolyExpr::var("c12") - PolyExpr::var("c2");
  std::string generator = "xi";
};

// Relative quadric X in P(F) over a curve, rank F = n + 1, deg F = e, H^n = d, H^{n-1} F = 2.
struct HyperquadricConfig {
  PolyExpr dim = PolyExpr::var("n");
  PolyExpr genus = PolyExpr::var("g");
  PolyExpr degree = PolyExpr::var("d");
  PolyExpr e = PolyExpr::var("e");
  PolyExpr fiber_degree = PolyExpr(2);
  std::map<std::string, PolyExpr, std::less<>> divisor_degrees;
  std::string generator = "H";
};

class ChowModel;
using ModelPtr = std::shared_ptr<const ChowModel>;

class ChowModel {
 public:
  using Config = std::variant<CurveBundleConfig, SurfaceBundleConfig, HyperquadricConfig>;

  static ModelPtr pbundle_over_curve(CurveBundleConfig config);
  static ModelPtr pbundle_over_surface(SurfaceBundleConfig config);
  static ModelPtr hyperquadric_over_curve(HyperquadricConfig config);
  static ModelPtr make(Config config);

  ModelKind kind() const;
  const Config& config() const { return config_; }
  unsigned base_dim() const { return kind() == ModelKind::PBundleOverSurface ? 2 : 1; }
  const PolyExpr& dim() const;
  std::optional<long> concrete_dim() const;
  const std::string& generator_name() const;
  // Name of the fiber class: pullback of a point of the base.
  std::string fiber_name() const { return kind() == ModelKind::HyperquadricOverCurve ? "F" : "f"; }
  PolyExpr xi_top() const;
  std::set<std::string> base_symbols() const;

  ChowClass generator() const;
  ChowClass fiber() const;
  ChowClass pullback(std::string_view symbol) const;
  ChowClass pullback(const BaseDivisor& divisor) const;

  ModelPtr transformed(const std::function<PolyExpr(const PolyExpr&)>& f) const;
  std::string describe() const;
  friend bool operator==(const ChowModel& a, const ChowModel& b) { return a.describe() == b.describe(); }

 private:
  explicit ChowModel(Config config) : config_(std::move(config)) {}
  void validate() const;
  Config config_;
};

ChowClass mul_class(const ChowClass& a, const ChowClass& b, const ChowModel& model);
ChowClass pow_class(const ChowClass& a, unsigned k, const ChowModel& model);
// Degree of the product of the factors against the generator power filling the dimension.
PolyExpr top_intersect(const std::vector<ChowClass>& factors, const ChowModel& model);
ChowClass canonical_class(const ChowModel& model);
ChowClass c2_tangent(const ChowModel& model);

struct ConsistencyReport {
  bool ok = true;
  std::vector<std::string> checks;  // one line per route comparison
};
ConsistencyReport relation_consistency_check(const ChowModel& model);

std::string render_class(const ChowClass& c, const ChowModel& model);

}  // namespace chowcalc
