#pragma once

#include <optional>

#include "chowcalc/chern.hpp"

namespace chowcalc {

// A bundle E of rank r on X with polarization H (the model generator). K_X and c2(X)
// default to the model's canonical class and second Chern class.
struct UlrichContext {
  FormalBundle bundle;
  std::optional<ChowClass> kx;
  std::optional<ChowClass> c2x;

  const ChowModel& model() const { return *bundle.ambient(); }
  ChowClass KX() const { return kx ? *kx : canonical_class(model()); }
  ChowClass c2X() const { return c2x ? *c2x : c2_tangent(model()); }
  ChowClass H() const { return model().generator(); }
  const PolyExpr& rank() const { return bundle.rank(); }
};

// Each residual is zero for an Ulrich bundle; all are evaluated against H^{n-k}.
PolyExpr residual_c1(const UlrichContext& ctx);
PolyExpr residual_c2(const UlrichContext& ctx);
PolyExpr residual_c3(const UlrichContext& ctx);

// c2 of a codimension-i linear section, pushed forward to X; only i = 3 is supported.
ChowClass c2_linear_section(const ChowClass& c2x, const ChowClass& kx, unsigned i,
                            const ChowModel& model);

// Euler characteristic of a bundle on a surface: rank chi(O) + c1(c1 - K)/2 - c2,
// with chi(O) = (K^2 + c2(B))/12.
PolyExpr rr_surface_bundle(const PolyExpr& rank, const BaseDivisor& c1, const PolyExpr& c2,
                           const PairingTable& table, const BaseDivisor& kB, const PolyExpr& c2B);
// Same, for a bundle on a surface-bundle model whose classes are pulled back from the base.
PolyExpr rr_surface_bundle(const FormalBundle& g);

// True when a nonzero polynomial in m of degree < required must vanish at `required`
// distinct points, i.e. the vanishing count is impossible.
bool chi_root_count(const PolyExpr& chi, std::string_view m, unsigned long required);

}  // namespace chowcalc
