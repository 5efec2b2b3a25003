#include "chowcalc/ulrich.hpp"

#include "chowcalc/error.hpp"

namespace chowcalc {

namespace {

PolyExpr q(long num, long den = 1) { return PolyExpr(Rational(Integer(num), Integer(den))); }

}  // namespace

PolyExpr residual_c1(const UlrichContext& ctx) {
  const ChowModel& m = ctx.model();
  const PolyExpr& n = m.dim();
  ChowClass ample = ctx.KX() + (n + q(1)) * ctx.H();
  return top_intersect({ctx.bundle.c(1)}, m) - ctx.rank() * q(1, 2) * top_intersect({ample}, m);
}

PolyExpr residual_c2(const UlrichContext& ctx) {
  const ChowModel& m = ctx.model();
  const PolyExpr& n = m.dim();
  ChowClass c1 = ctx.bundle.c(1), kx = ctx.KX(), h = ctx.H();
  PolyExpr expected =
      q(1, 2) * (top_intersect({c1, c1}, m) - top_intersect({c1, kx}, m)) +
      ctx.rank() * q(1, 12) *
          (top_intersect({kx, kx}, m) + top_intersect({ctx.c2X()}, m) -
           (q(3) * n * n + q(5) * n + q(2)) * q(1, 2) * top_intersect({h, h}, m));
  return top_intersect({ctx.bundle.c(2)}, m) - expected;
}

PolyExpr residual_c3(const UlrichContext& ctx) {
  const ChowModel& m = ctx.model();
  const PolyExpr& n = m.dim();
  ChowClass c1 = ctx.bundle.c(1), c2 = ctx.bundle.c(2), kx = ctx.KX(), c2x = ctx.c2X();
  ChowClass c1sq = mul_class(c1, c1, m);
  ChowClass kk = mul_class(kx, kx, m);
  PolyExpr expected =
      top_intersect({c1, c2}, m) - q(1, 3) * top_intersect({c1sq, c1}, m) +
      q(1, 2) * top_intersect({c1sq - q(2) * c2, kx}, m) -
      q(1, 6) * top_intersect({c1, kk + c2x}, m) +
      ctx.rank() * q(1, 12) * top_intersect({kx, c2x}, m);
  PolyExpr deg = top_intersect({}, m);
  PolyExpr tail = ctx.rank() * n * (n + q(1)).pow(2) * deg * q(1, 24);
  return top_intersect({ctx.bundle.c(3)}, m) - expected - tail;
}

ChowClass c2_linear_section(const ChowClass& c2x, const ChowClass& kx, unsigned i,
                            const ChowModel& model) {
  if (i != 3)
    throw Error(Errc::UnsupportedSection, "only codimension-3 sections are supported, got " +
                                              std::to_string(i));
  const PolyExpr& n = model.dim();
  ChowClass h = model.generator();
  return c2x + (n - q(3)) * mul_class(kx, h, model) +
         (n - q(2)) * (n - q(3)) * q(1, 2) * mul_class(h, h, model);
}

PolyExpr rr_surface_bundle(const PolyExpr& rank, const BaseDivisor& c1, const PolyExpr& c2,
                           const PairingTable& table, const BaseDivisor& kB, const PolyExpr& c2B) {
  PolyExpr chi_o = (table.pair(kB, kB) + c2B) * q(1, 12);
  return rank * chi_o + q(1, 2) * (table.pair(c1, c1) - table.pair(c1, kB)) - c2;
}

PolyExpr rr_surface_bundle(const FormalBundle& g) {
  const auto* s = std::get_if<SurfaceBundleConfig>(&g.ambient()->config());
  if (!s) throw Error(Errc::InvalidArgument, "rr_surface_bundle needs a surface-bundle model");
  BaseDivisor c1;
  const ChowClass g1 = g.c(1), g2 = g.c(2);
  for (const auto& [key, coeff] : g1.terms()) {
    if (key.xi_power != 0) throw Error(Errc::InvalidArgument, "c1 is not pulled back from the base");
    c1[key.symbol] = coeff;
  }
  PolyExpr c2;
  for (const auto& [key, coeff] : g2.terms()) {
    if (key.xi_power != 0) throw Error(Errc::InvalidArgument, "c2 is not pulled back from the base");
    c2 += coeff;
  }
  return rr_surface_bundle(g.rank(), c1, c2, s->table, s->kB, s->c2B);
}

bool chi_root_count(const PolyExpr& chi, std::string_view m, unsigned long required) {
  if (chi.is_zero()) throw Error(Errc::ZeroPolynomial, "chi is identically zero");
  return chi.degree_in(m) < required;
}

}  // namespace chowcalc
