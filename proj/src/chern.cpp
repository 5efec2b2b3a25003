#include "chowcalc/chern.hpp"

#include "chowcalc/error.hpp"

namespace chowcalc {

FormalBundle::FormalBundle(ModelPtr ambient, PolyExpr rank, std::vector<ChowClass> chern)
    : ambient_(std::move(ambient)), rank_(std::move(rank)) {
  if (!ambient_) throw Error(Errc::InvalidArgument, "bundle without an ambient model");
  for (std::size_t i = 0; i < chern.size(); ++i) {
    auto degs = chern[i].degrees();
    if (!degs.empty() && (degs.size() != 1 || *degs.begin() != i + 1))
      throw Error(Errc::InvalidArgument, "c" + std::to_string(i + 1) + " = " +
                                             render_class(chern[i], *ambient_) +
                                             " is not of degree " + std::to_string(i + 1));
    if (i < kMaxChern) chern_[i] = std::move(chern[i]);
  }
}

FormalBundle FormalBundle::line(ModelPtr ambient, const ChowClass& l) {
  return FormalBundle(std::move(ambient), PolyExpr(1), {l});
}

FormalBundle FormalBundle::split_sum(ModelPtr ambient, const ChowClass& l, const PolyExpr& count) {
  std::vector<ChowClass> cs;
  ChowClass power = ChowClass::scalar(PolyExpr(1));
  for (unsigned k = 1; k <= kMaxChern; ++k) {
    power = mul_class(power, l, *ambient);
    cs.push_back(binom_poly(count, k) * power);
  }
  return FormalBundle(std::move(ambient), count, std::move(cs));
}

ChowClass FormalBundle::c(unsigned k) const {
  if (k == 0) return ChowClass::scalar(PolyExpr(1));
  if (k > kMaxChern) return {};
  return chern_[k - 1];
}

FormalBundle FormalBundle::transformed(ModelPtr ambient,
                                       const std::function<PolyExpr(const PolyExpr&)>& f) const {
  std::vector<ChowClass> cs;
  for (const auto& c : chern_) cs.push_back(c.transformed(f));
  return FormalBundle(std::move(ambient), f(rank_), std::move(cs));
}

static void require_same_model(const FormalBundle& a, const FormalBundle& b) {
  if (a.ambient() != b.ambient() && !(*a.ambient() == *b.ambient()))
    throw Error(Errc::ModelMismatch, "bundles live on different models");
}

FormalBundle whitney(const FormalBundle& a, const FormalBundle& b) {
  require_same_model(a, b);
  const ChowModel& m = *a.ambient();
  std::vector<ChowClass> cs;
  for (unsigned k = 1; k <= kMaxChern; ++k) {
    ChowClass sum;
    for (unsigned i = 0; i <= k; ++i) sum += mul_class(a.c(i), b.c(k - i), m);
    cs.push_back(sum);
  }
  return FormalBundle(a.ambient(), a.rank() + b.rank(), std::move(cs));
}

FormalBundle dual(const FormalBundle& b) {
  std::vector<ChowClass> cs;
  for (unsigned k = 1; k <= kMaxChern; ++k) cs.push_back(k % 2 ? -b.c(k) : b.c(k));
  return FormalBundle(b.ambient(), b.rank(), std::move(cs));
}

FormalBundle twist_line(const FormalBundle& b, const ChowClass& l) {
  auto degs = l.degrees();
  if (!degs.empty() && (degs.size() != 1 || *degs.begin() != 1))
    throw Error(Errc::InvalidArgument, "twisting class must be a divisor class");
  const ChowModel& m = *b.ambient();
  std::vector<ChowClass> lp{ChowClass::scalar(PolyExpr(1))};
  for (unsigned k = 1; k <= kMaxChern; ++k) lp.push_back(mul_class(lp.back(), l, m));
  std::vector<ChowClass> cs;
  // c_k(E (x) L) = sum_i C(rank - i, k - i) c_i(E) L^{k-i}
  for (unsigned k = 1; k <= kMaxChern; ++k) {
    ChowClass sum;
    for (unsigned i = 0; i <= k; ++i) {
      PolyExpr coeff = binom_poly(b.rank() - PolyExpr(static_cast<long>(i)), k - i);
      sum += coeff * mul_class(b.c(i), lp[k - i], m);
    }
    cs.push_back(sum);
  }
  return FormalBundle(b.ambient(), b.rank(), std::move(cs));
}

ChowClass schur_s22(const FormalBundle& b) {
  const ChowModel& m = *b.ambient();
  return mul_class(b.c(2), b.c(2), m) - mul_class(b.c(1), b.c(3), m);
}

ChowClass porteous_codim2(const FormalBundle& b) { return schur_s22(b); }

DegeneracyPair porteous_codim3(const FormalBundle& b) {
  const ChowModel& m = *b.ambient();
  return {mul_class(b.c(3), b.c(3), m), mul_class(b.c(2), b.c(4), m)};
}

unsigned numerical_dimension(const ChowClass& det, const ChowModel& model, const Assignment& at) {
  long n;
  if (auto cn = model.concrete_dim()) {
    n = *cn;
  } else {
    Rational v = eval_at(model.dim(), at);
    if (!v.is_integer()) throw Error(Errc::InvalidArgument, "dimension must be an integer");
    n = v.numerator().get_si();
  }
  ChowClass power = ChowClass::scalar(PolyExpr(1));
  std::vector<ChowClass> powers{power};
  for (long k = 1; k <= n; ++k) powers.push_back(mul_class(powers.back(), det, model));
  for (long k = n; k >= 1; --k) {
    ChowClass pad = pow_class(model.generator(), static_cast<unsigned>(n - k), model);
    PolyExpr value = top_intersect({powers[k], pad}, model);
    if (!eval_at(value, at).is_zero()) return static_cast<unsigned>(k);
  }
  return 0;
}

}  // namespace chowcalc
