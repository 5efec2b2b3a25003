#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace chowcalc;
using support::C;
using support::errc_of;
using support::P;

namespace {

ModelPtr p4() {
  CurveBundleConfig c;
  c.dim = PolyExpr(4);
  c.genus = PolyExpr(0);
  c.deg_f = PolyExpr(1);
  c.generator = "h";
  return ChowModel::pbundle_over_curve(c);
}

FormalBundle bundle(const ModelPtr& m, const char* rank, std::vector<const char*> cs) {
  std::vector<ChowClass> chern;
  for (const char* c : cs) chern.push_back(C(c, *m));
  return FormalBundle(m, P(rank), chern);
}

FormalBundle esbs_e() {
  auto m = p4();
  return twist_line(bundle(m, "2", {"0", "h^2"}), C("6*h", *m));
}

}  // namespace

TEST_CASE("whitney") {
  auto m = p4();
  FormalBundle e = esbs_e();
  FormalBundle ee = whitney(e, e);
  CHECK(ee.rank() == P("4"));
  CHECK(ee.c(1) == C("24*h", *m));
  CHECK(ee.c(2) == C("218*h^2", *m));
  CHECK(ee.c(3) == C("888*h^3", *m));
  FormalBundle trivial(m, P("s"), {});
  FormalBundle et = whitney(e, trivial);
  CHECK(et.rank() == P("2 + s"));
  for (unsigned k = 1; k <= kMaxChern; ++k) CHECK(et.c(k) == e.c(k));
  auto c = ChowModel::pbundle_over_curve({});
  FormalBundle sum = FormalBundle::split_sum(c, C("xi - f", *c), P("r"));
  CHECK(sum.c(2) == P("r*(r-1)/2") * pow_class(C("xi - f", *c), 2, *c));
  CHECK(sum.c(3) == binom_poly(P("r"), 3) * pow_class(C("xi - f", *c), 3, *c));
  auto other = ChowModel::hyperquadric_over_curve({});
  CHECK(errc_of([&] { whitney(e, FormalBundle(other, P("1"), {})); }) == Errc::ModelMismatch);
}

TEST_CASE("dual") {
  auto c = ChowModel::pbundle_over_curve({});
  FormalBundle e = bundle(c, "r", {"r*(xi - f)", "a*xi^2", "b*xi^2*f"});
  CHECK(dual(dual(e)) == e);
  CHECK(dual(FormalBundle::line(c, C("xi", *c))).c(1) == C("-xi", *c));
  CHECK(dual(e).c(1) == C("-r*(xi - f)", *c));
  CHECK(dual(e).c(3) == C("-b*xi^2*f", *c));
}

TEST_CASE("twist_line") {
  CurveBundleConfig g0;
  g0.genus = PolyExpr(0);
  auto c = ChowModel::pbundle_over_curve(g0);
  FormalBundle ed = bundle(c, "r", {"-r*(xi - f)"});
  ChowClass l = canonical_class(*c) + P("n + 1") * C("xi", *c);
  CHECK(l == C("xi + (d - 2)*f", *c));
  CHECK(twist_line(ed, l).c(1) == C("r*(d - 1)*f", *c));
  FormalBundle e = esbs_e();
  auto m = p4();
  CHECK(e.c(1) == C("12*h", *m));
  CHECK(e.c(2) == C("37*h^2", *m));
  CHECK(e.c(3).is_zero());
  CHECK(twist_line(e, ChowClass()) == e);
}

TEST_CASE("degeneracy classes") {
  auto m = p4();
  FormalBundle e = esbs_e();
  CHECK(porteous_codim2(e) == C("1369*h^4", *m));
  CHECK(schur_s22(whitney(e, e)) == P("218^2 - 24*888") * C("h^4", *m));
  CHECK(schur_s22(bundle(m, "3", {"h"})).is_zero());
  FormalBundle no3 = bundle(m, "3", {"h", "2*h^2"});
  CHECK(porteous_codim2(no3) == mul_class(no3.c(2), no3.c(2), *m));
  CHECK(porteous_codim3(no3).difference().is_zero());
  FormalBundle c2zero = bundle(m, "4", {"h", "0", "3*h^3", "h^4"});
  CHECK(porteous_codim3(c2zero).difference() == porteous_codim3(c2zero).c3_squared);
}

TEST_CASE("numerical_dimension") {
  CurveBundleConfig c4;
  c4.dim = PolyExpr(4);
  auto c = ChowModel::pbundle_over_curve(c4);
  CHECK(numerical_dimension(C("r*(xi - f)", *c), *c, {{"r", 2}, {"d", 4}}) == 3);
  CHECK(numerical_dimension(C("xi", *c), *c, {{"d", 3}}) == 4);
  CHECK(numerical_dimension(C("f", *c), *c, {{"d", 3}}) == 1);
  CHECK(numerical_dimension(ChowClass(), *c, {{"d", 3}}) == 0);
  CHECK(errc_of([&] { numerical_dimension(C("a*xi", *c), *c, {{"d", 3}}); }) ==
        Errc::MissingAssignment);
}
