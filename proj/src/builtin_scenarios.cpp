#include <algorithm>
#include <map>

#include "chowcalc/error.hpp"
#include "chowcalc/scenario.hpp"

namespace chowcalc {

namespace {

// P^{n-1}-bundle over P^1 with c1(E) proportional to xi - f.
constexpr std::string_view kPfCurve = R"scn(# Ulrich bundle on a scroll over P^1 with det E = a(xi - f).
model pbundle_curve n=4 g=0 degF=d
bundle E rank=r c1=a*(xi - f)
step residual_c1 E as res1
step assert_equals res1 exact "(a - r)*(d - 1)"
step divide res1 by d - 1 because "d > 1 since xi is very ample"
step solve res1 for a
step assert_equals a_sol exact "r"
step specialize a := a_sol
step dual E as Ed
step twist Ed by KX + 5*xi as Edt
step assert_class c1(Edt) = r*(d - 1)*f
bundle S rank=r split=xi - f
step assert_class c1(S) = c1(E)
step top c2(S)^2 as c2sq
step assert_equals c2sq exact "binom(r,2)^2*(d - 4)"
step divide c2sq by binom(r,2)^2 because "r >= 2"
step solve c2sq for d
step assert_equals d_sol exact "4"
step numdim c1(S) at d=4,r=2 expect 3
final "d = 4"
)scn";

// Hyperquadric fibration over a curve with c2(E) = (H + m1 F) m2 F.
constexpr std::string_view kQf = R"scn(# Ulrich bundle on a hyperquadric fibration over a curve.
model hyperquadric_curve
bundle E rank=r c1=H + m1*F c2=(H + m1*F)*m2*F
step assert_class c2(E) = m2*H*F
step consistency
step assert_class c2X = (n^2 - 3*n + 4)/2*H^2 + (-2 + 3*d - 4*e + 2*g + 2*n - d*n + e*n - 2*g*n)*H*F
step top c1(E)^2 as c1sq
step assert_equals c1sq exact "d + 4*m1"
step top c1(E)*KX as c1k
step assert_equals c1k exact "-(d + 2*m1)*(n - 1) + 2*(d + 2*g - 2 - e)"
step top KX^2 as ksq
step assert_equals ksq exact "(n - 1)^2*d - 4*(d + 2*g - 2 - e)*(n - 1)"
step top c2X as c2x
step assert_equals c2x exact "d*(n^2 - 3*n + 4)/2 - 4 + 6*d - 8*e + 4*g + 4*n - 2*d*n + 2*e*n - 4*g*n"
step residual_c1 E as res1
step solve res1 for m1
step assert_equals m1_sol exact "(r*(2*d + 2*g - 2 - e) - d)/2"
step residual_c2 E as res2
step subst m1 := m1_sol in res2
step solve res2 for m2
step assert_equals m2_sol exact "(4 - 3*d + 2*e - 4*g - 4*r + 4*d*r - 3*e*r + 4*g*r)/4"
step declare dm = m1 - m2 - g + 1 because "H^i(M) = 0 for all i, so deg M = g - 1"
step subst m1 := m1_sol in dm
step subst m2 := m2_sol in dm
step assert_equals dm primitive "d + e*(r - 2)"
step diophantine dm vars d,e,r box 2..40,0..40,2..40 expect empty
final "d + e*(r-2) = 0, impossible for d >= 2, e >= 0, r >= 2"
)scn";

// P^3-bundle over P^2 with det E = a(xi - R) and c2(E)^2 = 0.
constexpr std::string_view kPf2 = R"scn(# Ulrich bundle on a linear P^3-bundle over the plane.
model pbundle_surface n=5 c1F=c1*R KB=-3*R c2F=c2 c2B=3 xitop=c1^2 - c2
pairing (R,R) = 1
param beta gamma
step consistency
step assert_class KX = -4*xi + (c1 - 3)*R
class C = alpha*xi^2 + beta*xi*R + gamma*f
step top C*C*R as eq2
step assert_equals eq2 exact "alpha*(alpha*c1 + 2*beta)"
step top C*C*xi as eq3
poly eq3r = eq3 - c1*eq2
step assert_equals eq3r exact "beta^2 + 2*alpha*gamma - c2*alpha^2"
step divide eq2 by alpha because "alpha = 0 gives c2(E) = gamma*f with gamma = c2(E).P = 0"
step solve eq2 for beta
step subst beta := beta_sol in eq3r
step divide eq3r by alpha because "alpha != 0"
step solve eq3r for gamma
step assert_equals gamma_sol exact "alpha*(4*c2 - c1^2)/8"
step declare onP = alpha + beta_sol + gamma_sol because "c2(E) restricted to P vanishes; xi^2.P = xi.R.P = f.P = 1"
step assert_equals onP exact "alpha*(8 - 4*c1 + 4*c2 - c1^2)/8"
step divide onP by alpha because "alpha != 0"
step solve onP for c2
step assert_equals c2_sol exact "c1^2/4 + c1 - 2"
step specialize beta := beta_sol
step specialize gamma := gamma_sol
step specialize c2 := c2_sol
step assert_class C = alpha/2*(2*xi^2 - c1*xi*R + (c1 - 2)*f)
bundle E rank=r c1=a*(xi - R) c2=C c3=0
step top c1(E)^4*xi as eq7
step assert_equals eq7 exact "a^4*(c1 - 4)*(3*c1 - 8)/4"
step assert_class c2X = 6*xi^2 + (12 - 3*c1)*xi*R + (c1^2 - 8*c1 + 4)/4*f
step top c1(E)*xi^4 as t1
step assert_equals t1 exact "a*(3*c1^2 - 8*c1 + 8)/4"
step top r/2*(KX + 6*xi)*xi^4 as t2
step assert_equals t2 exact "r*(5*c1^2 - 10*c1 + 8)/4"
step top c1(E)^2*xi^3 as t3
step assert_equals t3 exact "3*a^2*(c1 - 2)^2/4"
step top c1(E)*KX*xi^3 as t4
step assert_equals t4 exact "a*(-2*c1^2 + 4*c1 - 5)"
step top KX^2*xi^3 as t5
step assert_equals t5 exact "5*c1^2 + 2*c1 + 41"
step top c2X*xi^3 as t6
step assert_equals t6 exact "(7*c1^2 + 16*c1 + 52)/4"
step top c2(E)*xi^3 as t7
step assert_equals t7 exact "alpha*(c1^2 - 2*c1 + 4)/4"
step top c1(E)*c2(E)*xi^2 as t8
step assert_equals t8 exact "a*alpha*(c1 - 2)^2/4"
step top c1(E)^3*xi^2 as t9
step assert_equals t9 exact "a^3*(c1 - 2)*(3*c1 - 10)/4"
step top c1(E)^2*KX*xi^2 as t10
step assert_equals t10 exact "-a^2*(c1 - 2)*(2*c1 - 3)"
step top c2(E)*KX*xi^2 as t11
step assert_equals t11 exact "-alpha*(c1^2 - c1 + 8)/2"
step top c1(E)*KX^2*xi^2 as t12
step assert_equals t12 exact "a*(5*c1^2 - 6*c1 + 17)"
step top c1(E)*c2X*xi^2 as t13
step assert_equals t13 exact "a*(7*c1^2 + 4*c1 + 4)/4"
step top KX*c2X*xi^2 as t14
step assert_equals t14 exact "-4*c1^2 - 13*c1 - 88"
step residual_c1 E as res1
step solve res1 for a
step assert_equals a_sol exact "r*(5*c1^2 - 10*c1 + 8)/(3*c1^2 - 8*c1 + 8)"
step residual_c2 E as res2
step solve res2 for alpha
step assert_equals alpha_sol exact "(20*a + 12*a^2 - 16*a*c1 - 12*a^2*c1 + 8*a*c1^2 + 3*a^2*c1^2 - 32*r + 38*c1*r - 21*c1^2*r)/(2*(c1^2 - 2*c1 + 4))"
step residual_c3 E as res3
step subst alpha := alpha_sol in res3
step subst a := a_sol in res3
step divide res3 by r*(c1 - 2) because "r >= 2 and c1 >= 5"
step assert_equals res3 primitive "32768 - 79872*c1 + 32256*c1^2 + 141824*c1^3 - 289536*c1^4 + 277920*c1^5 - 159400*c1^6 + 56064*c1^7 - 11214*c1^8 + 972*c1^9 - 36864*r + 73728*c1*r + 37632*c1^2*r - 317184*c1^3*r + 524064*c1^4*r - 472800*c1^5*r + 263112*c1^6*r - 90516*c1^7*r + 17640*c1^8*r - 1485*c1^9*r + 4096*r^2 + 7168*c1*r^2 - 68864*c1^2*r^2 + 164416*c1^3*r^2 - 212480*c1^4*r^2 + 171280*c1^5*r^2 - 88400*c1^6*r^2 + 28300*c1^7*r^2 - 5000*c1^8*r^2 + 375*c1^9*r^2"
step diophantine res3 vars r,c1 box 2..100,5..100 expect empty
step qscan res3 quad r min 2 scan c1 range 5..10000 expect empty
final "no integer solutions with r >= 2, c1 >= 5"
)scn";

// P^{n-2}-bundle over a surface, classes as printed.
constexpr std::string_view kSupHead = R"scn(model pbundle_surface n=n
step specialize c2 := c12 - d
)scn";

constexpr std::string_view kSupPrinted = R"scn(note "K_X and c2(X) are the classes as printed"
class KXm = KX
class KX = -(n - 2)*xi + pi(KB) + pi(C1F)
class c2X = c2B*f + (c12 - d)*f - (n - 2)*xi*pi(C1F) + binom(n - 1, 2)*xi^2 + kc1*f - (n - 2)*xi*pi(KB)
step assert_class KXm - KX = -xi
)scn";

constexpr std::string_view kSupDerived = R"scn(note "K_X and c2(X) are derived from the model"
)scn";

constexpr std::string_view kSupChain = R"scn(bundle E rank=r c1=xi + pi(M1) c2=(xi + pi(M1))*pi(M2) c3=0
step residual_c1 E as out1
step solve out1 for c1m1
step residual_c2 E as out3
step subst c1m1 := c1m1_sol in out3 as out7
step solve out7 for m1m2
step residual_c3 E as out11
step subst c1m1 := c1m1_sol in out11 as out15
step subst m1m2 := m1m2_sol in out15 as out18
bundle L rank=1 c1=pi(M1) - pi(M2)
step rr_surface L as out19
step assert_equals out19 exact "(k2 + c2B)/12 + m12/2 - m1m2 - km1/2 + km2/2"
step subst m1m2 := m1m2_sol in out19 as out23
step solve out23 for c2B
step subst c2B := c2B_sol in out18 as out29
)scn";

constexpr std::string_view kSupPrintedTail = R"scn(step assert_equals out29 primitive "-2*c12 + 2*d - 15*d*r + 3*d*n*r"
bundle Hq rank=r - 1 c1=pi(M2)
step twist Hq by -pi(C1F) as G
step rr_surface G as out33
step assert_equals out33 exact "(r - 1)/12*(k2 + c2B) + (r - 1)/2*c12 - c1m2 - km2/2 + (r - 1)/2*kc1"
step subst c2B := c2B_sol in out33 as out37
step assert_equals out37 primitive "(c12 + 6*d - d*n)*r"
poly ult2 = c12 + 6*d - d*n
step diophantine ult2 vars c12,d,n box 1..60,2..60,4..6 expect empty
step divide out37 by r because "r >= 2"
step solve out37 for c12
step subst c12 := c12_sol in out29 as comb
step assert_equals comb primitive "d*(14 - 2*n - 15*r + 3*n*r)"
step divide comb by d because "d >= 2"
step diophantine comb vars n,r box 1..200,2..200 expect (4,2)
step qscan comb quad n scan r range 2..1000000 expect (4,2)
final "d*(14-2n-15r+3nr) = 0 ⇒ no integer n>=7"
)scn";

constexpr std::string_view kSupDerivedTail = R"scn(step assert_zero out29
bundle Hq rank=r - 1 c1=pi(M2)
step twist Hq by -pi(C1F) as G
step rr_surface G as out33
step subst c2B := c2B_sol in out33 as out37
step assert_zero out37
final "with the derived K_X and c2(X) both constraints vanish identically"
)scn";

// N(6) with N the null-correlation bundle on P^3, pulled back along a linear projection.
constexpr std::string_view kEsbs = R"scn(# Chern numbers of an Ulrich bundle pulled back from P^3.
model pbundle_curve n=4 g=0 degF=1 gen=h
bundle N rank=2 c1=0 c2=h^2
step twist N by 6*h as E
step assert_class c1(E) = 12*h
step assert_class c2(E) = 37*h^2
step assert_class c3(E) = 0
step whitney E E as E2
step assert_class c1(E2) = 24*h
step assert_class c2(E2) = 218*h^2
step assert_class c3(E2) = 888*h^3
step assert_class c4(E2) = 1369*h^4
step schur22 E2 as s22
step assert_equals s22 exact "26212"
final "c(E) = (12, 37, 0), c(E+E) = (24, 218, 888)"
)scn";

const std::map<std::string, std::string, std::less<>>& texts() {
  static const std::map<std::string, std::string, std::less<>> t = [] {
    std::map<std::string, std::string, std::less<>> m;
    m["pf_curve"] = std::string(kPfCurve);
    m["qf"] = std::string(kQf);
    m["pf2"] = std::string(kPf2);
    m["sup"] = "# Ulrich bundle on a projective bundle over a surface.\n" + std::string(kSupHead) +
               std::string(kSupPrinted) + std::string(kSupChain) + std::string(kSupPrintedTail);
    m["sup_derived"] = "# Same chain with the model's own K_X and c2(X).\n" + std::string(kSupHead) +
                       std::string(kSupDerived) + std::string(kSupChain) +
                       std::string(kSupDerivedTail);
    m["esbs"] = std::string(kEsbs);
    return m;
  }();
  return t;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"pf_curve", "qf", "pf2", "sup", "sup_derived", "esbs"};
  return names;
}

std::string_view builtin_text(std::string_view name) {
  auto it = texts().find(name);
  if (it == texts().end()) throw Error(Errc::UnknownName, "no builtin scenario '" + std::string(name) + "'");
  return it->second;
}

std::string model_preset(std::string_view spec) {
  if (spec.rfind("model ", 0) == 0) return std::string(spec) + "\n";
  if (spec == "pf") return "model pbundle_curve\n";
  if (spec == "qf") return "model hyperquadric_curve\n";
  if (spec == "sup") return "model pbundle_surface\n";
  if (spec == "pf2") return "model pbundle_surface n=5 c1F=c1*R KB=-3*R c2F=c2 c2B=3 xitop=c1^2 - c2\npairing (R,R) = 1\n";
  throw Error(Errc::UnknownName, "unknown model preset '" + std::string(spec) + "'");
}

}  // namespace chowcalc
