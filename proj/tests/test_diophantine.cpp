#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace chowcalc;
using support::errc_of;
using support::P;

namespace {

const char* kPf2 =
    "32768 - 79872*c1 + 32256*c1^2 + 141824*c1^3 - 289536*c1^4 + 277920*c1^5 - 159400*c1^6 + "
    "56064*c1^7 - 11214*c1^8 + 972*c1^9 - 36864*r + 73728*c1*r + 37632*c1^2*r - 317184*c1^3*r + "
    "524064*c1^4*r - 472800*c1^5*r + 263112*c1^6*r - 90516*c1^7*r + 17640*c1^8*r - 1485*c1^9*r + "
    "4096*r^2 + 7168*c1*r^2 - 68864*c1^2*r^2 + 164416*c1^3*r^2 - 212480*c1^4*r^2 + "
    "171280*c1^5*r^2 - 88400*c1^6*r^2 + 28300*c1^7*r^2 - 5000*c1^8*r^2 + 375*c1^9*r^2";

SearchBox box(std::vector<std::string> vars, std::vector<std::pair<long, long>> ranges) {
  SearchBox b{std::move(vars), {}};
  for (auto [lo, hi] : ranges) b.ranges.emplace_back(lo, hi);
  return b;
}

Assignment at(std::vector<std::pair<std::string, long>> xs) {
  Assignment a;
  for (auto& [k, v] : xs) a[k] = Rational(v);
  return a;
}

}  // namespace

TEST_CASE("search_box") {
  CHECK(P(kPf2).terms().size() == 30);
  CHECK(search_box(P(kPf2), box({"r", "c1"}, {{2, 100}, {5, 100}})).empty());
  auto comb = P("n*(3*r-2)-15*r+14");
  auto hits = search_box(comb, box({"n", "r"}, {{1, 100}, {2, 100}}));
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == at({{"n", 4}, {"r", 2}}));
  CHECK(search_box(P("1"), box({"x"}, {{-50, 50}})).empty());
  CHECK(errc_of([&] { search_box(comb, box({"n", "r"}, {{1, 100000}, {1, 100000}}), Integer(1000)); }) ==
        Errc::BoxTooLarge);
  CHECK(errc_of([&] { search_box(comb, box({"n"}, {{1, 10}})); }) == Errc::MissingAssignment);
  CHECK(errc_of([&] { search_box(comb, SearchBox{{"n", "r"}, {{1, 2}}}); }) == Errc::InvalidArgument);
  // Lexicographic, first variable outermost.
  auto sq = search_box(P("x^2 - y^2"), box({"x", "y"}, {{-1, 1}, {-1, 1}}));
  REQUIRE(sq.size() == 5);
  CHECK(sq.front() == at({{"x", -1}, {"y", -1}}));
  CHECK(sq[1] == at({{"x", -1}, {"y", 1}}));
  CHECK(sq.back() == at({{"x", 1}, {"y", 1}}));
}

TEST_CASE("quadratic_scan") {
  auto sq = quadratic_scan(P("r^2 - 4"), "r", "c", Integer(0), Integer(0));
  REQUIRE(sq.solutions.size() == 2);
  CHECK(sq.solutions[0].at("r") == Rational(-2));
  CHECK(sq.solutions[1].at("r") == Rational(2));
  auto lin = quadratic_scan(P("n*(3*r-2)-15*r+14"), "n", "r", Integer(2), Integer(1000000));
  REQUIRE(lin.solutions.size() == 1);
  CHECK(lin.solutions[0] == at({{"n", 4}, {"r", 2}}));
  auto pf2 = quadratic_scan(P(kPf2), "r", "c1", Integer(5), Integer(2000));
  for (const auto& s : pf2.solutions) CHECK(s.at("r") < Rational(2));
  auto flat = quadratic_scan(P("(c - 3)*r"), "r", "c", Integer(0), Integer(5));
  CHECK(flat.identically_zero == std::vector<Integer>{3});
  CHECK(errc_of([] { quadratic_scan(P("r^3 - c"), "r", "c", Integer(0), Integer(3)); }) ==
        Errc::NotQuadratic);
}

TEST_CASE("scan agrees with box") {
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    PolyExpr p = support::random_poly(rng, {"x", "y"}, 4, 2);
    if (p.is_zero() || p.degree_in("x") > 2) continue;
    p = p * PolyExpr(Integer(12));
    auto b = search_box(p, box({"y", "x"}, {{-15, 15}, {-15, 15}}));
    auto q = quadratic_scan(p, "x", "y", Integer(-15), Integer(15));
    std::vector<Assignment> inside;
    for (const auto& s : q.solutions) {
      Rational x = s.at("x");
      if (Rational(-15) <= x && x <= Rational(15)) inside.push_back(s);
    }
    if (!q.identically_zero.empty()) continue;
    CHECK(b == inside);
  }
}

TEST_CASE("planted roots are found") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(-8, 8);
  for (int i = 0; i < 30; ++i) {
    int x0 = coord(rng), y0 = coord(rng), x1 = coord(rng), y1 = coord(rng);
    PolyExpr p = (P("x") - PolyExpr(x0)) * (P("x") - PolyExpr(x1)) +
                 (P("y") - PolyExpr(y0)) * (P("y") - PolyExpr(y1)) * P("x^2 + 1");
    auto hits = search_box(p, box({"x", "y"}, {{-8, 8}, {-8, 8}}));
    for (const auto& h : hits) CHECK(eval_at(p, h).is_zero());
    auto has = [&](int x, int y) {
      return std::find(hits.begin(), hits.end(), at({{"x", x}, {"y", y}})) != hits.end();
    };
    CHECK(has(x0, y0));
    CHECK(has(x1, y1));
  }
}

TEST_CASE("rational_root_bound") {
  auto b = rational_root_bound(P("r - 5"));
  CHECK(b.lo == Rational(-6));
  CHECK(b.hi == Rational(6));
  auto c = rational_root_bound(P("c1^9"));
  CHECK(c.lo == Rational(-1));
  CHECK(c.hi == Rational(1));
  CHECK(errc_of([] { rational_root_bound(PolyExpr()); }) == Errc::ZeroPolynomial);
  auto cert = discriminant_certificate(P(kPf2), "r", "c1", Integer(5), Integer(10000));
  CHECK(cert.discriminant.degree_in("c1") > 0);
  CHECK(cert.bound.hi > Rational(0));
  CHECK(!cert.summary.empty());
}
