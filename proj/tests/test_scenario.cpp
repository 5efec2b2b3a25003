#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"

using namespace chowcalc;
using support::errc_of;

namespace {

std::string replace_once(std::string text, std::string_view from, std::string_view to) {
  auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

std::filesystem::path write_temp(const std::string& name, std::string_view text) {
  auto dir = std::filesystem::temp_directory_path() / "chowcalc_scenarios";
  std::filesystem::create_directories(dir);
  auto path = dir / (name + ".scn");
  std::ofstream(path) << text;
  return path;
}

std::string last_line(const std::string& text) {
  std::string t = text;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') + 1);
}

}  // namespace

TEST_CASE("builtins pass") {
  for (const auto& name : builtin_names()) {
    Report r = run_builtin(name);
    CHECK_MESSAGE(r.passed, name << "\n" << r.to_text(false));
    CHECK(r.error.empty());
    CHECK(r.failures.empty());
  }
  CHECK(errc_of([] { run_builtin("nope"); }) == Errc::UnknownName);
}

TEST_CASE("headline values") {
  CHECK(run_builtin("qf").final_text == "d + e*(r-2) = 0, impossible for d >= 2, e >= 0, r >= 2");
  Report sup = run_builtin("sup");
  CHECK(last_line(sup.to_text()) == "FINAL d*(14-2n-15r+3nr) = 0 ⇒ no integer n>=7");
  Report esbs = run_builtin("esbs");
  CHECK(esbs.to_text(false).find("c3=888*h^3") != std::string::npos);
}

TEST_CASE("determinism") {
  for (const auto& name : builtin_names()) {
    Report a = run_builtin(name), b = run_builtin(name);
    CHECK(a.to_text(false) == b.to_text(false));
    CHECK(a.to_json_lines() == b.to_json_lines());
  }
}

TEST_CASE("file parity with builtins") {
  for (const char* name : {"pf_curve", "qf", "esbs"}) {
    auto path = write_temp(name, builtin_text(name));
    Report f = run_file(path.string());
    Report b = run_builtin(name);
    CHECK(f.passed == b.passed);
    CHECK(f.to_text(false) == b.to_text(false));
    std::filesystem::remove(path);
  }
  CHECK(errc_of([] { run_file("/nonexistent/x.scn"); }) == Errc::InvalidArgument);
}

TEST_CASE("off-by-one golden fails naming the step") {
  std::string text = replace_once(std::string(builtin_text("qf")), "\"d + e*(r - 2)\"", "\"d + e*(r - 3)\"");
  Report r = run_text(text, "qf_bad");
  CHECK_FALSE(r.passed);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].find("AssertionFailure") != std::string::npos);
  CHECK(r.failures[0].find("assert_equals") != std::string::npos);
  std::string out = r.to_text(false);
  CHECK(out.find("FAIL line=") != std::string::npos);
  CHECK(last_line(out).rfind("FINAL NOT ESTABLISHED", 0) == 0);
  std::string zero = replace_once(std::string(builtin_text("sup_derived")), "step assert_zero out29",
                                  "step assert_zero out18");
  CHECK_FALSE(run_text(zero).passed);
}

TEST_CASE("parse errors") {
  try {
    parse_scenario("model pbundle_curve\nstep frobnicate x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 6);
  }
  try {
    parse_scenario("model pbundle_curve\nclass K = xi^^2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 14);
  }
  CHECK(errc_of([] { parse_scenario("model torus\n"); }) == Errc::ParseError);
  CHECK(parse_scenario("# only a comment\n\n").directives.empty());
}

TEST_CASE("runtime errors stop the run") {
  Report r = run_text("model pbundle_curve\nstep top c1(Q) as x\nstep top xi as y\n");
  CHECK_FALSE(r.passed);
  CHECK(r.error.rfind("line 2:", 0) == 0);
  CHECK(r.steps.size() == 1);
}

TEST_CASE("pfgen scenario file") {
  const char* dir = std::getenv("CHOWCALC_SCENARIO_DIR");
  REQUIRE(dir != nullptr);
  Report r = run_file((std::filesystem::path(dir) / "pfgen.scn").string());
  CHECK(r.passed);
  CHECK(r.scenario == "pfgen");
  CHECK(r.steps.back().kind == "chi_roots");
  std::string tight = "model pbundle_curve n=4\nparam m mu\n"
                      "poly chi = binom(2 - m + 3, 3)*(mu + 1 - g) + binom(2 - m + 3, 4)*d\n"
                      "step chi_roots chi in m required 4\n";
  CHECK_FALSE(run_text(tight).passed);
}

TEST_CASE("json lines") {
  Report r = run_builtin("esbs");
  std::string j = r.to_json_lines();
  CHECK(j.rfind("STEP 1 twist PASS line=4 ", 0) == 0);
  CHECK(last_line(j).rfind("STEP 11 assert_equals PASS", 0) == 0);
  CHECK(r.final_line() == "FINAL " + r.final_text);
}
