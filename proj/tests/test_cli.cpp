#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chowcalc/cli.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chowcalc;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string last_line(std::string t) {
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') + 1);
}

}  // namespace

TEST_CASE("scenario run") {
  Run sup = cli({"scenario", "run", "sup"});
  CHECK(sup.code == kExitPass);
  CHECK(last_line(sup.out) == "FINAL d*(14-2n-15r+3nr) = 0 ⇒ no integer n>=7");
  for (const auto& name : builtin_names()) CHECK(cli({"scenario", "run", name}).code == kExitPass);
  Run json = cli({"scenario", "run", "esbs", "--json-lines"});
  std::istringstream lines(json.out);
  std::size_t steps = 0;
  for (std::string l; std::getline(lines, l);) steps += l.rfind("STEP ", 0) == 0;
  CHECK(steps == run_builtin("esbs").steps.size());
  CHECK(last_line(json.out).rfind("FINAL ", 0) == 0);
  Run a = cli({"scenario", "run", "qf", "--no-timing"}), b = cli({"scenario", "run", "qf", "--no-timing"});
  CHECK(a.out == b.out);
  CHECK(cli({"scenario", "list"}).out.find("sup_derived") != std::string::npos);
  CHECK(cli({"scenario", "show", "pf_curve"}).out == builtin_text("pf_curve"));
}

TEST_CASE("scenario files and exit codes") {
  auto dir = std::filesystem::temp_directory_path() / "chowcalc_cli";
  std::filesystem::create_directories(dir);
  auto bad = dir / "bad.scn";
  std::ofstream(bad) << "model pbundle_curve n=4 g=0\nstep top xi - f as v\nstep assert_equals v exact \"d - 2\"\n";
  Run fail = cli({"scenario", "run", bad.string()});
  CHECK(fail.code == kExitFail);
  CHECK(fail.out.find("FAILURE AssertionFailure: step 2 assert_equals at line 3") != std::string::npos);
  auto broken = dir / "broken.scn";
  std::ofstream(broken) << "model pbundle_curve\nclass K = xi^^2\n";
  Run parse = cli({"scenario", "run", broken.string()});
  CHECK(parse.code == kExitUsage);
  CHECK(parse.err.find("line 2, column 14") != std::string::npos);
  if (const char* sd = std::getenv("CHOWCALC_SCENARIO_DIR"))
    CHECK(cli({"scenario", "run", (std::filesystem::path(sd) / "pfgen.scn").string()}).code == kExitPass);
  CHECK(cli({"scenario", "run", "no_such_builtin"}).code == kExitUsage);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"scenario", "run"}).code == kExitUsage);
  CHECK(cli({"search", "--poly", "x"}).code == kExitUsage);
}

TEST_CASE("intersect") {
  Run r = cli({"intersect", "--model", "pf", "--expr", "(xi-f)"});
  CHECK(r.code == kExitPass);
  CHECK(r.out == "d - 1\n");
  CHECK(cli({"intersect", "--model", "qf", "--expr", "F"}).out == "2\n");
  CHECK(cli({"intersect", "--model", "pf", "--expr", "L^2", "--define", "class L = xi + a*f"}).out ==
        "2*a + d\n");
  Run bad = cli({"intersect", "--model", "pf", "--expr", "xi^^2"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("column 4") != std::string::npos);
  Run mix = cli({"intersect", "--model", "pf", "--expr", "xi + F"});
  CHECK(mix.code == kExitUsage);
  CHECK(mix.err.find("ModelMismatch: column 6") != std::string::npos);
}

TEST_CASE("search") {
  Run r = cli({"search", "--poly", "n*(3*r-2)-15*r+14", "--vars", "n,r", "--box", "1..100,2..100"});
  CHECK(r.code == kExitPass);
  CHECK(r.out == "(4,2)\n");
  CHECK(cli({"search", "--poly", "1", "--vars", "x", "--box", "1..10"}).out == "EMPTY\n");
  CHECK(cli({"search", "--poly", "x", "--vars", "x", "--box", "1-10"}).code == kExitUsage);
  CHECK(cli({"search", "--poly", "x", "--vars", "x,y", "--box", "1..10"}).code == kExitUsage);
}

TEST_CASE("chern and identity") {
  const std::string p3 = "model pbundle_curve n=4 g=0 degF=1 gen=h";
  Run tw = cli({"chern", "--model", p3, "--op", "twist", "--in", "bundle N rank=2 c1=0 c2=h^2", "--a",
                "N", "--by", "6*h"});
  CHECK(tw.code == kExitPass);
  CHECK(tw.out.find("c1 = 12*h\nc2 = 37*h^2\n") != std::string::npos);
  Run ws = cli({"chern", "--model", p3, "--op", "whitney", "--in", "bundle A rank=2 c1=12*h c2=37*h^2",
                "--a", "A", "--b", "A"});
  CHECK(ws.out.find("c3 = 888*h^3") != std::string::npos);
  Run du = cli({"chern", "--model", p3, "--op", "dual", "--in", "bundle A rank=2 c1=12*h c2=37*h^2",
                "--a", "A"});
  CHECK(du.out.find("c1 = -12*h\nc2 = 37*h^2") != std::string::npos);
  CHECK(cli({"chern", "--model", p3, "--op", "cube", "--in", "x", "--a", "A"}).code == kExitUsage);
  CHECK(cli({"chern", "--model", p3, "--op", "whitney", "--in", "bundle A rank=1 c1=h", "--a", "A"}).code ==
        kExitUsage);
  Run id = cli({"identity", "--model", "qf", "--which", "c1", "--ctx", "bundle E rank=r c1=H + m1*F"});
  CHECK(id.code == kExitPass);
  CHECK(solve_linear(parse_poly(last_line(id.out)), "m1") == parse_poly("(r*(2*d + 2*g - 2 - e) - d)/2"));
}
