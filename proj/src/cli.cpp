#include "chowcalc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "chowcalc/diophantine.hpp"
#include "chowcalc/error.hpp"
#include "chowcalc/scenario.hpp"

namespace chowcalc {

namespace {

// Semicolons separate scenario lines in a single flag value.
std::string lines_of(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == ';') c = '\n';
  return out + "\n";
}

std::string payload_value(const Report& r, const std::string& key) {
  if (r.steps.empty()) return "";
  for (const auto& [k, v] : r.steps.back().payload)
    if (k == key) return v;
  return "";
}

// Drops the generated line number; positions on the last line become relative to the flag
// value that starts at column offset + 1.
std::string relocate(const std::string& error, const std::string& text, std::size_t offset) {
  std::string msg = std::regex_replace(error, std::regex("^line \\d+: "), "");
  const auto last = std::count(text.begin(), text.end(), '\n');
  std::smatch m;
  if (offset && std::regex_search(msg, m, std::regex("line (\\d+), column (\\d+)")) &&
      std::stol(m[1]) == last && std::stoul(m[2]) > offset)
    msg = std::string(m.prefix()) + "column " + std::to_string(std::stoul(m[2]) - offset) +
          std::string(m.suffix());
  return msg;
}

// Runs a generated scenario and prints the payload of its last step. Errors here come from
// the flag values, so they are usage errors.
int run_generated(const std::string& text, std::ostream& out, std::ostream& err,
                  const std::vector<std::string>& keys, std::size_t expr_offset = 0) {
  Report r = run_text(text, "cli");
  if (!r.error.empty()) {
    err << "error: " << relocate(r.error, text, expr_offset) << "\n";
    return kExitUsage;
  }
  for (const auto& k : keys) {
    std::string v = payload_value(r, k);
    if (!v.empty()) out << (keys.size() > 1 ? k + " = " : "") << v << "\n";
  }
  return r.passed ? kExitPass : kExitFail;
}

std::vector<std::pair<Integer, Integer>> parse_box(const std::string& spec) {
  std::vector<std::pair<Integer, Integer>> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) throw Error(Errc::InvalidArgument, "box ranges are lo..hi");
    try {
      out.emplace_back(Integer(part.substr(0, dots)), Integer(part.substr(dots + 2)));
    } catch (const std::invalid_argument&) {
      throw Error(Errc::InvalidArgument, "bad range '" + part + "'");
    }
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chow ring and Chern class calculator", "chowcalc"};
  app.require_subcommand(1);

  auto* scenario = app.add_subcommand("scenario", "run or inspect scenarios");
  scenario->require_subcommand(1);
  auto* run = scenario->add_subcommand("run", "run a builtin scenario or a scenario file");
  std::string target;
  bool json_lines = false, no_timing = false;
  run->add_option("target", target, "builtin name or path")->required();
  run->add_flag("--json-lines", json_lines, "print one STEP line per step");
  run->add_flag("--no-timing", no_timing, "omit the elapsed time");
  auto* list = scenario->add_subcommand("list", "list builtin scenarios");
  auto* show = scenario->add_subcommand("show", "print a builtin scenario");
  std::string show_name;
  show->add_option("name", show_name)->required();

  auto* intersect = app.add_subcommand("intersect", "degree of a class against the generator");
  std::string model = "pf", expr, defs;
  intersect->add_option("--model", model, "pf, qf, sup, pf2 or a model line");
  intersect->add_option("--expr", expr, "class expression")->required();
  intersect->add_option("--define", defs, "extra scenario lines, ';'-separated");

  auto* search = app.add_subcommand("search", "integer zeros of a polynomial in a box");
  std::string poly, vars, box;
  search->add_option("--poly", poly)->required();
  search->add_option("--vars", vars, "comma-separated variables")->required();
  search->add_option("--box", box, "lo..hi per variable, comma-separated")->required();

  auto* chern = app.add_subcommand("chern", "Whitney sum, dual or line twist of bundles");
  std::string op, in, by, first, second;
  std::string chern_model = "pf";
  chern->add_option("--model", chern_model, "pf, qf, sup, pf2 or a model line");
  chern->add_option("--op", op)->required()->check(CLI::IsMember({"whitney", "dual", "twist"}));
  chern->add_option("--in", in, "bundle lines, ';'-separated")->required();
  chern->add_option("--a", first, "first bundle")->required();
  chern->add_option("--b", second, "second bundle for whitney");
  chern->add_option("--by", by, "line class for twist");

  auto* identity = app.add_subcommand("identity", "Ulrich residual of a bundle");
  std::string which, ctx, bundle_name = "E";
  std::string id_model = "pf";
  identity->add_option("--model", id_model, "pf, qf, sup, pf2 or a model line");
  identity->add_option("--which", which)->required()->check(CLI::IsMember({"c1", "c2", "c3"}));
  identity->add_option("--ctx", ctx, "bundle and class lines, ';'-separated")->required();
  identity->add_option("--bundle", bundle_name);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*run) {
      bool is_file = target.find('/') != std::string::npos || target.find('.') != std::string::npos ||
                     std::filesystem::exists(target);
      Report r = is_file ? run_file(target) : run_builtin(target);
      if (json_lines) {
        out << r.to_json_lines();
        if (!r.error.empty()) out << "ERROR " << r.error << "\n";
        if (!r.final_text.empty()) out << r.final_line() << "\n";
      } else {
        out << r.to_text(!no_timing);
      }
      return r.passed ? kExitPass : kExitFail;
    }
    if (*list) {
      for (const auto& n : builtin_names()) out << n << "\n";
      return kExitPass;
    }
    if (*show) {
      out << builtin_text(show_name);
      return kExitPass;
    }
    if (*intersect) {
      parse_expression(expr);
      std::string text = model_preset(model) + lines_of(defs) + "step top " + expr + " as value\n";
      return run_generated(text, out, err, {"value"}, std::string("step top ").size());
    }
    if (*search) {
      SearchBox sb;
      std::stringstream ss(vars);
      for (std::string v; std::getline(ss, v, ',');) sb.vars.push_back(v);
      sb.ranges = parse_box(box);
      if (sb.ranges.size() != sb.vars.size())
        throw Error(Errc::InvalidArgument, "one range per variable");
      auto hits = search_box(parse_poly(poly), sb);
      if (hits.empty()) out << "EMPTY\n";
      for (const auto& h : hits) {
        out << "(";
        for (std::size_t i = 0; i < sb.vars.size(); ++i)
          out << (i ? "," : "") << h.at(sb.vars[i]).to_string();
        out << ")\n";
      }
      return kExitPass;
    }
    if (*chern) {
      std::string step = "step ";
      if (op == "whitney") {
        if (second.empty()) throw Error(Errc::InvalidArgument, "whitney needs --b");
        step += "whitney " + first + " " + second + " as result";
      } else if (op == "dual") {
        step += "dual " + first + " as result";
      } else {
        if (by.empty()) throw Error(Errc::InvalidArgument, "twist needs --by");
        parse_expression(by);
        step += "twist " + first + " by " + by + " as result";
      }
      return run_generated(model_preset(chern_model) + lines_of(in) + step + "\n", out, err,
                           {"rank", "c1", "c2", "c3", "c4"});
    }
    if (*identity) {
      std::string text = model_preset(id_model) + lines_of(ctx) + "step residual_" + which + " " +
                         bundle_name + " as residual\n";
      return run_generated(text, out, err, {"residual"});
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    bool usage = e.code() == Errc::UnknownName || e.code() == Errc::InvalidArgument;
    return usage ? kExitUsage : kExitFail;
  }
  return kExitUsage;
}

}  // namespace chowcalc
