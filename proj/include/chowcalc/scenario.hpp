#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chowcalc/expr.hpp"

namespace chowcalc {

// One parsed line of a scenario file.
struct Directive {
  int line = 0;
  std::string kind;                 // model, param, pairing, class, poly, bundle, note, final, step
  std::string step;                 // step kind when kind == "step"
  std::vector<std::string> words;   // names in order of appearance
  std::vector<ExprPtr> exprs;       // expressions in order of appearance
  std::vector<std::pair<std::string, ExprPtr>> options;  // key=value pairs
  std::string text;                 // quoted text or golden string
  std::vector<std::pair<Integer, Integer>> ranges;  // search boxes and scan ranges
  std::vector<std::vector<Integer>> expected;       // expected integer points
  bool expect_empty = false;
  long number = 0;                  // required roots, section index, expected dimension, minimum
  bool has_number = false;
  std::string source;               // the line as written
};

struct Scenario {
  std::string name;
  std::vector<Directive> directives;
};

// Throws ParseError with the line and column of the first offending token.
Scenario parse_scenario(std::string_view text, const std::string& name = "scenario");

struct StepOutcome {
  std::size_t index = 0;
  std::string kind;
  bool passed = true;
  std::vector<std::pair<std::string, std::string>> payload;
  int line = 0;
};

struct Report {
  std::string scenario;
  std::string model;
  std::vector<std::string> notes;
  std::vector<std::string> assumptions;  // nonzero factors and declared relations
  std::vector<StepOutcome> steps;
  std::string final_text;
  std::vector<std::string> failures;  // one entry per failed assertion
  std::string error;  // set when a step raised instead of completing
  bool passed = true;
  double elapsed_ms = 0;

  // "STEP <i> <kind> PASS|FAIL line=<n> key=value ...", values JSON-quoted when not bare
  std::string step_line(const StepOutcome& s) const;
  std::string to_json_lines() const;
  std::string final_line() const;  // "FINAL <text>", or NOT ESTABLISHED when the run failed
  std::string to_text(bool with_timing = true) const;
};

Report run_scenario(const Scenario& scenario);
Report run_text(std::string_view text, const std::string& name = "scenario");
Report run_file(const std::string& path);
Report run_builtin(std::string_view name);

const std::vector<std::string>& builtin_names();
std::string_view builtin_text(std::string_view name);  // throws UnknownName

// Model presets accepted by the CLI: pf, qf, sup, pf2, or a literal "model ..." line.
std::string model_preset(std::string_view spec);

}  // namespace chowcalc
