#pragma once

#include <optional>
#include <random>
#include <string_view>

#include "chowcalc/chern.hpp"
#include "chowcalc/chow.hpp"
#include "chowcalc/diophantine.hpp"
#include "chowcalc/error.hpp"
#include "chowcalc/expr.hpp"
#include "chowcalc/fraction.hpp"
#include "chowcalc/poly.hpp"
#include "chowcalc/scenario.hpp"
#include "chowcalc/ulrich.hpp"

namespace support {

inline chowcalc::PolyExpr P(std::string_view text) { return chowcalc::parse_poly(text); }

inline chowcalc::ChowClass C(std::string_view text, const chowcalc::ChowModel& m) {
  return chowcalc::parse_class(text, m);
}

// Error code raised by f, if any.
template <class F>
std::optional<chowcalc::Errc> errc_of(F&& f) {
  try {
    f();
  } catch (const chowcalc::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Small random polynomial over the given variables.
inline chowcalc::PolyExpr random_poly(std::mt19937& rng, const std::vector<std::string>& vars,
                                      int terms = 4, int max_exp = 2) {
  std::uniform_int_distribution<int> coeff(-9, 9), den(1, 4), exp(0, max_exp);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  chowcalc::PolyExpr p;
  for (int t = 0; t < terms; ++t) {
    chowcalc::Monomial m;
    for (int k = exp(rng); k > 0; --k) m = m * chowcalc::Monomial::of(vars[pick(rng)]);
    p += chowcalc::PolyExpr::term(chowcalc::Rational(coeff(rng), den(rng)), m);
  }
  return p;
}

}  // namespace support
