#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chowcalc/poly.hpp"

namespace chowcalc {

struct SearchBox {
  std::vector<std::string> vars;
  std::vector<std::pair<Integer, Integer>> ranges;  // inclusive
  Integer size() const;
};

inline const Integer kDefaultBoxCap = Integer("10000000000");

// Every integer point of the box with p == 0, in lexicographic order (first variable
// outermost). Each hit is re-verified with eval_at. threads == 0 picks the hardware count.
std::vector<Assignment> search_box(const PolyExpr& p, const SearchBox& box,
                                   const Integer& cap = kDefaultBoxCap, unsigned threads = 0);

struct QuadraticScanResult {
  std::vector<Assignment> solutions;      // sorted by (scan value, quad value)
  std::vector<Integer> identically_zero;  // scan values where p vanishes for every quad value
};

// Integer zeros of p, of degree <= 2 in quad_var, for scan_var in [lo, hi]: exact
// discriminant, integer square root and divisibility for each scan value.
QuadraticScanResult quadratic_scan(const PolyExpr& p, const std::string& quad_var,
                                   const std::string& scan_var, const Integer& lo,
                                   const Integer& hi, unsigned threads = 0);

struct RootInterval {
  Rational lo;
  Rational hi;
};
// Cauchy bound: every real root of the univariate p lies in [-B, B], B = 1 + max |a_i / a_n|.
RootInterval rational_root_bound(const PolyExpr& p);

// Sign analysis of the discriminant of p in quad_var, as a polynomial in scan_var. Beyond
// the root bound the sign is fixed; a negative sign there rules out real zeros.
struct DiscriminantCertificate {
  PolyExpr discriminant;
  RootInterval bound;
  int eventual_sign = 0;
  bool certified = false;  // no integer zeros for scan_var >= lo when [lo, hi] covers the bound
  std::string summary;
};
DiscriminantCertificate discriminant_certificate(const PolyExpr& p, const std::string& quad_var,
                                                 const std::string& scan_var, const Integer& lo,
                                                 const Integer& hi);

}  // namespace chowcalc
