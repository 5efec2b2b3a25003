#include "chowcalc/diophantine.hpp"

#include <algorithm>
#include <array>
#include <thread>

#include "chowcalc/error.hpp"

namespace chowcalc {

namespace {

// p with integer coefficients, as a polynomial in `last` over the other variables.
struct CompiledPoly {
  struct Term {
    Integer coeff;
    std::vector<unsigned> exps;  // over the outer variables
  };
  std::vector<std::vector<Term>> by_power;  // index = exponent of the innermost variable

  CompiledPoly(const PolyExpr& p, const std::vector<std::string>& vars) {
    Integer den = 1;
    for (const auto& [m, c] : p.terms()) den = lcm(den, c.denominator());
    const std::string& inner = vars.back();
    by_power.resize(p.degree_in(inner) + 1);
    for (const auto& [m, c] : p.terms()) {
      Term t{(c * Rational(den)).numerator(), {}};
      for (std::size_t i = 0; i + 1 < vars.size(); ++i) t.exps.push_back(m.exponent(vars[i]));
      by_power[m.exponent(inner)].push_back(std::move(t));
    }
  }

  // Coefficients of the innermost variable at the outer point.
  std::vector<Integer> inner_coeffs(const std::vector<Integer>& outer) const {
    std::vector<Integer> out(by_power.size());
    Integer pw;
    for (std::size_t k = 0; k < by_power.size(); ++k) {
      for (const auto& t : by_power[k]) {
        Integer v = t.coeff;
        for (std::size_t i = 0; i < outer.size(); ++i)
          if (t.exps[i]) {
            mpz_pow_ui(pw.get_mpz_t(), outer[i].get_mpz_t(), t.exps[i]);
            v *= pw;
          }
        out[k] += v;
      }
    }
    return out;
  }
};

Integer horner(const std::vector<Integer>& coeffs, const Integer& x) {
  Integer acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

unsigned pick_threads(unsigned requested, const Integer& span) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (span < t) t = static_cast<unsigned>(std::max<long>(1, span.get_si()));
  return t;
}

// Split [lo, hi] into contiguous chunks, run fn on each in parallel and join in order.
template <class R, class Fn>
std::vector<R> run_chunks(const Integer& lo, const Integer& hi, unsigned threads, Fn fn) {
  Integer span = hi - lo + 1;
  unsigned t = pick_threads(threads, span);
  std::vector<std::vector<R>> parts(t);
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < t; ++i) {
    Integer a = lo + span * i / t, b = lo + span * (i + 1) / t - 1;
    if (t == 1) {
      parts[i] = fn(a, b);
    } else {
      pool.emplace_back([&, i, a, b] { parts[i] = fn(a, b); });
    }
  }
  for (auto& th : pool) th.join();
  std::vector<R> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()),
                                   std::make_move_iterator(p.end()));
  return out;
}

void require_params_within(const PolyExpr& p, const std::vector<std::string>& vars) {
  for (const auto& name : p.params())
    if (std::find(vars.begin(), vars.end(), name) == vars.end())
      throw Error(Errc::MissingAssignment, "parameter " + name + " is not a search variable");
}

}  // namespace

Integer SearchBox::size() const {
  Integer total = 1;
  for (const auto& [lo, hi] : ranges) total *= hi < lo ? Integer(0) : Integer(hi - lo + 1);
  return total;
}

std::vector<Assignment> search_box(const PolyExpr& p, const SearchBox& box, const Integer& cap,
                                   unsigned threads) {
  if (box.vars.empty() || box.vars.size() != box.ranges.size())
    throw Error(Errc::InvalidArgument, "search box needs one range per variable");
  require_params_within(p, box.vars);
  if (box.size() > cap)
    throw Error(Errc::BoxTooLarge, "box has " + box.size().get_str() + " points, cap " + cap.get_str());
  if (box.size() == 0) return {};
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "every point is a zero of the zero polynomial");

  CompiledPoly cp(p, box.vars);
  const std::size_t outer_count = box.vars.size() - 1;
  const auto& inner_range = box.ranges.back();

  // Enumerate outer points with the first variable restricted to [a, b].
  auto scan = [&](const Integer& a, const Integer& b) {
    std::vector<std::vector<Integer>> hits;
    std::vector<Integer> point(outer_count);
    auto inner_loop = [&]() {
      std::vector<Integer> coeffs = cp.inner_coeffs(point);
      for (Integer x = inner_range.first; x <= inner_range.second; ++x)
        if (horner(coeffs, x) == 0) {
          auto full = point;
          full.push_back(x);
          hits.push_back(std::move(full));
        }
    };
    if (outer_count == 0) {
      // single variable: the chunk bounds restrict it directly
      std::vector<Integer> coeffs = cp.inner_coeffs(point);
      for (Integer x = a; x <= b; ++x)
        if (horner(coeffs, x) == 0) hits.push_back({x});
      return hits;
    }
    point[0] = a;
    for (std::size_t i = 1; i < outer_count; ++i) point[i] = box.ranges[i].first;
    while (true) {
      inner_loop();
      std::size_t i = outer_count;
      while (i > 0) {
        --i;
        Integer limit = i == 0 ? b : box.ranges[i].second;
        if (point[i] < limit) {
          ++point[i];
          for (std::size_t j = i + 1; j < outer_count; ++j) point[j] = box.ranges[j].first;
          break;
        }
        if (i == 0) return hits;
      }
    }
  };

  const auto& first = box.ranges.front();
  auto raw = run_chunks<std::vector<Integer>>(first.first, first.second, threads, scan);
  std::vector<Assignment> out;
  for (const auto& pt : raw) {
    Assignment a;
    for (std::size_t i = 0; i < pt.size(); ++i) a[box.vars[i]] = Rational(pt[i]);
    if (!eval_at(p, a).is_zero())
      throw Error(Errc::AssertionFailure, "search hit failed re-verification");
    out.push_back(std::move(a));
  }
  return out;
}

QuadraticScanResult quadratic_scan(const PolyExpr& p, const std::string& quad_var,
                                   const std::string& scan_var, const Integer& lo,
                                   const Integer& hi, unsigned threads) {
  require_params_within(p, {quad_var, scan_var});
  if (p.degree_in(quad_var) > 2)
    throw Error(Errc::NotQuadratic, "degree " + std::to_string(p.degree_in(quad_var)) + " in " + quad_var);
  QuadraticScanResult result;
  if (hi < lo) return result;

  // coefficient of quad_var^k as an integer polynomial in scan_var
  Integer den = 1;
  for (const auto& [m, c] : p.terms()) den = lcm(den, c.denominator());
  std::array<std::vector<Integer>, 3> coeff;
  for (unsigned k = 0; k <= 2; ++k) {
    PolyExpr ck = p.coefficient_of(quad_var, k);
    coeff[k].assign(ck.degree_in(scan_var) + 1, Integer(0));
    for (const auto& [m, c] : ck.terms())
      coeff[k][m.exponent(scan_var)] += (c * Rational(den)).numerator();
  }

  struct Hit {
    Integer s, x;
    bool all = false;
  };
  auto scan = [&](const Integer& a, const Integer& b) {
    std::vector<Hit> hits;
    Integer disc, root, num;
    for (Integer s = a; s <= b; ++s) {
      Integer A = horner(coeff[2], s), B = horner(coeff[1], s), C = horner(coeff[0], s);
      if (A == 0) {
        if (B == 0) {
          if (C == 0) hits.push_back({s, 0, true});
          continue;
        }
        if (C % B == 0) hits.push_back({s, -C / B});
        continue;
      }
      disc = B * B - 4 * A * C;
      if (disc < 0) continue;
      mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
      if (root * root != disc) continue;
      std::vector<Integer> xs;
      for (int sign : {-1, 1}) {
        num = -B + sign * root;
        if (num % (2 * A) == 0) xs.push_back(num / (2 * A));
        if (root == 0) break;
      }
      std::sort(xs.begin(), xs.end());
      for (auto& x : xs) hits.push_back({s, x});
    }
    return hits;
  };

  for (const auto& h : run_chunks<Hit>(lo, hi, threads, scan)) {
    if (h.all) {
      result.identically_zero.push_back(h.s);
      continue;
    }
    Assignment a{{scan_var, Rational(h.s)}, {quad_var, Rational(h.x)}};
    if (!eval_at(p, a).is_zero())
      throw Error(Errc::AssertionFailure, "scan hit failed re-verification");
    result.solutions.push_back(std::move(a));
  }
  return result;
}

RootInterval rational_root_bound(const PolyExpr& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "root bound of the zero polynomial");
  auto params = p.params();
  if (params.size() > 1) throw Error(Errc::InvalidArgument, "root bound needs a univariate polynomial");
  if (params.empty()) return {Rational(-1), Rational(1)};
  const std::string& x = *params.begin();
  unsigned deg = p.degree_in(x);
  Rational lead = p.coefficient_of(x, deg).constant_value();
  Rational best;
  for (unsigned k = 0; k < deg; ++k) {
    Rational ratio = (p.coefficient_of(x, k).constant_value() / lead).abs();
    if (ratio > best) best = ratio;
  }
  Rational b = Rational(1) + best;
  return {-b, b};
}

DiscriminantCertificate discriminant_certificate(const PolyExpr& p, const std::string& quad_var,
                                                 const std::string& scan_var, const Integer& lo,
                                                 const Integer& hi) {
  if (p.degree_in(quad_var) != 2)
    throw Error(Errc::NotQuadratic, "discriminant needs degree two in " + quad_var);
  PolyExpr a = p.coefficient_of(quad_var, 2), b = p.coefficient_of(quad_var, 1),
           c = p.coefficient_of(quad_var, 0);
  DiscriminantCertificate cert;
  cert.discriminant = b * b - PolyExpr(4) * a * c;
  cert.bound = rational_root_bound(cert.discriminant);
  unsigned deg = cert.discriminant.degree_in(scan_var);
  cert.eventual_sign = cert.discriminant.coefficient_of(scan_var, deg).constant_value().sign();
  Rational hb = cert.bound.hi;
  Integer ceil_hb = hb.numerator() / hb.denominator() + 1;
  std::string range = "[" + lo.get_str() + ", " + hi.get_str() + "]";
  if (cert.eventual_sign < 0 && hi >= ceil_hb) {
    cert.certified = true;
    cert.summary = "discriminant negative beyond " + ceil_hb.get_str() + "; scan of " + range +
                   " covers every " + scan_var + " >= " + lo.get_str();
  } else if (cert.eventual_sign < 0) {
    cert.summary = "verified on " + range + "; discriminant negative beyond " + ceil_hb.get_str() +
                   ", extend the scan to certify";
  } else {
    cert.summary = "verified on " + range + "; discriminant stays positive for large " + scan_var +
                   ", no certificate";
  }
  return cert;
}

}  // namespace chowcalc
