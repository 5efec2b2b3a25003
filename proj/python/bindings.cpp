#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chowcalc/cli.hpp"
#include "chowcalc/diophantine.hpp"
#include "chowcalc/error.hpp"
#include "chowcalc/scenario.hpp"

namespace py = pybind11;
using namespace chowcalc;

namespace {

py::object to_py(const Rational& q) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  py::object builtins_int = py::module_::import("builtins").attr("int");
  if (q.is_integer()) return builtins_int(q.numerator().get_str());
  return fraction(builtins_int(q.numerator().get_str()), builtins_int(q.denominator().get_str()));
}

Rational from_py(const py::handle& h) {
  return Rational::parse(py::str(h).cast<std::string>());
}

Assignment to_assignment(const py::dict& values) {
  Assignment a;
  for (const auto& [k, v] : values) a[k.cast<std::string>()] = from_py(v);
  return a;
}

Integer to_integer(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

py::dict report_dict(const Report& r) {
  py::dict d;
  d["scenario"] = r.scenario;
  d["model"] = r.model;
  d["passed"] = r.passed;
  d["error"] = r.error;
  d["final"] = r.final_text;
  d["notes"] = r.notes;
  d["assumptions"] = r.assumptions;
  py::list steps;
  for (const auto& s : r.steps) {
    py::dict step;
    step["index"] = s.index;
    step["kind"] = s.kind;
    step["passed"] = s.passed;
    step["line"] = s.line;
    py::dict payload;
    for (const auto& [k, v] : s.payload) payload[py::str(k)] = v;
    step["payload"] = payload;
    steps.append(step);
  }
  d["steps"] = steps;
  d["text"] = r.to_text(false);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chow ring and Chern class calculator";

  py::register_exception<Error>(m, "ChowError", PyExc_ValueError);

  py::class_<PolyExpr>(m, "Poly")
      .def(py::init([](const std::string& text) { return parse_poly(text); }))
      .def(py::init([](long c) { return PolyExpr(c); }))
      .def("__str__", [](const PolyExpr& p) { return p.to_string(); })
      .def("__repr__", [](const PolyExpr& p) { return "Poly('" + p.to_string() + "')"; })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__pow__", [](const PolyExpr& p, unsigned k) { return p.pow(k); })
      .def("is_zero", &PolyExpr::is_zero)
      .def("total_degree", &PolyExpr::total_degree)
      .def("degree_in", [](const PolyExpr& p, const std::string& x) { return p.degree_in(x); })
      .def("params", &PolyExpr::params)
      .def("substitute", [](const PolyExpr& p, const std::string& x, const PolyExpr& v) {
        return substitute(p, x, v);
      })
      .def("solve_linear", [](const PolyExpr& p, const std::string& x) { return solve_linear(p, x); })
      .def("eval_at", [](const PolyExpr& p, const py::dict& values) {
        return to_py(eval_at(p, to_assignment(values)));
      })
      .def("divide_exact", [](const PolyExpr& p, const PolyExpr& q) { return divide_exact(p, q); })
      .def("primitive", [](const PolyExpr& p) { return primitive_form(p).poly; });

  m.def("builtin_names", &builtin_names);
  m.def("builtin_text", [](const std::string& name) { return std::string(builtin_text(name)); });
  m.def("run_builtin", [](const std::string& name) { return report_dict(run_builtin(name)); });
  m.def("run_text", [](const std::string& text, const std::string& name) {
    return report_dict(run_text(text, name));
  }, py::arg("text"), py::arg("name") = "scenario");
  m.def("run_file", [](const std::string& path) { return report_dict(run_file(path)); });

  m.def("search_box", [](const PolyExpr& p, const std::vector<std::string>& vars,
                         const std::vector<std::pair<py::object, py::object>>& ranges) {
    SearchBox box;
    box.vars = vars;
    for (const auto& [lo, hi] : ranges) box.ranges.emplace_back(to_integer(lo), to_integer(hi));
    std::vector<std::string> names = vars;
    std::vector<Assignment> hits;
    {
      py::gil_scoped_release release;
      hits = search_box(p, box);
    }
    py::list out;
    for (const auto& h : hits) {
      py::list point;
      for (const auto& v : names) point.append(to_py(h.at(v)));
      out.append(py::tuple(point));
    }
    return out;
  });

  m.def("quadratic_scan", [](const PolyExpr& p, const std::string& quad, const std::string& scan,
                             const py::object& lo, const py::object& hi) {
    QuadraticScanResult res;
    Integer l = to_integer(lo), h = to_integer(hi);
    {
      py::gil_scoped_release release;
      res = quadratic_scan(p, quad, scan, l, h);
    }
    py::list out;
    for (const auto& a : res.solutions) out.append(py::make_tuple(to_py(a.at(quad)), to_py(a.at(scan))));
    return out;
  });

  m.def("intersect", [](const std::string& model, const std::string& expr) {
    Report r = run_text(model_preset(model) + "step top " + expr + " as value\n", "intersect");
    if (!r.error.empty()) throw Error(Errc::InvalidArgument, r.error);
    for (const auto& [k, v] : r.steps.back().payload)
      if (k == "value") return parse_poly(v);
    throw Error(Errc::InvalidArgument, "no value");
  });

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
