import os
from fractions import Fraction

import pytest

import chowcalc


def test_builtins_pass():
    for name in chowcalc.builtin_names():
        report = chowcalc.run_builtin(name)
        assert report["passed"], (name, report["error"])


def test_sup_final_line():
    report = chowcalc.run_builtin("sup")
    assert report["text"].splitlines()[-1] == "FINAL d*(14-2n-15r+3nr) = 0 ⇒ no integer n>=7"


def test_poly_arithmetic():
    p = chowcalc.Poly("(a - r)*(d - 1)")
    assert str(p) == "-a + r + a*d - d*r"
    assert p.divide_exact(chowcalc.Poly("d - 1")) == chowcalc.Poly("a - r")
    assert p.eval_at({"a": 3, "r": 1, "d": Fraction(1, 2)}) == -1
    assert chowcalc.Poly("2*x - 3").solve_linear("x") == chowcalc.Poly("3/2")


def test_search_and_scan():
    comb = chowcalc.Poly("3*n*r - 2*n - 15*r + 14")
    assert chowcalc.search_box(comb, ["n", "r"], [(1, 200), (2, 200)]) == [(4, 2)]
    assert chowcalc.quadratic_scan(comb, "n", "r", 2, 10000) == [(4, 2)]


def test_intersect():
    assert chowcalc.intersect("qf", "KX^2") == chowcalc.Poly("(n - 1)^2*d - 4*(d + 2*g - 2 - e)*(n - 1)")


def test_errors():
    with pytest.raises(chowcalc.ChowError):
        chowcalc.Poly("x*y").solve_linear("x")
    with pytest.raises(chowcalc.ChowError):
        chowcalc.run_builtin("nosuch")


def test_cli_and_file():
    code, out, _ = chowcalc.cli(["scenario", "run", "esbs", "--no-timing"])
    assert code == 0 and "888*h^3" in out
    code, _, _ = chowcalc.cli(["intersect", "--expr", "xi^^2"])
    assert code == 2
    scenario_dir = os.environ.get("CHOWCALC_SCENARIO_DIR")
    if scenario_dir:
        report = chowcalc.run_file(os.path.join(scenario_dir, "pfgen.scn"))
        assert report["passed"]
