from fractions import Fraction

import pytest
import sympy

from corpora import univariate_corpus
from diophdecide.poly import PolySystem, UniPoly
from diophdecide.qfeas import (
    THRESHOLD,
    RigorousInfeasibleError,
    decide_qfeasible,
    factor_count_oracle,
    integer_roots,
    rational_point_search,
    rational_roots,
)

X = sympy.Symbol("x")


def test_threshold():
    assert THRESHOLD == Fraction(6561, 4096)


def test_rational_roots():
    assert rational_roots(UniPoly([-3, 2])) == {Fraction(3, 2)}
    assert rational_roots(UniPoly([1, 0, 1])) == set()
    assert rational_roots(UniPoly([0, 0, -1, 1])) == {Fraction(0), Fraction(1)}
    assert integer_roots(UniPoly([6, -5, 1])) == [2, 3]
    assert integer_roots(UniPoly([-1, 0, 2])) == []


def test_factor_oracle_examples():
    assert factor_count_oracle(UniPoly([-196, 0, 140, 0, -23, 0, 1])) == 3
    assert factor_count_oracle(UniPoly([1, 0, 1])) == 1
    assert factor_count_oracle(UniPoly([1, 1, 0, 0, 0, 0, 1])) == 1
    g = UniPoly([-2, 0, 0, 1]) * UniPoly([3, 3, 0, 1])
    assert factor_count_oracle(g) == 2


def test_factor_oracle_vs_sympy_on_corpus():
    for f, factors, _ in univariate_corpus():
        expect = len(sympy.factor_list(sum(c * X**i for i, c in enumerate(f.coeffs)))[1])
        assert factor_count_oracle(f) == expect == len(factors)


def test_point_search():
    F = PolySystem.from_strings(["x^2+y^2-2", "x-y"])
    pt = rational_point_search(F)
    assert pt is not None and all(v in (1, -1) for v in pt.values())
    assert rational_point_search(PolySystem.from_strings(["x^2+1"])) is None


def test_decide_examples():
    v = decide_qfeasible(PolySystem.from_strings(["x^2+1"]), 10**4)
    assert v.verdict == "Infeasible" and v.estimate_rF == 1 and v.threshold_infeasible
    v = decide_qfeasible(PolySystem.from_strings(["(x-3)*(x^2+1)"]), 10**4)
    assert v.verdict == "Feasible" and v.certificate == {"x": Fraction(3)}
    v = decide_qfeasible(PolySystem.from_strings(["(x^2-2)*(x^2-7)*(x^2-14)"]), 10**4)
    assert v.verdict == "PromiseUnknown" and v.estimate_rF == 3


def test_decide_json():
    d = decide_qfeasible(PolySystem.from_strings(["x^2+1"]), 2000).to_dict()
    assert d["verdict"] == "Infeasible" and d["threshold"] == {"num": "6561", "den": "4096"}


def test_empirical_needs_range():
    with pytest.raises(ValueError):
        decide_qfeasible(PolySystem.from_strings(["x^2+1"]), 500)


def test_rigorous_refuses_out_of_reach():
    with pytest.raises(RigorousInfeasibleError) as exc:
        decide_qfeasible(PolySystem.from_strings(["x^2+1"]), mode="rigorous")
    assert exc.value.M_bitlength == 35
