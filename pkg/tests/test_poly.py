from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diophdecide.poly import (
    PolySyntaxError,
    PolySystem,
    SparsePoly,
    UniPoly,
    arith,
    derivative,
    evaluate,
    gcd_q,
    parse,
    size,
    sizes,
    squarefree_part,
    substitute,
)


def naive_mul(f, g):
    # term-by-term product over dicts, independent of SparsePoly.__mul__
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def test_parse_examples():
    assert parse("x^2+1").terms == {(2,): 1, (0,): 1}
    f = parse("(x^2-2)*(x^2-7)*(x^2-14)")
    a = naive_mul({(2,): 1, (0,): -2}, {(2,): 1, (0,): -7})
    assert f.terms == naive_mul(a, {(2,): 1, (0,): -14})
    assert f.terms == {(6,): 1, (4,): -23, (2,): 140, (0,): -196}
    g = parse("v*x*y")
    assert g.vars == ("v", "x", "y") and g.terms == {(1, 1, 1): 1}


@pytest.mark.parametrize(
    "text",
    ["x^", "2x", "x^y", "x^(2)", "q+1", "(x+1", "x**2", "x^-1", ""],
)
def test_parse_errors(text):
    with pytest.raises(PolySyntaxError):
        parse(text)


def test_parse_error_position():
    with pytest.raises(PolySyntaxError) as exc:
        parse("x + + ")
    assert exc.value.pos >= 4


def test_arith_derivative_substitute_eval():
    f, g = parse("x^2+1"), parse("x-3")
    assert arith(f, g, "add") == parse("x^2+x-2")
    assert arith(f, g, "mul") == parse("x^3-3*x^2+x-3")
    assert derivative(f, "x") == parse("2*x")
    h = parse("v*x+y")
    s, m = substitute(h, "v", 3)
    assert m == 1 and s == parse("3*x+y", ("x", "y"))
    s, m = substitute(h, "v", Fraction(1, 2))
    assert m == 2 and s == parse("x+2*y", ("x", "y"))
    assert evaluate(parse("x^6-23*x^4+140*x^2-196"), [2]) == 64 - 368 + 560 - 196 == 60


def test_sizes():
    assert size(1) == 2 and size(0) == 1 and size(5) == 4 and size(-6) == 4
    F = PolySystem.from_strings(["x1^2-3*x1+2", "x2^2-3*x2+2"])
    s = sizes(F)
    # each poly: coefficient sizes 2+3+3, exponent entries (2,0),(1,0),(0,0) -> 3+1 + 2+1 + 1+1
    per_poly = (size(1) + size(3) + size(2)) + (size(2) + size(0)) + (size(1) + size(0)) + (size(0) + size(0))
    assert s.sparse_size == 2 * per_poly
    assert s.sigma == 3 and s.total_degree == 2 and s.dense_size == 5
    assert sizes(parse("x^2-5")).sigma == 4


def test_squarefree_part():
    assert squarefree_part(UniPoly([2, -3, 0, 1])) == UniPoly([-2, 1, 1])  # (x-1)^2 (x+2)
    assert squarefree_part(UniPoly([1, 0, 1])) == UniPoly([1, 0, 1])
    assert squarefree_part(UniPoly([4, 0, -4, 0, 1])) == UniPoly([-2, 0, 1])


# ----------------------------------------------------------- properties

VARS = ("x", "y")
monos = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monos, st.integers(-20, 20), max_size=5).map(lambda d: SparsePoly(VARS, d))
unis = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(UniPoly)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f


@settings(max_examples=60, deadline=None)
@given(polys)
def test_print_parse_roundtrip(f):
    assert parse(str(f), VARS) == f


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_leibniz(f, g):
    for v in VARS:
        assert (f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v)


@settings(max_examples=60, deadline=None)
@given(unis)
def test_squarefree_properties(f):
    if f.degree < 1:
        return
    g = squarefree_part(f)
    assert gcd_q(g, g.derivative()).degree == 0
    f.exact_div(g)  # raises unless g | f


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_exact_div_recovers_factor(f, g):
    if g.is_zero():
        return
    assert (f * g).exact_div(g) == f
