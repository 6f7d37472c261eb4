import random

import mpmath
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from diophdecide.poly import SparsePoly, UniPoly, parse
from diophdecide.resultant import (
    ChartResultants,
    NotGeneric,
    chart_resultants,
    det_bareiss,
    discriminant,
    discriminant_matrix,
    resultant,
    resultant_uni,
    sylvester_matrix,
)

X = sympy.Symbol("x")


def sym(f: UniPoly):
    return sum(c * X**i for i, c in enumerate(f.coeffs))


def product_oracle(f, g):
    # lc(f)^deg g * prod g(roots of f), roots found numerically
    mpmath.mp.dps = 60
    roots = mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=200, extraprec=200)
    val = mpmath.mpf(f.coeffs[-1]) ** g.degree
    for r in roots:
        val *= mpmath.polyval(list(reversed(g.coeffs)), r)
    assert abs(mpmath.im(val)) < 1e-6
    return int(mpmath.nint(mpmath.re(val)))


def rand_uni(rng, deg, c=20):
    cs = [rng.randint(-c, c) for _ in range(deg)] + [rng.choice([i for i in range(-c, c + 1) if i])]
    return UniPoly(cs)


def test_examples():
    assert resultant_uni(UniPoly([-1, 0, 1]), UniPoly([-2, 1])) == 3
    assert resultant_uni(UniPoly([1, 0, 1]), UniPoly([-1, 0, 1])) == 4
    assert resultant_uni(UniPoly([1, 2, 3]), UniPoly([5])) == 25
    assert discriminant(UniPoly([-5, 0, 1])) == 20
    assert discriminant(UniPoly([1, 0, 1])) == -4
    assert discriminant(UniPoly([1, -2, 1])) == 0
    M = discriminant_matrix(UniPoly([-5, 0, 1]))
    assert len(M) == 3 and all(len(r) == 3 for r in M)


def test_sylvester_shape():
    M = sylvester_matrix([1, 2, 3], [4, 5])
    assert len(M) == 3 and all(len(r) == 3 for r in M)


def test_bareiss_against_sympy():
    rng = random.Random(3)
    for n in range(1, 7):
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det_bareiss(A) == sympy.Matrix(A).det()


def test_closed_forms():
    rng = random.Random(11)
    for _ in range(20):
        a = rng.choice([i for i in range(-30, 31) if i])
        b, c = rng.randint(-30, 30), rng.randint(-30, 30)
        assert discriminant(UniPoly([c, b, a])) == b * b - 4 * a * c
    for _ in range(20):
        p, q = rng.randint(-30, 30), rng.randint(-30, 30)
        assert discriminant(UniPoly([q, p, 0, 1])) == -4 * p**3 - 27 * q**2


def test_discriminant_against_resultant_and_sympy():
    rng = random.Random(12)
    for _ in range(50):
        D = rng.randint(2, 8)
        f = rand_uni(rng, D)
        a = f.coeffs[-1]
        r = resultant_uni(f, f.derivative())
        sign = -1 if (D * (D - 1) // 2) % 2 else 1
        assert r % a == 0
        assert discriminant(f) == sign * r // a == sympy.discriminant(sym(f), X)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 5))
def test_resultant_antisymmetry(seed, df, dg):
    rng = random.Random(seed)
    f, g = rand_uni(rng, df), rand_uni(rng, dg)
    assert resultant_uni(f, g) == (-1) ** (df * dg) * resultant_uni(g, f)
    assert resultant_uni(f, g) == product_oracle(f, g)


bivar = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-5, 5), min_size=1, max_size=4
).map(lambda d: SparsePoly(("x", "y"), d))


@settings(max_examples=40, deadline=None)
@given(bivar, bivar)
def test_interpolation_matches_bareiss(f, g):
    if f.degree_in("x") < 1 and g.degree_in("x") < 1:
        return
    if f.is_zero() or g.is_zero():
        return
    a = resultant(f, g, "x")
    b = resultant(f, g, "x", method="bareiss")
    if isinstance(b, int):
        b = SparsePoly.constant(b, ("y",))
    assert a.with_vars(("y",)) == b.with_vars(("y",))


def test_multivariate_example():
    f = parse("x^2+y^2-1")
    g = parse("x-y", ("x", "y"))
    r = resultant(f, g, "x")
    assert r == parse("2*y^2-1", ("y",))


def test_chart_resultants_find_singular_slices():
    f = parse("(y-x)*(y+x)+(v-3)*(x^3+y^3+1)", ("v", "x", "y"))
    cr = chart_resultants(f)
    assert isinstance(cr, ChartResultants)
    assert 3 in cr.integer_roots()


def test_chart_resultants_smooth_family():
    cr = chart_resultants(parse("x^4+y^4+v^4+1", ("v", "x", "y")))
    assert isinstance(cr, ChartResultants)
    assert cr.integer_roots() == []


def test_not_generic_when_identically_zero():
    out = chart_resultants(parse("(y-x)^2+v", ("v", "x", "y")))
    assert isinstance(out, (NotGeneric, ChartResultants))
