import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from diophdecide.bounds import (
    MIN_EXPONENT,
    X_MIN,
    BoundContext,
    MF_bound,
    aF_star,
    alpha,
    assertion1_bound,
    bFx,
    bound_table,
    context_from_system,
    disc_log_bound,
    li_bracket,
    mignotte_bound,
    mignotte_sigma,
    prim_bounds,
    rigorous_M,
    sigma_hF_bound,
    sigma_hat_bound,
)
from diophdecide.modular import sieve
from diophdecide.poly import PolySystem, UniPoly, size
from diophdecide.resultant import discriminant

CONTEXTS = {name: context_from_system(F, zf) for name, (F, zf) in oracles.pinned_systems().items()}


def test_contexts():
    c = CONTEXTS["x^2+1"]
    assert (c.n, c.m, c.d, c.sigma, c.V_F, c.mu, c.k, c.c, c.p, c.zf) == (1, 1, 2, 2, 2, 2, 2, 1, (2,), 2)
    assert CONTEXTS["grid"].delta == 4 and CONTEXTS["grid"].V_F == 4
    assert CONTEXTS["three-quadratics"].zf == 6


def test_interval_contains_value():
    for ctx in CONTEXTS.values():
        for v in (MF_bound(ctx), sigma_hF_bound(ctx), sigma_hat_bound(ctx), aF_star(ctx)):
            assert v.lower <= v.upper and v.width < 1e-20 * (1 + abs(v.mid))
    assert float(alpha()) == pytest.approx(2 - 3 / (4 * math.log(2)))
    assert float(alpha()) < 0.91798


def test_against_oracle():
    for ctx in CONTEXTS.values():
        assert oracles.agree(MF_bound(ctx).mid, oracles.M_F(ctx), 12)
        assert oracles.agree(sigma_hF_bound(ctx).mid, oracles.sigma_h(ctx), 12)
        assert oracles.agree(sigma_hat_bound(ctx).mid, oracles.sigma_hat(ctx), 12)
        assert oracles.agree(prim_bounds(ctx).log_ai.mid, oracles.log_a(ctx), 12)
        for x in (10**5, 10**9, 2**40):
            assert oracles.agree(bFx(ctx, x).mid, oracles.b(ctx, x), 12)


def test_pinned_values():
    assert float(MF_bound(CONTEXTS["x^2+1"])) == pytest.approx(5.356, abs=1e-3)
    assert float(sigma_hF_bound(CONTEXTS["x^2+1"])) == pytest.approx(16.914, abs=1e-3)
    assert float(MF_bound(CONTEXTS["grid"])) == pytest.approx(30.336, abs=1e-3)


def test_bFx_decreasing():
    ctx = CONTEXTS["x^2+1"]
    vals = [bFx(ctx, log2x=e) for e in range(16, 65)]
    assert all(b.upper < a.lower for a, b in zip(vals, vals[1:]))


def test_assertion1_limit():
    ctx = CONTEXTS["x^2+1"]
    v = assertion1_bound(ctx, 2, log2x=128)
    assert float(v) > 0.5 and float(v) == pytest.approx(0.5, abs=1e-10)
    with pytest.raises(ValueError):
        assertion1_bound(ctx, 1, 10**6)


def test_x_validation():
    ctx = CONTEXTS["x^2+1"]
    with pytest.raises(ValueError):
        bFx(ctx, X_MIN)
    with pytest.raises(ValueError):
        bFx(ctx, 10**6, log2x=20)
    with pytest.raises(ValueError):
        bFx(ctx, log2x=MIN_EXPONENT - 1)


def test_rigorous_M_matches_linear_scan():
    for ctx in CONTEXTS.values():
        r = rigorous_M(ctx)
        e = MIN_EXPONENT
        while not bFx(ctx, log2x=e) < Fraction(1, 10):
            e += 1
        assert r.M_bitlength == e + 1 and r.log2M == e
        assert r.attained_bound < Fraction(1, 10)
        assert r.bound_at_half >= Fraction(1, 10)
    assert rigorous_M(CONTEXTS["x^2+1"]).M_bitlength == 35


def test_rigorous_M_target():
    ctx = CONTEXTS["x^2+1"]
    assert rigorous_M(ctx, Fraction(1, 1000)).M_bitlength > rigorous_M(ctx).M_bitlength
    with pytest.raises(ValueError):
        rigorous_M(ctx, 2)


def test_aF_star_example():
    F = PolySystem.from_strings(["(x-3)*(x^2+1)"])
    ctx = context_from_system(F)
    assert ctx.zf == 3
    assert float(aF_star(ctx)) > 1


def test_bound_table_rows():
    rows = dict(bound_table(CONTEXTS["x^2+1"], 10**5))
    assert rows["rigorous M bit-length"] == "35"
    assert "b(F,100000)" in rows and "assertion1(100000)" in rows


def test_li_bracket_examples():
    for x in (10**4, 10**5):
        lb = li_bracket(x)
        assert lb.pi_within(len(sieve(x)))
    assert not li_bracket(10**5).pi_within(10)


def test_mignotte_exact():
    assert mignotte_bound((2,), 60, (1,)) == math.ceil(120 * math.sqrt(3))
    # 60 * sqrt(5) = 134.16..., ceiling 135
    assert mignotte_bound((4,), 60, (0,)) == 135
    with pytest.raises(ValueError):
        mignotte_bound((2,), 1, (3,))


def _factor_pairs(rng):
    deg_g = rng.randint(1, 4)
    deg_h = rng.randint(1, 4)
    g = [rng.randint(-9, 9) for _ in range(deg_g)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
    h = [rng.randint(-9, 9) for _ in range(deg_h)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
    return UniPoly(g), UniPoly(h)


def test_mignotte_on_products():
    rng = random.Random(42)
    for _ in range(50):
        g, h = _factor_pairs(rng)
        f = g * h
        c = max(abs(x) for x in f.coeffs)
        for j, a in enumerate(g.coeffs):
            assert abs(a) <= mignotte_bound((f.degree,), c, (j,))
        sigma_f = max(size(x) for x in f.coeffs)
        assert max(size(x) for x in g.coeffs) <= mignotte_sigma(sigma_f, f.degree).upper


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=2, max_size=7))
def test_disc_log_dominates(cs):
    f = UniPoly(cs)
    if f.degree < 1 or sympy.Poly(list(reversed(f.coeffs)), sympy.Symbol("x")).sqf_part().degree() != f.degree:
        return
    D = discriminant(f)
    assert D != 0
    sigma = max(size(c) for c in f.coeffs)
    assert math.log(abs(D)) <= disc_log_bound(sigma, f.degree).lower


def test_context_validation():
    with pytest.raises(ValueError):
        BoundContext(1, 1, 2, 2, 2, 2, 2, 1, (2, 3))
    with pytest.raises(ValueError):
        BoundContext(1, 1, 2, 2, 2, 2, 2, 1, (2,), zf=0)
