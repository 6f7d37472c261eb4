"""Sylvester resultants, discriminants and the chart resultants used for Sigma_f."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import SparsePoly, UniPoly, gcd_q


# ------------------------------------------------------------ matrices


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix of two coefficient lists (index = power).

    ``deg g`` rows carry f's coefficients (highest first) and ``deg f`` rows
    carry g's.  Entries may be ints or SparsePoly; zeros are the int 0.
    """
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise ValueError("zero polynomial in Sylvester matrix")
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(f)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(g)):
            row[i + k] = c
        rows.append(row)
    return rows


def _is_zero(a) -> bool:
    return a == 0 if isinstance(a, int) else a.is_zero()


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        assert r == 0, "Bareiss division must be exact"
        return q
    if isinstance(a, int):
        if a == 0:
            return 0
        a = SparsePoly.constant(a, b.vars)
    return a.exact_div(b)


def det_bareiss(matrix: Sequence[Sequence]) -> object:
    """Fraction-free determinant over ZZ or ZZ[vars] (exact divisions only)."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(M[k][k]):
            swap = next((i for i in range(k + 1, n) if not _is_zero(M[i][k])), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * pivot - M[i][k] * M[k][j]
                M[i][j] = _exact_div(num, prev)
            M[i][k] = 0
        prev = pivot
    d = M[n - 1][n - 1]
    return d if sign > 0 else -d


# --------------------------------------------------------- univariate


def resultant_uni(f: UniPoly, g: UniPoly) -> int:
    """Res(f, g) over ZZ from the Sylvester matrix."""
    if f.is_zero() or g.is_zero():
        return 0
    if f.degree == 0 and g.degree == 0:
        raise ValueError("both inputs are constant")
    return det_bareiss(sylvester_matrix(f.coeffs, g.coeffs))


def discriminant_matrix(f: UniPoly) -> list[list[int]]:
    """The (2D-1)x(2D-1) matrix: D-1 shifted rows of f, then D rows of f'.

    Coefficients run lowest degree first, as in alpha_0 ... alpha_D.
    """
    D = f.degree
    size = 2 * D - 1
    rows = []
    for i in range(D - 1):
        row = [0] * size
        for k, c in enumerate(f.coeffs):
            row[i + k] = c
        rows.append(row)
    df = f.derivative().coeffs
    for i in range(D):
        row = [0] * size
        for k, c in enumerate(df):
            row[i + k] = c
        rows.append(row)
    return rows


def discriminant(f: UniPoly) -> int:
    """(-1)^(D(D-1)/2) / alpha_D * det(discriminant_matrix(f)); zero iff f has a repeated root."""
    D = f.degree
    if D < 1:
        raise ValueError("discriminant needs degree >= 1")
    det = det_bareiss(discriminant_matrix(f))
    q, r = divmod(det, f.lc)
    assert r == 0
    return q if (D * (D - 1) // 2) % 2 == 0 else -q


# ------------------------------------------------------- multivariate


def _interpolate(ts: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Integer coefficients of the polynomial through (ts, ys); exactness asserted."""
    n = len(ts)
    coef = [Fraction(y) for y in ys]
    # divided differences
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (ts[i] - ts[i - j])
    # expand the Newton form
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - ts[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
        for k in range(n):
            new[k] -= ts[i] * poly[k]
        new[0] += coef[i]
        poly = new
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("interpolated resultant is not integral")
        out.append(int(c))
    return out


def _subst_entry(e, var, t):
    if isinstance(e, int):
        return e
    g, _ = e.substitute(var, t)
    return g.constant_value() if g.nvars == 0 else g


def _entry_degree(e, var) -> int:
    if isinstance(e, int):
        return 0
    return max(e.degree_in(var), 0)


def _det_interpolate(M, vars: tuple[str, ...], guards) -> SparsePoly | int:
    """det(M) for entries in ZZ[vars] by evaluation/interpolation, one variable at a time.

    ``guards`` are leading coefficients that must not vanish at the sample
    points (so the specialised matrix keeps the meaning of a resultant).
    """
    if not vars:
        return det_bareiss(M)
    u, rest = vars[0], vars[1:]
    bound = sum(max(_entry_degree(e, u) for e in row) for row in M)
    ts, vals = [], []
    t = 0
    while len(ts) < bound + 1:
        sub_guards = [_subst_entry(g, u, t) for g in guards]
        if all(not _is_zero(g) for g in sub_guards):
            Mt = [[_subst_entry(e, u, t) for e in row] for row in M]
            ts.append(t)
            vals.append(_det_interpolate(Mt, rest, sub_guards))
        t += 1
    # coefficientwise interpolation in u
    monos = set()
    for v in vals:
        if isinstance(v, SparsePoly):
            monos.update(v.terms)
        elif v:
            monos.add(())
    result: dict[tuple[int, ...], int] = {}
    for mono in monos:
        ys = []
        for v in vals:
            if isinstance(v, SparsePoly):
                ys.append(v.terms.get(mono, 0))
            else:
                ys.append(v if mono == () else 0)
        for k, c in enumerate(_interpolate(ts, ys)):
            if c:
                result[(k,) + tuple(mono)] = c
    if not rest:
        return SparsePoly((u,), {(k,): c for (k,), c in result.items()})
    return SparsePoly((u,) + rest, result)


def resultant(f: SparsePoly, g: SparsePoly, var: str, method: str = "interpolate") -> SparsePoly:
    """Sylvester resultant with respect to ``var``.

    The result lives in the remaining variables (a 0-variable constant when
    there are none).  ``method="bareiss"`` runs fraction-free elimination
    directly on polynomial entries.
    """
    if f.vars != g.vars:
        raise ValueError("resultant needs a shared variable list")
    if f.is_zero() or g.is_zero():
        rest = tuple(v for v in f.vars if v != var)
        return SparsePoly(rest)
    fc, gc = f.coeffs_in(var), g.coeffs_in(var)
    if len(fc) == 1 and len(gc) == 1:
        raise ValueError(f"both inputs are constant in {var}")
    rest = fc[0].vars
    if not rest:
        return SparsePoly.constant(
            resultant_uni(UniPoly(c.constant_value() for c in fc), UniPoly(c.constant_value() for c in gc))
        )
    M = sylvester_matrix(fc, gc)
    M = [[e if isinstance(e, SparsePoly) else SparsePoly.constant(e, rest) for e in row] for row in M]
    if method == "bareiss":
        return det_bareiss(M)
    if method != "interpolate":
        raise ValueError(f"unknown method {method!r}")
    d = _det_interpolate(M, rest, [fc[-1], gc[-1]])
    if isinstance(d, int):
        return SparsePoly.constant(d, rest)
    return d.with_vars(rest)


# ------------------------------------------------------- chart resultants


@dataclass(frozen=True)
class NotGeneric:
    """Genericity hypothesis failed; ``reason`` says which one."""

    reason: str
    chart: str | None = None


@dataclass(frozen=True)
class ChartResultants:
    """R_chart(v) for the affine chart ``z`` and the charts at infinity ``x``, ``y``."""

    charts: dict[str, UniPoly]

    def integer_roots(self) -> list[int]:
        from .qfeas import integer_roots

        roots = set()
        for R in self.charts.values():
            roots.update(integer_roots(R))
        return sorted(roots)


def _homogenize(f: SparsePoly) -> tuple[SparsePoly, int]:
    """F(v, x, y, z) homogeneous in (x, y, z) of the slice degree of f."""
    ix, iy = f.vars.index("x"), f.vars.index("y")
    iv = f.vars.index("v")
    d = max(e[ix] + e[iy] for e in f.terms)
    terms = {}
    for e, c in f.terms.items():
        terms[(e[iv], e[ix], e[iy], d - e[ix] - e[iy])] = c
    return SparsePoly(("v", "x", "y", "z"), terms), d


def _as_uni_v(p: SparsePoly) -> UniPoly:
    if p.nvars == 0:
        return UniPoly([p.constant_value()])
    return p.with_vars(("v",)).to_uni()


def _eliminate_pair(p: SparsePoly, a: str, b: str) -> UniPoly:
    """R(v) vanishing wherever p, dp/da, dp/db share a zero in (a, b)."""
    pa, pb = p.derivative(a), p.derivative(b)
    if pa.is_zero() and pb.is_zero():
        return _as_uni_v(p.with_vars(("v",)))
    if pa.is_zero():
        # p free of a: singular lines are the double roots of p in b
        return _as_uni_v(resultant(p, pb, b).with_vars(("v",)))
    if pb.is_zero():
        return _as_uni_v(resultant(p, pa, a).with_vars(("v",)))
    for first, second in ((b, a), (a, b)):
        d_first, d_second = p.derivative(first), p.derivative(second)
        for k in range(4):
            r1 = resultant(p, d_second, first)
            r2 = resultant(p, d_first + d_second.scale(k), first)
            if r1.is_zero() or r2.is_zero():
                continue
            if r1.degree_in(second) <= 0 and r2.degree_in(second) <= 0:
                R = gcd_q(_as_uni_v(r1.with_vars(("v",))), _as_uni_v(r2.with_vars(("v",))))
            else:
                R = _as_uni_v(resultant(r1, r2, second))
            if not R.is_zero():
                return R
    return UniPoly()


def chart_resultants(f: SparsePoly) -> ChartResultants | NotGeneric:
    """Chart resultants R_z(v), R_x(v), R_y(v) of the projective slice curves of f(v, x, y).

    Every v0 at which the projective closure of {f(v0, x, y) = 0} is
    singular (in particular every reducible slice) is a root of one of them.
    """
    f = f.with_vars(("v", "x", "y"))
    if not (f.involves("x") or f.involves("y")):
        raise ValueError("f must involve x or y")
    H, _ = _homogenize(f)
    charts = {
        "z": H.substitute("z", 1)[0],
        "x": H.substitute("x", 1)[0],
        "y": H.substitute("y", 1)[0],
    }
    pairs = {"z": ("x", "y"), "x": ("y", "z"), "y": ("x", "z")}
    out = {}
    for name, g in charts.items():
        R = _eliminate_pair(g, *pairs[name])
        if R.is_zero():
            return NotGeneric(f"chart resultant vanishes identically in chart {name}", name)
        out[name] = R
    return ChartResultants(out)
