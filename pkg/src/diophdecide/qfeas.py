"""Rational roots, the small-degree factor-count oracle, and the density-based
rational-feasibility decision."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .density import DensityReport, estimate_rF, rational_json, scan
from .poly import PolySystem, SparsePoly, UniPoly, squarefree_part

THRESHOLD = Fraction(9, 8) ** 4
FACTOR_ORACLE_MAX_DEGREE = 8


def _divisors(n: int) -> list[int]:
    return sympy.divisors(abs(n)) if n else []


def rational_roots(f: UniPoly) -> set[Fraction]:
    """All rational roots of f, by testing +-b/c with b | alpha_0 and c | alpha_D."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every rational as a root")
    k, g = f.shift_out_zero()
    roots = {Fraction(0)} if k else set()
    if g.degree <= 0:
        return roots
    g = squarefree_part(g)
    lead = _divisors(g.lc)
    for b in _divisors(g.coeffs[0]):
        for c in lead:
            for z in (Fraction(b, c), Fraction(-b, c)):
                if z not in roots and g(z) == 0:
                    roots.add(z)
    return roots


def integer_roots(f: UniPoly) -> list[int]:
    """Integer roots of f (any size/degree), via exact real-root isolation."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every integer as a root")
    k, g = f.shift_out_zero()
    roots = {0} if k else set()
    if g.degree >= 1:
        g = squarefree_part(g)
        t = sympy.Symbol("t")
        P = sympy.Poly(list(reversed(g.coeffs)), t)
        for (a, b), _ in P.intervals(eps=sympy.Rational(1, 4)):
            for z in range(math.floor(a), math.ceil(b) + 1):
                if g(z) == 0:
                    roots.add(z)
    return sorted(roots)


def _mignotte_coeff_bound(f: UniPoly, j: int) -> int:
    c = max(abs(a) for a in f.coeffs)
    d = f.degree
    # c * C(d, j) * sqrt(d + 1), rounded up
    return c * math.comb(d, j) * math.isqrt(d + 1) + c * math.comb(d, j)


def _interp_rational(ts, ys) -> list[Fraction] | None:
    n = len(ts)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (ts[i] - ts[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
        for k in range(n):
            new[k] -= ts[i] * poly[k]
        new[0] += coef[i]
        poly = new
    return poly


def _find_factor(q: UniPoly, k: int) -> UniPoly | None:
    """A factor of q of degree exactly k with integer coefficients (Kronecker's method)."""
    samples = []
    for t in sorted(range(-30, 31), key=abs):
        v = q(t)
        if v:
            samples.append((len(_divisors(v)), abs(t), t, v))
    samples.sort()
    pts = samples[: k + 1]
    if len(pts) < k + 1:
        return None
    ts = [p[2] for p in pts]
    choices = []
    for i, (_, _, t, v) in enumerate(pts):
        ds = _divisors(v)
        choices.append(ds if i == 0 else ds + [-d for d in ds])
    extra = [(p[2], p[3]) for p in samples[k + 1 : k + 4]]
    bounds = [_mignotte_coeff_bound(q, j) for j in range(k + 1)]
    lead_divs = set(_divisors(q.lc))
    for ys in itertools.product(*choices):
        h = _interp_rational(ts, ys)
        if any(c.denominator != 1 for c in h):
            continue
        h = [int(c) for c in h]
        if h[k] == 0 or abs(h[k]) not in lead_divs:
            continue
        if any(abs(c) > b for c, b in zip(h, bounds)):
            continue
        hp = UniPoly(h)
        if any(v % hp(t) for t, v in extra if hp(t)):
            continue
        try:
            q.exact_div(hp)
        except ArithmeticError:
            continue
        return hp.primitive()
    return None


def factor_count_oracle(f: UniPoly) -> int:
    """Number of distinct irreducible factors of f over QQ (deg f <= 8)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree > FACTOR_ORACLE_MAX_DEGREE:
        raise ValueError(f"degree {f.degree} exceeds the oracle limit {FACTOR_ORACLE_MAX_DEGREE}")
    if f.degree == 0:
        return 0
    q = squarefree_part(f)
    count = 0
    for z in rational_roots(q):
        q = q.exact_div(UniPoly([-z.numerator, z.denominator]))
        count += 1
    q = q.primitive()
    while q.degree >= 2:
        for k in range(2, q.degree // 2 + 1):
            h = _find_factor(q, k)
            if h is not None:
                count += 1
                q = q.exact_div(h).primitive()
                break
        else:
            count += 1
            break
    return count


# -------------------------------------------------------- point search


def _height_rationals(height: int):
    seen = set()
    for h in range(0, height + 1):
        for den in range(1, h + 1 if h else 2):
            for num in range(-h, h + 1):
                if max(abs(num), den) != h and h:
                    continue
                z = Fraction(num, den)
                if z not in seen:
                    seen.add(z)
                    yield z


def rational_point_search(F: PolySystem, height: int = 12) -> dict[str, Fraction] | None:
    """Search for a rational zero of F.

    A coordinate pinned down by a univariate member is taken from its exact
    rational roots; other coordinates range over rationals of height <= ``height``.
    """

    def rec(polys: list[SparsePoly], vars: tuple[str, ...]):
        polys = [p for p in polys if not p.is_zero()]
        if any(p.is_constant() for p in polys):
            return None
        if not polys:
            return {v: Fraction(0) for v in vars}
        var, candidates = None, None
        for p in polys:
            live = [v for v in vars if p.involves(v)]
            if len(live) == 1:
                var = live[0]
                uni = p.with_vars((var,) + tuple(v for v in vars if v != var))
                uni = SparsePoly((var,), {(e[0],): c for e, c in uni.terms.items()})
                candidates = sorted(rational_roots(uni.to_uni()), key=lambda z: (abs(z.numerator) + z.denominator, z))
                break
        if var is None:
            var = vars[0]
            candidates = _height_rationals(height)
        rest = tuple(v for v in vars if v != var)
        for z in candidates:
            sub = [p.substitute(var, z)[0] for p in polys]
            found = rec(sub, rest)
            if found is not None:
                found[var] = z
                return found
        return None

    sol = rec(list(F.polys), F.vars)
    if sol is None:
        return None
    assert all(p.eval(sol) == 0 for p in F.polys)
    return {v: sol[v] for v in F.vars}


# ------------------------------------------------------------ decision


class RigorousInfeasibleError(RuntimeError):
    """The rigorous prime bound is far beyond what can be scanned."""

    def __init__(self, message: str, M_bitlength: int):
        super().__init__(message)
        self.M_bitlength = M_bitlength


@dataclass
class FeasibilityVerdict:
    verdict: str  # "Feasible", "Infeasible" or "PromiseUnknown"
    mode: str
    x_used: int
    N_bar: int
    pi_bar: int
    estimate_rF: int
    threshold_infeasible: bool
    certificate: dict[str, Fraction] | None = None
    notes: list[str] = field(default_factory=list)
    report: DensityReport | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "rigorous": self.mode == "rigorous",
            "x_used": self.x_used,
            "N_bar": self.N_bar,
            "pi_bar": self.pi_bar,
            "ratio": rational_json(Fraction(self.N_bar, self.pi_bar)),
            "threshold": rational_json(THRESHOLD),
            "estimate_rF": self.estimate_rF,
            "threshold_infeasible": self.threshold_infeasible,
            "certificate": None
            if self.certificate is None
            else {k: rational_json(v) for k, v in self.certificate.items()},
            "notes": list(self.notes),
        }


def decide_qfeasible(
    F: PolySystem,
    x: int | None = None,
    mode: str = "empirical",
    *,
    cap: int | None = None,
    threads: int = 1,
    budget: int | None = None,
    search_height: int = 12,
    max_rigorous_bits: int = 24,
) -> FeasibilityVerdict:
    """Decide whether F has a rational zero, assuming the transitivity promise.

    Exact N_F(x) and pi(x) stand in for the 9/8-approximations, so the
    threshold test reads N_F/pi <= (9/8)^4.  A rational point found by the
    bounded search always wins; a density verdict of "feasible" with no
    point found is reported as PromiseUnknown.
    """
    notes = []
    if mode == "empirical":
        if x is None:
            x = 10**5
        if x < 1000:
            raise ValueError("empirical mode needs x >= 1000")
        notes.append("empirical mode: prime range chosen by the caller, no GRH-backed guarantee")
    elif mode == "rigorous":
        from .bounds import context_from_system, rigorous_M

        res = rigorous_M(context_from_system(F))
        if res.M_bitlength > max_rigorous_bits:
            raise RigorousInfeasibleError(
                f"rigorous M = 2^{res.M_bitlength - 1} is out of reach "
                f"(scan limit 2^{max_rigorous_bits})",
                res.M_bitlength,
            )
        x = 1 << (res.M_bitlength - 1)
        notes.append(f"rigorous mode: b(F, M) < 1/10 at M = 2^{res.M_bitlength - 1}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    kw = {} if budget is None else {"budget": budget}
    report = scan(F, x, cap, threads=threads, **kw)
    ratio = report.ratio_NF
    below = ratio <= THRESHOLD
    point = rational_point_search(F, search_height)
    if point is not None:
        verdict = "Feasible"
        if below:
            notes.append("density test says infeasible but a rational point exists: the promise fails")
    elif below:
        verdict = "Infeasible"
    else:
        verdict = "PromiseUnknown"
        notes.append(
            "density test says feasible but no rational point was found; "
            "the transitivity promise may be violated"
        )
    return FeasibilityVerdict(
        verdict=verdict,
        mode=mode,
        x_used=x,
        N_bar=report.N_F,
        pi_bar=report.pi,
        estimate_rF=estimate_rF(report),
        threshold_infeasible=below,
        certificate=point,
        notes=notes,
        report=report,
    )
