"""Quantified sentences: forall-exists in two variables and exists-forall-exists in three.

Over N the variables range over the positive integers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

from .modular import BudgetError
from .poly import RatUniPoly, SparsePoly, UniPoly
from .polytope import convex_hull, interior_lattice_point, newton
from .qfeas import rational_roots
from .resultant import NotGeneric, chart_resultants

DEFAULT_CONG_BUDGET = 10**7
DOMAINS = ("N", "Z")


@dataclass(frozen=True)
class Certificate:
    type: str
    witness: object = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"type": self.type, "witness": _jsonable(self.witness), "detail": _jsonable(self.detail)}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, (UniPoly, RatUniPoly, SparsePoly)):
        return str(obj)
    if isinstance(obj, Certificate):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


@dataclass(frozen=True)
class SentenceVerdict:
    truth: bool | None  # None when the input is outside the decidable scope
    certificate: Certificate
    domain: str
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "truth": self.truth,
            "domain": self.domain,
            "certificate": self.certificate.to_dict(),
            "notes": list(self.notes),
        }


# ------------------------------------------------------- linear factors


@dataclass(frozen=True)
class JstAnalysis:
    """f = f0 * prod (y - f_i(x))^mult_i with f0 an integer polynomial."""

    f: SparsePoly
    linear_factors: tuple[RatUniPoly, ...]
    multiplicities: tuple[int, ...]
    cofactor: SparsePoly

    @property
    def k(self) -> int:
        return len(self.linear_factors)

    def select(self, domain: str) -> tuple[RatUniPoly, ...]:
        """Factors usable as y-sections: all over Z, positive leading coefficient over N."""
        if domain == "Z":
            return self.linear_factors
        return tuple(fi for fi in self.linear_factors if not fi.numerator.is_zero() and fi.lc > 0)

    @staticmethod
    def alpha_of(fs) -> int:
        return reduce(math.lcm, (fi.denominator for fi in fs), 1)

    @staticmethod
    def g_of(fs, alpha: int) -> list[UniPoly]:
        return [UniPoly(c * (alpha // fi.denominator) for c in fi.numerator.coeffs) for fi in fs]

    @staticmethod
    def x0_of(fs) -> int:
        s = [sum(c * c for c in fi.fractions()) for fi in fs]
        return math.ceil(max(s)) if s else 0

    @property
    def alpha(self) -> int:
        return self.alpha_of(self.linear_factors)

    @property
    def g(self) -> list[UniPoly]:
        return self.g_of(self.linear_factors, self.alpha)

    @property
    def x0(self) -> int:
        return self.x0_of(self.linear_factors)

    def product(self) -> SparsePoly:
        out = self.cofactor
        for fi, mult in zip(self.linear_factors, self.multiplicities):
            out = out * _linear_poly(fi) ** mult
        return out

    def exact(self) -> bool:
        """f equals f0 * prod (y - f_i)^mult_i once denominators are cleared."""
        dens = math.prod(fi.denominator**m for fi, m in zip(self.linear_factors, self.multiplicities))
        return self.f.scale(dens) == self.product()


def _linear_poly(fi: RatUniPoly) -> SparsePoly:
    """den*y - num(x), the primitive integer form of y - f_i(x)."""
    terms = {(0, 1): fi.denominator}
    for k, c in enumerate(fi.numerator.coeffs):
        if c:
            terms[(k, 0)] = terms.get((k, 0), 0) - c
    return SparsePoly(("x", "y"), terms)


def _xy(f: SparsePoly) -> SparsePoly:
    return f.with_vars(("x", "y"))


def _y_slice(f: SparsePoly, t) -> UniPoly:
    return f.substitute("x", t)[0].to_uni()


def _interp_q(ts, ys) -> list[Fraction]:
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
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _divides(f: SparsePoly, lin: SparsePoly) -> SparsePoly | None:
    try:
        return f.exact_div(lin)
    except ArithmeticError:
        return None


def extract_linear_factors(f: SparsePoly) -> JstAnalysis:
    """Every f_i in Q[x] with (y - f_i(x)) | f, with multiplicities.

    Specialise x at deg_x f + 1 integers, take the rational y-roots of each
    slice, interpolate every selection of one root per slice, and keep the
    candidates that divide f exactly.
    """
    f = _xy(f)
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree_in("y") < 1:
        return JstAnalysis(f, (), (), f)
    dx = max(f.degree_in("x"), 0)
    lead = f.coeffs_in("y")[-1]
    ts, roots = [], []
    t = 0
    while len(ts) < dx + 1:
        for s in (t, -t) if t else (0,):
            if len(ts) == dx + 1:
                break
            if lead.eval([s]) == 0:
                continue
            ts.append(s)
            roots.append(sorted(rational_roots(_y_slice(f, s))))
        t += 1
    found: list[RatUniPoly] = []
    mults: list[int] = []
    rest = f
    if all(roots):
        for sel in itertools.product(*roots):
            cand = RatUniPoly.from_fractions(_interp_q(ts, sel))
            if cand in found:
                continue
            lin = _linear_poly(cand)
            mult = 0
            while True:
                q = _divides(rest, lin)
                if q is None:
                    break
                rest, mult = q, mult + 1
            if mult:
                found.append(cand)
                mults.append(mult)
    order = sorted(range(len(found)), key=lambda i: (found[i].degree, found[i].fractions()))
    found = [found[i] for i in order]
    mults = [mults[i] for i in order]
    dens = math.prod(fi.denominator**m for fi, m in zip(found, mults))
    return JstAnalysis(f, tuple(found), tuple(mults), rest.scale(dens))


# ------------------------------------------------------------- covering


@dataclass(frozen=True)
class CoveringResult:
    covered: bool
    witness: int | None = None
    pairs: tuple[tuple[int, int], ...] = ()
    # residue -> index of a congruence it satisfies (only kept for small alpha)
    cover: dict | None = None


def _horner_mod_array(coeffs, ts, alpha):
    acc = np.zeros_like(ts)
    for c in reversed(coeffs):
        acc = (acc * ts + (c % alpha)) % alpha
    return acc


def covering_check(g_list, alpha: int, budget: int = DEFAULT_CONG_BUDGET) -> CoveringResult:
    """Is every residue t mod alpha a root of some g_j mod alpha?

    On failure the least uncovered t is returned with the pairs (j, t).
    """
    if alpha < 1:
        raise ValueError("alpha must be positive")
    if alpha > budget:
        raise BudgetError(f"covering check modulo {alpha} exceeds the congruence budget {budget}")
    g_list = [UniPoly(g) if not isinstance(g, UniPoly) else g for g in g_list]
    if alpha == 1:
        return CoveringResult(True, cover={0: 0} if g_list else {})
    if alpha < 3 * 10**9:
        ts = np.arange(alpha, dtype=np.int64)
        covered = np.zeros(alpha, dtype=bool)
        which = np.full(alpha, -1, dtype=np.int64)
        for j, g in enumerate(g_list):
            hit = (_horner_mod_array(g.coeffs, ts, alpha) == 0) & ~covered
            which[hit] = j
            covered |= hit
        missing = np.flatnonzero(~covered)
        if missing.size:
            t = int(missing[0])
            return CoveringResult(False, t, tuple((j, t) for j in range(len(g_list))))
        cover = {int(t): int(j) for t, j in enumerate(which)} if alpha <= 1000 else None
        return CoveringResult(True, cover=cover)
    raise BudgetError("modulus too large for exact int64 evaluation")


# ------------------------------------------------------------------ JST


def _domain_ok(y: Fraction, domain: str) -> bool:
    return y.denominator == 1 and (domain == "Z" or y > 0)


def solve_y(f: SparsePoly, x: int, domain: str) -> tuple[bool, int | None]:
    """Does f(x, y) = 0 have a solution y in the domain?  Returns (found, least such y)."""
    g = _y_slice(_xy(f), x)
    if g.is_zero():
        return True, 1 if domain == "N" else 0
    ys = sorted((y for y in rational_roots(g) if _domain_ok(y, domain)), key=lambda y: (abs(y), y))
    if not ys:
        return False, None
    return True, int(ys[0])


def _check_domain(domain: str):
    if domain not in DOMAINS:
        raise ValueError(f"domain must be one of {DOMAINS}")


def jst_decide(f: SparsePoly, domain: str = "N", *, budget: int = DEFAULT_CONG_BUDGET) -> SentenceVerdict:
    """Decide forall x exists y f(x, y) = 0 over N or Z."""
    _check_domain(domain)
    f = _xy(f)
    if f.is_zero():
        return SentenceVerdict(True, Certificate("ZeroPolynomial"), domain)
    work = f.strip_monomial() if domain == "N" else f
    A = extract_linear_factors(work)
    fs = A.select(domain)
    cond1 = {
        "linear_factors": [str(fi) for fi in A.linear_factors],
        "multiplicities": list(A.multiplicities),
        "used": [str(fi) for fi in fs],
        "cofactor": str(A.cofactor),
    }
    if not fs:
        return SentenceVerdict(False, Certificate("NoLinearFactor", None, {"condition1": cond1}), domain)
    alpha = A.alpha_of(fs)
    gs = A.g_of(fs, alpha)
    detail = {"condition1": cond1, "alpha": alpha, "g": [str(g) for g in gs]}
    if domain == "N":
        x0 = A.x0_of(fs)
        detail["x0"] = x0
        if x0 > budget:
            raise BudgetError(f"checking x up to {x0} exceeds the budget {budget}")
        ys = {}
        for x in range(1, x0 + 1):
            ok, y = solve_y(work, x, "N")
            if not ok:
                detail["condition2"] = f"fails at x = {x}"
                return SentenceVerdict(False, Certificate("FailingX", x, detail), domain)
            ys[x] = y
        detail["condition2"] = {"checked_up_to": x0, "y": ys}
    cov = covering_check(gs, alpha, budget)
    if not cov.covered:
        detail["condition3"] = f"residue {cov.witness} mod {alpha} uncovered"
        return SentenceVerdict(
            False, Certificate("CoveringCounterexample", {"t": cov.witness, "pairs": list(cov.pairs)}, detail), domain
        )
    detail["condition3"] = "covered"
    witness = {"sections": [str(fi) for fi in fs], "alpha": alpha}
    if cov.cover is not None:
        witness["residue_to_section"] = cov.cover
    return SentenceVerdict(True, Certificate("Witness", witness, detail), domain)


# ---------------------------------------------------------------- EAE


def genericity(f: SparsePoly):
    """Checks run before the exists-forall-exists search.

    Returns NotGeneric or a tuple (chart resultants, caveats).
    """
    f = f.with_vars(("v", "x", "y"))
    P = newton(f)
    if not P.full_dimensional:
        return NotGeneric("Newton polytope is not full-dimensional, so its interior is empty")
    proj = convex_hull([(e[1], e[2]) for e in f.terms], 2)
    if not proj.full_dimensional or interior_lattice_point(proj) is None:
        return NotGeneric("projection of the Newton polytope to (x, y) has no interior lattice point")
    charts = chart_resultants(f)
    if isinstance(charts, NotGeneric):
        return charts
    caveats = []
    if interior_lattice_point(P) is None:
        caveats.append("Newton polytope has no interior lattice point; a false verdict relies on the chart test alone")
    return charts, tuple(caveats)


def eae_decide(f: SparsePoly, domain: str = "N", *, budget: int = DEFAULT_CONG_BUDGET) -> SentenceVerdict:
    """Decide exists v forall x exists y f(v, x, y) = 0 for generic f."""
    _check_domain(domain)
    f = f.with_vars(("v", "x", "y"))
    if f.is_zero():
        return SentenceVerdict(True, Certificate("ZeroPolynomial"), domain)
    if domain == "N":
        f = f.strip_monomial()
    gen = genericity(f)
    if isinstance(gen, NotGeneric):
        return SentenceVerdict(None, Certificate("NotGeneric", None, {"reason": gen.reason, "chart": gen.chart}), domain)
    charts, caveats = gen
    candidates = charts.integer_roots()
    if domain == "N":
        candidates = [v for v in candidates if v >= 1]
    failures = []
    for v0 in candidates:
        g, _ = f.substitute("v", v0)
        verdict = jst_decide(g, domain, budget=budget)
        if verdict.truth:
            return SentenceVerdict(
                True,
                Certificate("SliceWitness", v0, {"candidates": candidates, "slice": str(g), "jst": verdict.certificate}),
                domain,
                caveats,
            )
        failures.append({"v0": v0, "jst": verdict.certificate})
    return SentenceVerdict(
        False,
        Certificate("AllCandidatesFail", candidates, {"failures": failures}),
        domain,
        caveats,
    )


# ----------------------------------------------------------- brute force


@dataclass(frozen=True)
class BruteResult:
    falsified: bool
    witness: object = None


def _box(B: int, domain: str):
    if domain == "N":
        return range(1, B + 1)
    return [0] + [s * k for k in range(1, B + 1) for s in (1, -1)]


def brute_sentence(f: SparsePoly, B: int, pattern: str = "AE", domain: str = "N") -> BruteResult:
    """Exact search for a counterexample inside the box of radius B.

    ``pattern`` is "AE" (forall x exists y) or "EAE" (exists v forall x exists y).
    A falsifying x is a genuine counterexample; "no counterexample" only covers the box.
    """
    _check_domain(domain)
    if B > 1000:
        raise ValueError("box bound must be at most 1000")
    if pattern == "AE":
        f = _xy(f)
        for x in _box(B, domain):
            if not solve_y(f, x, domain)[0]:
                return BruteResult(True, x)
        return BruteResult(False)
    if pattern == "EAE":
        f = f.with_vars(("v", "x", "y"))
        per_v = {}
        for v in _box(B, domain):
            r = brute_sentence(f.substitute("v", v)[0], B, "AE", domain)
            if not r.falsified:
                return BruteResult(False, v)
            per_v[v] = r.witness
        return BruteResult(True, per_v)
    raise ValueError(f"unknown pattern {pattern!r}")
