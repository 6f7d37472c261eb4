"""Evaluators for the explicit bound formulas.

Everything transcendental is computed in interval arithmetic (mpmath's
interval context, 128-bit mantissas by default, outward rounding).  All
logarithms are natural.  Evaluators return a :class:`BoundValue` carrying
the enclosing interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import ctx_iv, libmp

from .poly import PolySystem, gcd_q, size, squarefree_part
from .polytope import projection_lengths, system_volume

PREC = 128
X_MIN = 33766
MIN_EXPONENT = 16  # 2**16 is the least power of two above X_MIN


def _ctx(prec: int = PREC):
    c = ctx_iv.MPIntervalContext()
    c.prec = prec
    return c


def _iv_ceil(iv, x):
    lo, hi = x._mpi_
    return iv.mpf([libmp.to_int(lo, "c"), libmp.to_int(hi, "c")])



def _alpha(iv):
    return 2 - iv.mpf(3) / (4 * iv.log(2))


@dataclass(frozen=True)
class BoundValue:
    """An enclosing interval [lower, upper] for one formula evaluation."""

    lower: mpmath.mpf
    upper: mpmath.mpf
    formula: str
    inputs: dict = field(default_factory=dict)

    @classmethod
    def from_iv(cls, val, formula: str, **inputs) -> BoundValue:
        lo, hi = val._mpi_
        if lo == libmp.fninf or hi == libmp.finf:
            raise OverflowError(f"{formula}: interval is unbounded")
        return cls(mpmath.mp.make_mpf(lo), mpmath.mp.make_mpf(hi), formula, inputs)

    def iv(self, iv):
        return iv.mpf([self.lower, self.upper])

    @property
    def width(self) -> mpmath.mpf:
        with mpmath.workprec(PREC):
            return self.upper - self.lower

    @property
    def mid(self) -> mpmath.mpf:
        with mpmath.workprec(PREC):
            return (self.lower + self.upper) / 2

    def __float__(self):
        return float(self.mid)

    def __lt__(self, other):
        # certainly below: an undecided comparison counts as False
        iv = _ctx()
        return (self.iv(iv) < _as_iv(iv, other)) is True

    def __ge__(self, other):
        iv = _ctx()
        return (self.iv(iv) >= _as_iv(iv, other)) is True

    def digits(self, n: int = 12) -> str:
        with mpmath.workprec(PREC):
            return mpmath.nstr(self.mid, n)

    def __str__(self):
        return self.digits()


# ------------------------------------------------------------- context


@dataclass(frozen=True)
class BoundContext:
    """Size parameters of a system.

    ``zf`` is #Z_F when the caller knows it (and the zero set is finite);
    with ``m <= n`` it replaces delta and the underlined V_F occurrences.
    """

    n: int
    m: int
    d: int
    sigma: int
    V_F: int
    mu: int
    k: int
    c: int
    p: tuple[int, ...]
    zf: int | None = None

    def __post_init__(self):
        for name in ("n", "m", "d", "sigma", "V_F", "mu", "k", "c"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if len(self.p) != self.n:
            raise ValueError("need one projection length per variable")
        if self.zf is not None and self.zf < 1:
            raise ValueError("zf must be positive")

    @property
    def zf_applies(self) -> bool:
        return self.zf is not None and self.m <= self.n

    @property
    def delta(self) -> int:
        return self.zf if self.zf_applies else self.V_F

    def with_zf(self, zf: int | None) -> BoundContext:
        return BoundContext(self.n, self.m, self.d, self.sigma, self.V_F, self.mu, self.k, self.c, self.p, zf)


def _univariate_zero_count(F: PolySystem) -> int:
    g = F.polys[0].to_uni()
    for q in F.polys[1:]:
        g = gcd_q(g, q.to_uni())
    return squarefree_part(g).degree


def context_from_system(F: PolySystem, zf: int | None = None) -> BoundContext:
    """Fill a BoundContext from F.  For n = 1 the zero count is derived exactly."""
    coeffs = [c for q in F.polys for c in q.terms.values()]
    if not coeffs:
        raise ValueError("zero system")
    if zf is None and F.n == 1:
        zf = _univariate_zero_count(F) or None
    return BoundContext(
        n=F.n,
        m=F.m,
        d=max(q.total_degree() for q in F.polys),
        sigma=max(size(c) for c in coeffs),
        V_F=system_volume(F),
        mu=max(len(q.terms) for q in F.polys),
        k=len(coeffs),
        c=max(abs(c) for c in coeffs),
        p=projection_lengths(F),
        zf=zf,
    )


# ------------------------------------------------------------ brackets


@dataclass(frozen=True)
class LiBracket:
    approx: BoundValue
    li_factor: BoundValue
    pi_factor: BoundValue

    def pi_within(self, count: int) -> bool:
        """count lies within pi_factor of approx (both directions, whole interval)."""
        iv = _ctx()
        a, f = self.approx.iv(iv), self.pi_factor.iv(iv)
        return (count * f > a) is True and (count < a * f) is True


def li_bracket(x: int) -> LiBracket:
    if x <= 2:
        raise ValueError("x must exceed 2")
    iv = _ctx()
    L = iv.log(iv.mpf(x))
    approx = x * (1 / L + 1 / L**2) - 2 / iv.log(2)
    return LiBracket(
        BoundValue.from_iv(approx, "li_approx", x=x),
        BoundValue.from_iv(1 + 6 / L, "li_factor", x=x),
        BoundValue.from_iv(1 + 7 / L, "pi_factor", x=x),
    )


# ------------------------------------------------------------ Mignotte


def _ceil_sqrt(N: int) -> int:
    return 0 if N == 0 else math.isqrt(N - 1) + 1


def mignotte_bound(d, c: int, j) -> int:
    """Ceiling of c * prod C(d_i, j_i) * sqrt(d_i + 1), exactly."""
    d, j = tuple(d), tuple(j)
    if len(d) != len(j):
        raise ValueError("d and j differ in length")
    if any(x < 0 for x in d + j) or c < 0:
        raise ValueError("entries must be nonnegative")
    if any(b > a for a, b in zip(d, j)):
        raise ValueError("j exceeds d")
    A = c * math.prod(math.comb(a, b) for a, b in zip(d, j))
    P = math.prod(a + 1 for a in d)
    return _ceil_sqrt(A * A * P)


def alpha() -> BoundValue:
    iv = _ctx()
    return BoundValue.from_iv(_alpha(iv), "alpha")


def mignotte_sigma(sigma_f, d1: int) -> BoundValue:
    """sigma(f) + (d1 + alpha) log 2: size bound for any factor of a univariate f."""
    iv = _ctx()
    v = _as_iv(iv, sigma_f) + (d1 + _alpha(iv)) * iv.log(2)
    return BoundValue.from_iv(v, "mignotte_sigma", sigma_f=sigma_f, d1=d1)


def _as_iv(iv, v):
    if isinstance(v, BoundValue):
        return v.iv(iv)
    if isinstance(v, Fraction):
        return iv.mpf(v.numerator) / v.denominator
    return iv.mpf(v)


# --------------------------------------------------------- discriminant


def _disc_log(iv, sigma, delta: int):
    return (
        (2 * delta - 1) * sigma
        + iv.mpf(2 * delta - 1) / 2 * iv.log(delta + 1)
        + iv.mpf(delta) / 2 * iv.log(iv.mpf(delta * (2 * delta + 1)) / 6)
    )


def disc_log_bound(sigma, delta: int) -> BoundValue:
    """Upper bound for log|discriminant| of a square-free degree-delta g with sigma(g) <= sigma."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    iv = _ctx()
    return BoundValue.from_iv(_disc_log(iv, _as_iv(iv, sigma), delta), "disc_log_bound", sigma=sigma, delta=delta)


# ------------------------------------------------------ height of h_F


def _MF(iv, ctx: BoundContext):
    n = ctx.n
    return (
        iv.exp(iv.mpf(1) / 8) * iv.exp(n) / iv.sqrt(n + 1) * ctx.V_F
        + math.prod(q + 2 for q in ctx.p)
        - math.prod(q + 1 for q in ctx.p)
    )


def MF_bound(ctx: BoundContext) -> BoundValue:
    iv = _ctx()
    return BoundValue.from_iv(_MF(iv, ctx), "MF_bound", ctx=ctx)


def _sigma_hF(iv, ctx: BoundContext):
    if ctx.V_F < 1 or ctx.n < 1:
        raise ValueError("sigma(h_F) bound needs V_F >= 1 and n >= 1")
    n, m, V = ctx.n, ctx.m, ctx.V_F
    MF = _MF(iv, ctx)
    under = ctx.zf if ctx.zf_applies else V
    # clamp: the ceiling vanishes when the underlined quantity is 1
    ceil1 = max(1, -(-(n * under * (under - 1)) // 4))
    km = _iv_ceil(iv, ctx.k * MF / 2)
    if m <= n:
        inner = ctx.c + km
    else:
        inner = m * (-(-(m * V) // 2)) * ctx.c + km
    val = (
        iv.log(16 * iv.sqrt(2) / iv.exp(3))
        + iv.log(n + 1) / 2
        - iv.log(iv.mpf(n * V))
        + MF * iv.log(4)
        + V * (iv.mpf(3) / 2 * iv.log(n) + iv.log(ceil1))
        + (MF - V) * (iv.log(ctx.mu) / 2 + iv.log(inner))
    )
    if ctx.zf_applies:
        val = val + (V + _alpha(iv)) * iv.log(2)
    return val


def sigma_hF_bound(ctx: BoundContext) -> BoundValue:
    iv = _ctx()
    return BoundValue.from_iv(_sigma_hF(iv, ctx), "sigma_hF_bound", ctx=ctx)


def _sigma_hat(iv, ctx: BoundContext):
    delta = ctx.delta
    return _sigma_hF(iv, ctx) + delta * iv.log(2 * ctx.n + 1) + (ctx.V_F + _alpha(iv)) * iv.log(2)


def sigma_hat_bound(ctx: BoundContext) -> BoundValue:
    iv = _ctx()
    return BoundValue.from_iv(_sigma_hat(iv, ctx), "sigma_hat_bound", ctx=ctx)


# ------------------------------------------------- primitive element


@dataclass(frozen=True)
class PrimBounds:
    sigma_hi: BoundValue
    log_ai: BoundValue
    sigma_r: BoundValue
    log_B1: BoundValue


def _prim(iv, delta: int, sh):
    d = delta
    log_B1 = (d - 1) * iv.log(4 * iv.mpf(16) ** (d + 1) / iv.exp(iv.mpf(9) / 4) * iv.sqrt(iv.mpf(d + 1) ** 5)) + 2 * (
        d - 1
    ) * sh
    sigma_r = iv.mpf(d * d - d + 2) / 2 * iv.log(iv.exp(2 * log_B1) + iv.mpf(d * (d - 1)) / 2)
    sigma_hi = (
        (2 * d * d - 2 * d + 1) * sigma_r
        + (2 * d * d + 1) * sh
        + iv.log(iv.mpf(d * d + 1) ** (d * d) * iv.mpf(d + 1) ** (d + 1) * (d * d - d + 1))
    )
    log_ai = (
        d * (d - 1) * sigma_r
        + (d * d + 1) * sh
        + iv.log(iv.mpf(d * d + 1) ** (d * d) * iv.mpf(d + 1) ** d) / 2
    )
    return sigma_hi, log_ai, sigma_r, log_B1


def prim_bounds_from(delta: int, sigma_hat) -> PrimBounds:
    """sigma(h_i), log a_i, sigma(r), log B_1 from delta and a bound on sigma(h^_F)."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    iv = _ctx()
    vals = _prim(iv, delta, _as_iv(iv, sigma_hat))
    names = ("sigma_hi", "log_ai", "sigma_r", "log_B1")
    return PrimBounds(*(BoundValue.from_iv(v, k, delta=delta, sigma_hat=sigma_hat) for v, k in zip(vals, names)))


def prim_bounds(ctx: BoundContext) -> PrimBounds:
    iv = _ctx()
    return prim_bounds_from(ctx.delta, BoundValue.from_iv(_sigma_hat(iv, ctx), "sigma_hat_bound"))


# ------------------------------------------------------- density error


def _log_x(iv, x: int | None, log2x: int | None):
    if log2x is not None:
        return log2x * iv.log(2)
    return iv.log(iv.mpf(x))


def _check_x(x, log2x):
    if (x is None) == (log2x is None):
        raise ValueError("give exactly one of x and log2x")
    if x is not None and x <= X_MIN:
        raise ValueError(f"x must exceed {X_MIN}")
    if log2x is not None and log2x < MIN_EXPONENT:
        raise ValueError(f"2^{log2x} does not exceed {X_MIN}")


def _bFx(iv, ctx: BoundContext, lx):
    delta, n = ctx.delta, ctx.n
    sh = _sigma_hat(iv, ctx)
    L = _disc_log(iv, sh, delta)
    _, log_ai, _, _ = _prim(iv, delta, sh)
    sx = iv.exp(lx / 2)
    return (4 * delta * lx**2 + (4 * L + 2 * delta * (L + 2 * n + 2 * n * log_ai) / sx) * lx) / sx


def bFx(ctx: BoundContext, x: int | None = None, *, log2x: int | None = None, prec: int = PREC) -> BoundValue:
    """The explicit error term b(F, x) for N_F/pi - r_F, at x or at x = 2**log2x."""
    _check_x(x, log2x)
    iv = _ctx(prec)
    return BoundValue.from_iv(_bFx(iv, ctx, _log_x(iv, x, log2x)), "bFx", x=x, log2x=log2x)


def assertion1_bound(ctx: BoundContext, zf: int, x: int | None = None, *, log2x: int | None = None) -> BoundValue:
    """Upper bound for pi_F/pi when Galois acts transitively on #Z_F = zf >= 2 roots."""
    _check_x(x, log2x)
    if zf < 2:
        raise ValueError("needs #Z_F >= 2")
    iv = _ctx()
    lx = _log_x(iv, x, log2x)
    sx = iv.exp(lx / 2)
    sh = _sigma_hF(iv, ctx)
    d = zf
    Lg = (
        2 * (d - 1) * (sh + (ctx.V_F + _alpha(iv)) * iv.log(2))
        + iv.mpf(2 * d - 1) / 2 * iv.log(d + 1)
        + iv.mpf(d) / 2 * iv.log(iv.mpf(d * (2 * d + 1)) / 6)
    )
    fz = math.factorial(zf)
    inner = ((fz + 1) * lx**2 + 2 * (fz * Lg + iv.mpf(zf) / (zf - 1) * (sh + 1) / sx) * lx) / sx
    val = (1 - iv.mpf(1) / zf) * (1 + inner)
    return BoundValue.from_iv(val, "assertion1_bound", zf=zf, x=x, log2x=log2x)


def aF_star(ctx: BoundContext) -> BoundValue:
    """n + n * sigma(h_F) bound: at most this many primes lack a root when F has a rational one."""
    iv = _ctx()
    return BoundValue.from_iv(ctx.n + ctx.n * _sigma_hF(iv, ctx), "aF_star", ctx=ctx)


# ------------------------------------------------------- rigorous M


@dataclass(frozen=True)
class RigorousM:
    M_bitlength: int
    attained_bound: BoundValue
    bound_at_half: BoundValue | None

    @property
    def log2M(self) -> int:
        return self.M_bitlength - 1


def _below(ctx, e: int, target: Fraction) -> bool:
    prec = PREC
    while True:
        iv = _ctx(prec)
        b = _bFx(iv, ctx, e * iv.log(2))
        t = iv.mpf(target.numerator) / target.denominator
        res = b < t
        if res is not None:
            return bool(res)
        prec *= 2
        if prec > 1 << 14:
            raise ArithmeticError("comparison with the target stays undecided")


def rigorous_M(ctx: BoundContext, target=Fraction(1, 10)) -> RigorousM:
    """Least power of two M > 33766 with b(F, M) < target.

    Doubling on the exponent, then bisection.  M itself is never formed;
    only its bit-length is reported.
    """
    target = Fraction(target)
    if not 0 < target < 1:
        raise ValueError("target must lie in (0, 1)")
    lo = MIN_EXPONENT
    if _below(ctx, lo, target):
        e = lo
    else:
        hi = lo * 2
        while not _below(ctx, hi, target):
            lo, hi = hi, hi * 2
        # invariant: fails at lo, holds at hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _below(ctx, mid, target):
                hi = mid
            else:
                lo = mid
        e = hi
    half = bFx(ctx, log2x=e - 1) if e - 1 >= MIN_EXPONENT else None
    return RigorousM(e + 1, bFx(ctx, log2x=e), half)


# ------------------------------------------------------------ table


def bound_table(ctx: BoundContext, x: int | None = None) -> list[tuple[str, str]]:
    """Labelled values of every evaluator for one context (x defaults to 2**16)."""
    x = x if x is not None else 1 << MIN_EXPONENT
    pb = prim_bounds(ctx)
    rows = [
        ("n", str(ctx.n)),
        ("m", str(ctx.m)),
        ("d", str(ctx.d)),
        ("sigma(F)", str(ctx.sigma)),
        ("V_F", str(ctx.V_F)),
        ("mu", str(ctx.mu)),
        ("k", str(ctx.k)),
        ("c", str(ctx.c)),
        ("p", " ".join(map(str, ctx.p))),
        ("#Z_F", "unknown" if ctx.zf is None else str(ctx.zf)),
        ("delta", str(ctx.delta)),
        ("alpha", alpha().digits()),
        ("M_F", MF_bound(ctx).digits()),
        ("sigma(h_F)", sigma_hF_bound(ctx).digits()),
        ("sigma(h^_F)", sigma_hat_bound(ctx).digits()),
        ("log B_1", pb.log_B1.digits()),
        ("sigma(r)", pb.sigma_r.digits()),
        ("sigma(h_i)", pb.sigma_hi.digits()),
        ("log a_i", pb.log_ai.digits()),
        ("log|disc h^_F|", disc_log_bound(sigma_hat_bound(ctx), ctx.delta).digits()),
        ("a*_F", aF_star(ctx).digits()),
    ]
    if x > X_MIN:
        rows.append((f"b(F,{x})", bFx(ctx, x).digits()))
        if ctx.zf is not None and ctx.zf >= 2:
            rows.append((f"assertion1({x})", assertion1_bound(ctx, ctx.zf, x).digits()))
        lb = li_bracket(x)
        rows.append((f"li_approx({x})", lb.approx.digits()))
    rM = rigorous_M(ctx)
    rows.append(("rigorous M bit-length", str(rM.M_bitlength)))
    rows.append(("b(F,M)", rM.attained_bound.digits()))
    return rows
