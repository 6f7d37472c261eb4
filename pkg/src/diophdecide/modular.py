"""Primes and root counting modulo p."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .poly import PolySystem, SparsePoly, UniPoly

DEFAULT_ENUM_BUDGET = 10**9
SEGMENT = 1 << 18


class BudgetError(RuntimeError):
    """A configured work budget would be exceeded."""


@dataclass(frozen=True)
class PrimeRange:
    lo: int
    hi: int
    primes: tuple[int, ...]

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)


def _small_primes(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.flatnonzero(flags)


def primes_between(lo: int, hi: int, segment: int = SEGMENT) -> PrimeRange:
    """All primes p with lo <= p <= hi via a segmented sieve."""
    lo = max(lo, 2)
    if hi < lo:
        return PrimeRange(lo, hi, ())
    base = _small_primes(math.isqrt(hi))
    found: list[int] = []
    start = lo
    while start <= hi:
        stop = min(start + segment, hi + 1)
        flags = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            flags[first - start :: p] = False
        found.extend((np.flatnonzero(flags) + start).tolist())
        start = stop
    return PrimeRange(lo, hi, tuple(found))


def sieve(x: int) -> PrimeRange:
    """Primes <= x, ascending.  Memory is O(sqrt(x) + segment)."""
    if x < 2:
        raise ValueError("sieve needs x >= 2")
    return primes_between(2, x)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        y = pow(a, d, n)
        if y in (1, n - 1):
            continue
        for _ in range(s - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------- F_p[x]


@dataclass(frozen=True)
class ModPoly:
    """Polynomial over Z/pZ, low degree first, leading zeros trimmed."""

    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def reduce(cls, f: UniPoly, p: int) -> ModPoly:
        cs = [c % p for c in f.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(p, tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _mp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mp_mulmod(a, b, f, p):
    """a * b mod f over F_p; f monic."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _mp_rem(prod, f, p)


def _mp_rem(a, f, p):
    """a mod f over F_p; f monic."""
    a = [c % p for c in a]
    d = len(f) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for j in range(d + 1):
                a[k - d + j] = (a[k - d + j] - c * f[j]) % p
    return _mp_trim(a[:d])


def _mp_monic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _mp_gcd_degree(a, b, p):
    a, b = _mp_trim(list(a)), _mp_trim(list(b))
    while b:
        b = _mp_monic(b, p)
        a, b = b, _mp_rem(a, b, p)
    return len(a) - 1


def _xp_minus_x_mod(f_monic, p):
    """x^p - x reduced modulo the monic f (degree >= 2) over F_p."""
    result = [1]
    base = _mp_rem([0, 1], f_monic, p)
    e = p
    while e:
        if e & 1:
            result = _mp_mulmod(result, base, f_monic, p)
        e >>= 1
        if e:
            base = _mp_mulmod(base, base, f_monic, p)
    result = list(result) + [0] * (2 - len(result))
    result[1] = (result[1] - 1) % p
    return _mp_trim(result)


def _check_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _enumerate_roots(cs, p) -> int:
    count = 0
    for a in range(p):
        acc = 0
        for c in reversed(cs):
            acc = (acc * a + c) % p
        if acc == 0:
            count += 1
    return count


def uni_distinct_roots_mod_p(f: UniPoly, p: int) -> int:
    """Number of distinct roots of f in Z/pZ.

    Computed as deg gcd(x^p - x, f mod p).  Primes p <= deg f use direct
    enumeration.  If f vanishes identically mod p every residue is a root
    and p is returned (see :func:`is_degenerate`).
    """
    _check_prime(p)
    g = ModPoly.reduce(f, p)
    if not g.coeffs:
        return p
    if g.degree == 0:
        return 0
    if g.degree == 1:
        return 1
    if p <= max(f.degree, 2):
        return _enumerate_roots(g.coeffs, p)
    fm = _mp_monic(list(g.coeffs), p)
    h = _xp_minus_x_mod(fm, p)
    if not h:
        return g.degree
    return _mp_gcd_degree(fm, h, p)


def is_degenerate(f: UniPoly, p: int) -> bool:
    """True when every coefficient of f is divisible by p."""
    return all(c % p == 0 for c in f.coeffs)


def _batch_xp_mod(fm: np.ndarray, ps: np.ndarray) -> np.ndarray:
    """x^p mod f per lane.  ``fm``: (L, D+1) monic rows; returns (L, D)."""
    L, D1 = fm.shape
    D = D1 - 1
    pcol = ps[:, None]
    res = np.zeros((L, D), dtype=np.int64)
    res[:, 0] = 1
    base = np.zeros((L, D), dtype=np.int64)
    base[:, 1] = 1

    def mulmod(a, b):
        prod = np.zeros((L, 2 * D - 1), dtype=np.int64)
        for i in range(D):
            ai = a[:, i : i + 1]
            prod[:, i : i + D] = (prod[:, i : i + D] + ai * b % pcol) % pcol
        for k in range(2 * D - 2, D - 1, -1):
            c = prod[:, k : k + 1]
            prod[:, k - D : k] = (prod[:, k - D : k] - c * fm[:, :D] % pcol) % pcol
        return prod[:, :D]

    e = ps.copy()
    while np.any(e):
        odd = (e & 1).astype(bool)
        if odd.any():
            res[odd] = mulmod(res, base)[odd]
        e >>= 1
        if np.any(e):
            base = mulmod(base, base)
    return res


def batch_distinct_roots(f: UniPoly, primes: Sequence[int]) -> list[int]:
    """``uni_distinct_roots_mod_p(f, p)`` for many primes, vectorised over p.

    Lanes with p <= deg f, p dividing the leading coefficient, or p too large
    for int64 products go through the scalar path.  Results are identical.
    """
    primes = [int(p) for p in primes]
    out = [0] * len(primes)
    D = f.degree
    if D <= 1:
        for i, p in enumerate(primes):
            out[i] = uni_distinct_roots_mod_p(f, p)
        return out
    fast = []
    for i, p in enumerate(primes):
        if p <= max(D, 2) or f.lc % p == 0 or p >= (1 << 31):
            out[i] = uni_distinct_roots_mod_p(f, p)
        else:
            fast.append(i)
    if not fast:
        return out
    ps = np.array([primes[i] for i in fast], dtype=np.int64)
    rows = []
    for i in fast:
        p = primes[i]
        inv = pow(f.lc % p, -1, p)
        rows.append([c * inv % p for c in f.coeffs])
    fm = np.array(rows, dtype=np.int64)
    xp = _batch_xp_mod(fm, ps)
    for lane, i in enumerate(fast):
        p = primes[i]
        h = [int(c) for c in xp[lane]]
        h[1] = (h[1] - 1) % p
        h = _mp_trim(h)
        if not h:
            out[i] = D
        else:
            out[i] = _mp_gcd_degree(rows[lane], h, p)
    return out


# ------------------------------------------------------------ systems


def system_roots_mod_p(F: PolySystem, p: int, cap: int, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """min(#common roots of F in (Z/pZ)^n, cap)."""
    _check_prime(p)
    if cap < 1:
        raise ValueError("cap must be positive")
    return min(_system_count(F, p, budget), cap)


def _system_count(F: PolySystem, p: int, budget: int) -> int:
    if F.n == 1:
        unis = [q.to_uni() for q in F.polys]
        if len(unis) == 1:
            return uni_distinct_roots_mod_p(unis[0], p)
        mods = [list(ModPoly.reduce(u, p).coeffs) for u in unis]
        mods = [m for m in mods if m]
        if not mods:
            return p
        if any(len(m) == 1 for m in mods):
            return 0
        if p <= max(len(m) - 1 for m in mods):
            return sum(
                1 for a in range(p) if all(_horner_mod(m, a, p) == 0 for m in mods)
            )
        g = _mp_monic(mods[0], p)
        for m in mods[1:]:
            g = _mp_gcd_poly(g, m, p)
            if len(g) == 1:
                return 0
        if len(g) == 2:
            return 1
        h = _xp_minus_x_mod(g, p)
        if not h:
            return len(g) - 1
        return _mp_gcd_degree(g, h, p)
    if p ** F.n > budget:
        raise BudgetError(f"enumerating {p}^{F.n} points exceeds the budget of {budget}")
    return _grid_count(F, p)


def _horner_mod(cs, a, p):
    acc = 0
    for c in reversed(cs):
        acc = (acc * a + c) % p
    return acc


def _mp_gcd_poly(a, b, p):
    a, b = _mp_trim(list(a)), _mp_trim(list(b))
    while b:
        b = _mp_monic(b, p)
        a, b = b, _mp_rem(a, b, p)
    return _mp_monic(a, p) if a else a


def _grid_count(F: PolySystem, p: int) -> int:
    n = F.n
    # evaluate on the full grid, one axis per variable, int64 with reduction per step
    axes = np.arange(p, dtype=np.int64)
    alive = np.ones((p,) * n, dtype=bool)
    for poly in F.polys:
        total = np.zeros((p,) * n, dtype=np.int64)
        for e, c in poly.terms.items():
            term = np.full((p,) * n, c % p, dtype=np.int64)
            for axis, k in enumerate(e):
                if k:
                    pw = np.array([pow(int(a), k, p) for a in axes], dtype=np.int64)
                    shape = [1] * n
                    shape[axis] = p
                    term = term * pw.reshape(shape) % p
            total = (total + term) % p
        alive &= total == 0
    return int(alive.sum())


def enumeration_cost(F: PolySystem, primes: Sequence[int]) -> int:
    """Point evaluations a scan of ``primes`` needs (0 for univariate systems)."""
    if F.n == 1:
        return 0
    return sum(p ** F.n for p in primes)
