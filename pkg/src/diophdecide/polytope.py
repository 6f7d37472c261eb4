"""Lattice polytopes: Newton polytopes, Q_F, interior lattice points, normalized volume.

Hulls are computed exactly over the integers by brute-force facet
enumeration, which is plenty for the small point sets seen here (ambient
dimension <= 3 in the tested envelope).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .poly import PolySystem, SparsePoly

Point = tuple[int, ...]


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points in ZZ^dim.

    ``facets`` holds inequalities ``(normal, offset)`` meaning
    ``normal . x <= offset``; it is empty unless the polytope is
    full-dimensional.
    """

    dim: int
    vertices: tuple[Point, ...]
    affine_dim: int
    facets: tuple[tuple[Point, int], ...] = ()

    @property
    def full_dimensional(self) -> bool:
        return self.affine_dim == self.dim and self.dim > 0

    def contains(self, point: Sequence[int], strict: bool = False) -> bool:
        if not self.full_dimensional:
            raise ValueError("containment test needs a full-dimensional polytope")
        for normal, off in self.facets:
            s = sum(a * b for a, b in zip(normal, point))
            if s > off or (strict and s == off):
                return False
        return True


def _rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                t = m[i][col] / m[rank][col]
                m[i] = [a - t * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _normalize(normal):
    g = reduce(math.gcd, normal, 0)
    return tuple(x // g for x in normal) if g else tuple(normal)


def _det(rows) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    # Laplace along the first row; only used for small n
    return sum(
        (-1) ** j * rows[0][j] * _det([r[:j] + r[j + 1 :] for r in rows[1:]])
        for j in range(n)
        if rows[0][j]
    )


def _hyperplane_normal(diffs) -> Point:
    """Integer vector orthogonal to the n-1 given vectors in ZZ^n (cofactors)."""
    n = len(diffs) + 1
    return tuple(
        (-1) ** j * _det([d[:j] + d[j + 1 :] for d in diffs]) for j in range(n)
    )


def _full_dim_hull(points: list[Point], n: int):
    if n == 1:
        lo = min(p[0] for p in points)
        hi = max(p[0] for p in points)
        return ((lo,), (hi,)), (((1,), hi), ((-1,), -lo))
    facets = {}
    for combo in itertools.combinations(points, n):
        base = combo[0]
        diffs = [_sub(q, base) for q in combo[1:]]
        normal = _hyperplane_normal(diffs)
        if not any(normal):
            continue
        normal = _normalize(normal)
        side = [_dot(normal, _sub(q, base)) for q in points]
        if all(s <= 0 for s in side):
            facets[normal] = _dot(normal, base)
        elif all(s >= 0 for s in side):
            neg = tuple(-x for x in normal)
            facets[neg] = _dot(neg, base)
    facet_list = tuple(sorted(facets.items()))
    vertices = []
    for p in points:
        tight = [nrm for nrm, off in facet_list if _dot(nrm, p) == off]
        if tight and _rank(tight) == n:
            vertices.append(p)
    return tuple(sorted(vertices)), facet_list


def convex_hull(points: Sequence[Sequence[int]], dim: int | None = None) -> LatticePolytope:
    pts = sorted({tuple(int(c) for c in p) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty set")
    n = len(pts[0]) if dim is None else dim
    if n == 0:
        return LatticePolytope(0, tuple(pts), 0)
    diffs = [_sub(p, pts[0]) for p in pts[1:]]
    k = _rank(diffs) if diffs else 0
    if k == n:
        verts, facets = _full_dim_hull(pts, n)
        return LatticePolytope(n, verts, n, facets)
    if k == 0:
        return LatticePolytope(n, (pts[0],), 0)
    # project onto k coordinates that stay independent on the affine hull
    for coords in itertools.combinations(range(n), k):
        proj = [tuple(d[c] for c in coords) for d in diffs]
        if _rank(proj) == k:
            break
    lookup = {tuple(p[c] for c in coords): p for p in pts}
    verts, _ = _full_dim_hull(list(lookup), k)
    return LatticePolytope(n, tuple(sorted(lookup[v] for v in verts)), k)


def newton(f: SparsePoly) -> LatticePolytope:
    """Newton polytope: hull of the exponent vectors of f."""
    if f.is_zero():
        raise ValueError("Newton polytope of the zero polynomial")
    return convex_hull(list(f.terms), f.nvars)


def qf_polytope(F: PolySystem) -> LatticePolytope:
    """Hull of the origin, the unit vectors and every exponent vector of F."""
    if all(p.is_zero() for p in F.polys):
        raise ValueError("zero system")
    n = F.n
    pts = [tuple([0] * n)]
    pts += [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    for p in F.polys:
        pts.extend(p.terms)
    return convex_hull(pts, n)


def _hull_2d_order(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Monotone-chain hull; counter-clockwise, no collinear points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _ordered_facet(P: LatticePolytope, normal, off) -> list[Point]:
    on = [v for v in P.vertices if _dot(normal, v) == off]
    drop = next(j for j, c in enumerate(normal) if c)
    keep = [j for j in range(3) if j != drop]
    lookup = {(v[keep[0]], v[keep[1]]): v for v in on}
    return [lookup[q] for q in _hull_2d_order(list(lookup))]


def normalized_volume(P: LatticePolytope) -> int:
    """dim! times the Euclidean volume (standard simplex -> 1); 0 if degenerate."""
    if not P.full_dimensional:
        return 0
    n = P.dim
    if n == 1:
        return P.vertices[-1][0] - P.vertices[0][0]
    if n == 2:
        ring = _hull_2d_order(list(P.vertices))
        twice = sum(
            a[0] * b[1] - a[1] * b[0] for a, b in zip(ring, ring[1:] + ring[:1])
        )
        return abs(twice)
    if n == 3:
        apex = P.vertices[0]
        total = 0
        for normal, off in P.facets:
            if _dot(normal, apex) == off:
                continue
            ring = _ordered_facet(P, normal, off)
            for b, c in zip(ring[1:], ring[2:]):
                total += abs(_det([_sub(ring[0], apex), _sub(b, apex), _sub(c, apex)]))
        return total
    # outside the tested envelope: floating hull volume, rounded
    from scipy.spatial import ConvexHull

    vol = ConvexHull([list(v) for v in P.vertices]).volume
    return round(vol * math.factorial(n))


def interior_lattice_point(P: LatticePolytope) -> Point | None:
    """Lexicographically first lattice point strictly inside P, or None."""
    if not P.full_dimensional:
        return None
    lo = [min(v[i] for v in P.vertices) for i in range(P.dim)]
    hi = [max(v[i] for v in P.vertices) for i in range(P.dim)]
    for pt in itertools.product(*(range(a + 1, b) for a, b in zip(lo, hi))):
        if P.contains(pt, strict=True):
            return pt
    return None


def system_volume(F: PolySystem) -> int:
    """V_F, the normalized volume of Q_F."""
    return normalized_volume(qf_polytope(F))


def projection_lengths(F: PolySystem) -> tuple[int, ...]:
    """Length of the projection of n*Q_F onto each coordinate axis."""
    Q = qf_polytope(F)
    n = F.n
    return tuple(
        n * (max(v[i] for v in Q.vertices) - min(v[i] for v in Q.vertices))
        for i in range(n)
    )
