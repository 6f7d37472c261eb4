"""Prime-density statistics pi(x), pi_F(x), N_F(x) and the estimators built on them."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .modular import (
    DEFAULT_ENUM_BUDGET,
    BudgetError,
    batch_distinct_roots,
    enumeration_cost,
    is_degenerate,
    is_prime,
    primes_between,
    system_roots_mod_p,
)
from .poly import PolySystem


@dataclass(frozen=True)
class PrimeRow:
    p: int
    root_count: int
    degenerate: bool


@dataclass(frozen=True)
class DensityReport:
    """Counters over the primes in ``(lo, hi]``.

    ``N_F`` sums the capped root counts; ``degenerate`` lists primes where a
    polynomial of the system vanished identically (their contribution is
    ``min(p, cap)``).  ``gaps`` lists sub-ranges of ``(lo, hi]`` whose primes
    are not counted yet; it is only non-empty for partial merges.
    """

    system: str
    cap: int
    lo: int
    hi: int
    pi: int = 0
    pi_F: int = 0
    N_F: int = 0
    degenerate: tuple[int, ...] = ()
    rows: tuple[PrimeRow, ...] | None = None
    gaps: tuple[tuple[int, int], ...] = ()

    @property
    def x_max(self) -> int:
        return self.hi

    @property
    def ratio_piF(self) -> Fraction:
        return Fraction(self.pi_F, self.pi)

    @property
    def ratio_NF(self) -> Fraction:
        return Fraction(self.N_F, self.pi)

    def is_empty(self) -> bool:
        return self.hi <= self.lo

    def to_dict(self) -> dict:
        d = {
            "system": self.system,
            "x_max": self.hi,
            "lo": self.lo,
            "cap": self.cap,
            "pi": self.pi,
            "pi_F": self.pi_F,
            "N_F": self.N_F,
            "degenerate_primes": list(self.degenerate),
        }
        if self.pi:
            d["ratio_piF"] = rational_json(self.ratio_piF)
            d["ratio_NF"] = rational_json(self.ratio_NF)
        if self.gaps:
            d["gaps"] = [list(g) for g in self.gaps]
        if self.rows is not None:
            d["rows"] = [[r.p, r.root_count, r.degenerate] for r in self.rows]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> DensityReport:
        rows = None
        if "rows" in d:
            rows = tuple(PrimeRow(int(p), int(c), bool(g)) for p, c, g in d["rows"])
        rep = cls(
            system=d["system"],
            cap=int(d["cap"]),
            lo=int(d["lo"]),
            hi=int(d["x_max"]),
            pi=int(d["pi"]),
            pi_F=int(d["pi_F"]),
            N_F=int(d["N_F"]),
            degenerate=tuple(int(p) for p in d["degenerate_primes"]),
            rows=rows,
            gaps=tuple((int(a), int(b)) for a, b in d.get("gaps", ())),
        )
        if rep.pi:
            assert parse_rational_json(d["ratio_NF"]) == rep.ratio_NF
            assert parse_rational_json(d["ratio_piF"]) == rep.ratio_piF
        return rep


def rational_json(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def parse_rational_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def empty_report(F: PolySystem, cap: int, lo: int = 1, trace: bool = False) -> DensityReport:
    return DensityReport(str(F), cap, lo, lo, rows=() if trace else None)


def _count_chunk(args):
    F, primes, cap, trace = args
    if F.n == 1 and F.m == 1:
        f = F.polys[0].to_uni()
        counts = batch_distinct_roots(f, primes)
        degen = [is_degenerate(f, p) for p in primes]
    else:
        counts = [system_roots_mod_p(F, p, p ** F.n) for p in primes]
        if F.n == 1:
            unis = [q.to_uni() for q in F.polys]
            degen = [all(is_degenerate(u, p) for u in unis) for p in primes]
        else:
            degen = [all(q.content() % p == 0 for q in F.polys) for p in primes]
    pi = len(primes)
    pi_F = sum(1 for c in counts if c >= 1)
    N_F = sum(min(c, cap) for c in counts)
    degenerate = tuple(p for p, g in zip(primes, degen) if g)
    rows = None
    if trace:
        rows = tuple(PrimeRow(p, c, g) for p, c, g in zip(primes, counts, degen))
    return pi, pi_F, N_F, degenerate, rows


def scan_range(
    F: PolySystem,
    lo: int,
    hi: int,
    cap: int,
    *,
    trace: bool = False,
    threads: int = 1,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> DensityReport:
    """Scan the primes in ``(lo, hi]``."""
    if cap < 1:
        raise ValueError("cap must be positive")
    primes = list(primes_between(lo + 1, hi).primes)
    cost = enumeration_cost(F, primes)
    if cost > budget:
        raise BudgetError(
            f"scanning {len(primes)} primes needs {cost} point evaluations; budget is {budget}"
        )
    threads = max(1, int(threads))
    if threads == 1 or len(primes) < 2 * threads:
        parts = [primes]
    else:
        step = -(-len(primes) // threads)
        parts = [primes[i : i + step] for i in range(0, len(primes), step)]
    jobs = [(F, part, cap, trace) for part in parts]
    if len(jobs) == 1:
        results = [_count_chunk(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_count_chunk, jobs))
    # chunk boundaries, so the partial reports can be merged
    bounds = [lo] + [part[-1] for part in parts[:-1]] + [hi]
    report = None
    for (pi, pi_F, N_F, degenerate, rows), a, b in zip(results, bounds, bounds[1:]):
        part = DensityReport(str(F), cap, a, b, pi, pi_F, N_F, degenerate, rows)
        report = part if report is None else merge(report, part)
    return report


def scan(
    F: PolySystem,
    x_max: int,
    cap: int | None = None,
    *,
    trace: bool = False,
    threads: int = 1,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> DensityReport:
    """pi, pi_F and N_F over all primes p <= x_max.

    ``cap`` defaults to the normalized volume V_F of the system.
    """
    if x_max < 2:
        raise ValueError("x_max must be at least 2")
    if cap is None:
        from .polytope import system_volume

        cap = max(1, system_volume(F))
    return scan_range(F, 1, x_max, cap, trace=trace, threads=threads, budget=budget)


def _has_prime(lo: int, hi: int) -> bool:
    """Is there a prime in ``(lo, hi]``?"""
    return any(is_prime(q) for q in range(lo + 1, hi + 1))


def _segments(r: DensityReport) -> list[tuple[int, int]]:
    out, cur = [], r.lo
    for a, b in r.gaps:
        out.append((cur, a))
        cur = b
    out.append((cur, r.hi))
    return out


def merge(a: DensityReport, b: DensityReport) -> DensityReport:
    """Combine reports over disjoint prime sets; commutative and associative.

    Ranges may touch, overlap on a prime-free stretch, or arrive in any
    order.  Holes between them that contain primes are kept as ``gaps``.
    """
    if a.cap != b.cap:
        raise ValueError(f"cap mismatch: {a.cap} vs {b.cap}")
    if a.system != b.system:
        raise ValueError("reports belong to different systems")
    if a.is_empty():
        return b
    if b.is_empty():
        return a
    segs = sorted(_segments(a) + _segments(b))
    merged = [segs[0]]
    for lo, hi in segs[1:]:
        plo, phi = merged[-1]
        if lo < phi:
            if _has_prime(lo, min(hi, phi)):
                raise ValueError(f"ranges ({plo}, {phi}] and ({lo}, {hi}] share primes")
            merged[-1] = (plo, max(hi, phi))
        elif not _has_prime(phi, lo):
            merged[-1] = (plo, hi)
        else:
            merged.append((lo, hi))
    gaps = tuple((x[1], y[0]) for x, y in zip(merged, merged[1:]))
    rows = None
    if a.rows is not None and b.rows is not None:
        rows = tuple(sorted(a.rows + b.rows, key=lambda r: r.p))
    return DensityReport(
        a.system,
        a.cap,
        merged[0][0],
        merged[-1][1],
        a.pi + b.pi,
        a.pi_F + b.pi_F,
        a.N_F + b.N_F,
        tuple(sorted(a.degenerate + b.degenerate)),
        rows,
        gaps,
    )


def _require_complete(report: DensityReport) -> None:
    if report.gaps:
        raise ValueError(f"report has uncounted ranges {list(report.gaps)}")


def estimate_rF(report: DensityReport) -> int:
    """Nearest integer to N_F/pi, ties rounding up."""
    _require_complete(report)
    if report.pi < 1:
        raise ValueError("empty report")
    return (2 * report.N_F + report.pi) // (2 * report.pi)


def estimate_jF(report: DensityReport) -> Fraction:
    _require_complete(report)
    if report.pi < 1:
        raise ValueError("empty report")
    return Fraction(report.pi_F, report.pi)


def trace_csv(report: DensityReport) -> str:
    """Per-prime trace with running totals: p,root_count,degenerate,cum_pi,cum_piF,cum_NF."""
    if report.rows is None:
        raise ValueError("report was produced without trace rows")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "root_count", "degenerate", "cum_pi", "cum_piF", "cum_NF"])
    cpi = cpf = cnf = 0
    for r in report.rows:
        cpi += 1
        cpf += r.root_count >= 1
        cnf += min(r.root_count, report.cap)
        w.writerow([r.p, r.root_count, int(r.degenerate), cpi, cpf, cnf])
    return buf.getvalue()


def without_rows(report: DensityReport) -> DensityReport:
    return replace(report, rows=None)
