"""Command-line interface.

Exit codes: 0 success, 1 parse or flag error, 2 budget exceeded,
3 NotGeneric input or a refusal under the feasibility promise.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bounds as B
from .density import estimate_jF, estimate_rF, rational_json, scan, trace_csv
from .modular import DEFAULT_ENUM_BUDGET, BudgetError
from .poly import PolySyntaxError, PolySystem, SparsePoly, UniPoly, parse
from .polytope import interior_lattice_point, projection_lengths, qf_polytope, normalized_volume
from .qfeas import RigorousInfeasibleError, decide_qfeasible, factor_count_oracle
from .resultant import NotGeneric, discriminant, resultant
from .sentences import DEFAULT_CONG_BUDGET, eae_decide, genericity, jst_decide

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_REFUSED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common(p, *, system=True):
    if system:
        p.add_argument("polys", nargs="*", help="polynomials (or use --file)")
        p.add_argument("--file", help="UTF-8 file, one polynomial per line")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="diophdecide", description="Diophantine decision procedures and prime-density statistics")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("density", help="scan pi, pi_F, N_F up to --xmax")
    _common(p)
    p.add_argument("--xmax", type=int, default=10**5)
    p.add_argument("--cap", type=_positive)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--budget-enum", type=_positive, default=DEFAULT_ENUM_BUDGET)

    p = sub.add_parser("qfeas", help="rational feasibility under the transitivity promise")
    _common(p)
    p.add_argument("--xmax", type=int, default=10**5)
    p.add_argument("--cap", type=_positive)
    p.add_argument("--mode", choices=("empirical", "rigorous"), default="empirical")
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--budget-enum", type=_positive, default=DEFAULT_ENUM_BUDGET)

    for name, helptext in (("jst", "forall x exists y f(x,y) = 0"), ("eae", "exists v forall x exists y f(v,x,y) = 0")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        p.add_argument("--domain", choices=("N", "Z"), default="N")
        p.add_argument("--budget-cong", type=_positive, default=DEFAULT_CONG_BUDGET)

    p = sub.add_parser("genericity", help="pre-checks of the exists-forall-exists pipeline")
    _common(p)

    p = sub.add_parser("bounds", help="table of the explicit bound formulas")
    _common(p)
    p.add_argument("--xmax", type=int, default=1 << B.MIN_EXPONENT)
    p.add_argument("--zf", type=_positive, help="#Z_F when known")

    p = sub.add_parser("disc", help="discriminant of a univariate polynomial")
    _common(p)

    p = sub.add_parser("resultant", help="Sylvester resultant of two polynomials")
    _common(p)
    p.add_argument("--var", default="x")

    p = sub.add_parser("volume", help="Q_F polytope report")
    _common(p)

    p = sub.add_parser("survey", help="fraction of random univariates with estimate_rF = 1")
    _common(p, system=False)
    p.add_argument("--degree", type=_positive, default=3)
    p.add_argument("--coeff-bound", type=_positive, action="append", dest="coeff_bounds")
    p.add_argument("--samples", type=_positive, default=200)
    p.add_argument("--xmax", type=int, default=10**4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--oracle", action="store_true", help="also count irreducibles with the factor oracle")
    return ap


# ---------------------------------------------------------------- input


def _read_polys(args) -> list[str]:
    texts = list(args.polys)
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            texts += [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not texts:
        raise UsageError("no polynomial given")
    return texts


def _system(args) -> PolySystem:
    return PolySystem.from_strings(_read_polys(args))


def _single(args, vars=None) -> SparsePoly:
    texts = _read_polys(args)
    if len(texts) != 1:
        raise UsageError(f"expected one polynomial, got {len(texts)}")
    return parse(texts[0], vars)


# --------------------------------------------------------------- output


def _emit(out, fmt: str, data: dict, rows: list[tuple] | None = None):
    if fmt == "json":
        json.dump(data, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    if rows is None:
        rows = [(k, v if not isinstance(v, (dict, list)) else json.dumps(v)) for k, v in data.items()]
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(rows)
    else:
        width = max((len(str(k)) for k, _ in rows), default=0)
        for k, v in rows:
            out.write(f"{str(k).ljust(width)}  {v}\n")


def _qstr(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# ------------------------------------------------------------- commands


def cmd_density(args, out):
    F = _system(args)
    if args.xmax < 2:
        raise UsageError("--xmax must be at least 2")
    rep = scan(F, args.xmax, args.cap, trace=args.trace, threads=args.threads, budget=args.budget_enum)
    if args.format == "csv" and args.trace:
        out.write(trace_csv(rep))
        return EXIT_OK
    data = rep.to_dict()
    if rep.pi:
        data["estimate_rF"] = estimate_rF(rep)
        data["estimate_jF"] = rational_json(estimate_jF(rep))
    if args.format == "json":
        _emit(out, "json", data)
        return EXIT_OK
    rows = [(k, data[k]) for k in ("system", "x_max", "cap", "pi", "pi_F", "N_F")]
    if rep.pi:
        rows += [
            ("pi_F/pi", f"{_qstr(rep.ratio_piF)} ~ {float(rep.ratio_piF):.6f}"),
            ("N_F/pi", f"{_qstr(rep.ratio_NF)} ~ {float(rep.ratio_NF):.6f}"),
            ("estimate_rF", data["estimate_rF"]),
        ]
    rows.append(("degenerate_primes", " ".join(map(str, rep.degenerate)) or "-"))
    _emit(out, args.format, data, rows)
    return EXIT_OK


def cmd_qfeas(args, out):
    F = _system(args)
    v = decide_qfeasible(F, args.xmax, args.mode, cap=args.cap, threads=args.threads, budget=args.budget_enum)
    data = v.to_dict()
    data["system"] = str(F)
    _emit(out, args.format, data)
    return EXIT_REFUSED if v.verdict == "PromiseUnknown" else EXIT_OK


def cmd_jst(args, out):
    f = _single(args, ("x", "y"))
    v = jst_decide(f, args.domain, budget=args.budget_cong)
    data = {"sentence": f"forall x exists y: {f} = 0", **v.to_dict()}
    _emit(out, args.format, data)
    return EXIT_OK


def cmd_eae(args, out):
    f = _single(args, ("v", "x", "y"))
    v = eae_decide(f, args.domain, budget=args.budget_cong)
    data = {"sentence": f"exists v forall x exists y: {f} = 0", **v.to_dict()}
    _emit(out, args.format, data)
    return EXIT_REFUSED if v.truth is None else EXIT_OK


def cmd_genericity(args, out):
    f = _single(args, ("v", "x", "y"))
    g = genericity(f)
    if isinstance(g, NotGeneric):
        _emit(out, args.format, {"generic": False, "reason": g.reason, "chart": g.chart})
        return EXIT_REFUSED
    charts, caveats = g
    data = {
        "generic": True,
        "chart_resultant_degrees": {k: R.degree for k, R in charts.charts.items()},
        "candidates": charts.integer_roots(),
        "caveats": list(caveats),
    }
    _emit(out, args.format, data)
    return EXIT_OK


def cmd_bounds(args, out):
    F = _system(args)
    ctx = B.context_from_system(F, args.zf)
    rows = B.bound_table(ctx, args.xmax)
    _emit(out, args.format, {k: v for k, v in rows}, rows)
    return EXIT_OK


def cmd_disc(args, out):
    f = _single(args)
    if f.nvars != 1:
        raise UsageError("disc needs a univariate polynomial")
    d = discriminant(f.to_uni())
    if args.format == "text":
        out.write(f"{d}\n")
    else:
        _emit(out, args.format, {"polynomial": str(f), "discriminant": str(d)})
    return EXIT_OK


def cmd_resultant(args, out):
    texts = _read_polys(args)
    if len(texts) != 2:
        raise UsageError("resultant needs exactly two polynomials")
    F = PolySystem.from_strings(texts)
    f, g = F.polys
    if args.var not in F.vars:
        raise UsageError(f"variable {args.var!r} does not occur")
    r = resultant(f, g, args.var)
    if args.format == "text":
        out.write(f"{r}\n")
    else:
        _emit(out, args.format, {"f": str(f), "g": str(g), "var": args.var, "resultant": str(r)})
    return EXIT_OK


def cmd_volume(args, out):
    F = _system(args)
    Q = qf_polytope(F)
    data = {
        "system": str(F),
        "vars": list(F.vars),
        "vertices": [list(v) for v in Q.vertices],
        "affine_dim": Q.affine_dim,
        "V_F": normalized_volume(Q),
        "projection_lengths": list(projection_lengths(F)),
        "interior_lattice_point": None if (p := interior_lattice_point(Q)) is None else list(p),
    }
    _emit(out, args.format, data)
    return EXIT_OK


# ---------------------------------------------------------------- survey


def _survey_one(job):
    coeffs, x_max, oracle = job
    f = UniPoly(coeffs)
    F = PolySystem.from_polys([SparsePoly.from_uni(f)])
    r = estimate_rF(scan(F, x_max))
    return r, (factor_count_oracle(f) if oracle else None)


def survey(degree: int, c: int, samples: int, x_max: int, seed: int = 0, threads: int = 1, oracle: bool = False) -> dict:
    """Sample random degree-``degree`` polynomials with coefficients in [-c, c].

    Reports the fraction whose estimated r_F is 1.
    """
    if degree > 6:
        raise ValueError("survey degree must be at most 6")
    if samples > 10**4:
        raise ValueError("at most 10^4 samples")
    rng = random.Random(f"{seed}:{degree}:{c}")
    jobs = []
    for _ in range(samples):
        cs = [rng.randint(-c, c) for _ in range(degree)]
        lead = 0
        while lead == 0:
            lead = rng.randint(-c, c)
        jobs.append((cs + [lead], x_max, oracle))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_survey_one, jobs, chunksize=max(1, samples // (4 * threads))))
    else:
        results = [_survey_one(j) for j in jobs]
    ones = sum(1 for r, _ in results if r == 1)
    row = {
        "degree": degree,
        "c": c,
        "samples": samples,
        "x_max": x_max,
        "seed": seed,
        "estimate_one": ones,
        "fraction_transitive_estimate": rational_json(Fraction(ones, samples)),
    }
    if oracle:
        irr = sum(1 for _, o in results if o == 1)
        row["oracle_one"] = irr
        row["mismatches"] = sum(1 for r, o in results if r != o)
    return row


def cmd_survey(args, out):
    cs = args.coeff_bounds or [10, 100, 1000]
    table = [survey(args.degree, c, args.samples, args.xmax, args.seed, args.threads, args.oracle) for c in cs]
    if args.format == "json":
        _emit(out, "json", {"seed": args.seed, "table": table})
        return EXIT_OK
    cols = ["degree", "c", "samples", "x_max", "estimate_one", "fraction"]
    if args.oracle:
        cols += ["oracle_one", "mismatches"]
    lines = []
    for row in table:
        frac = Fraction(row["estimate_one"], row["samples"])
        vals = {**row, "fraction": f"{float(frac):.4f}"}
        lines.append([vals[c] for c in cols])
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(cols)
        w.writerows(lines)
    else:
        out.write(f"seed {args.seed}\n")
        out.write("  ".join(f"{c:>12}" for c in cols) + "\n")
        for ln in lines:
            out.write("  ".join(f"{str(v):>12}" for v in ln) + "\n")
    return EXIT_OK


COMMANDS = {
    "density": cmd_density,
    "qfeas": cmd_qfeas,
    "jst": cmd_jst,
    "eae": cmd_eae,
    "genericity": cmd_genericity,
    "bounds": cmd_bounds,
    "disc": cmd_disc,
    "resultant": cmd_resultant,
    "volume": cmd_volume,
    "survey": cmd_survey,
}


def _fail(err, code: int, kind: str, message: str) -> int:
    err.write(json.dumps({"error": kind, "exit": code, "message": message}) + "\n")
    return code


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        return _fail(err, EXIT_PARSE, "usage", str(e))
    except PolySyntaxError as e:
        return _fail(err, EXIT_PARSE, "parse", str(e))
    except (BudgetError, RigorousInfeasibleError) as e:
        return _fail(err, EXIT_BUDGET, "budget", str(e))
    except (ValueError, OSError) as e:
        return _fail(err, EXIT_PARSE, "input", str(e))


def run(argv) -> tuple[int, str, str]:
    """Run the CLI in-process and capture (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()
