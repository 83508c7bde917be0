"""volterra: compute, bound and cross-check spectra, norms and numerical ranges
of the parts of powers of the Volterra operator.

Usage:
    volterra eigs --part im --n 2                 pencil spectrum of Im V^2
    volterra eigs --part re --n 2 --count 6       transcendental families of Re V^2
    volterra norms --n 3 --m 1000                 bounds vs closed forms vs grid
    volterra nrange --n 1 --out curve.csv         intervals and W(V) boundary
    volterra accretive --a 1 --b -2               accretivity of aV + bV^2
    volterra verify --level fast                  full reproduction suite

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import constants as C
from .accretivity import QuadCoeffs, certify_numeric, is_dissipative_quadratic, resolvent_norm_check
from .analytic import imv_eigenvalues, rev2_eigenvalues
from .discretizer import GridSpec, assemble, eigenvalues_antisymmetric, eigenvalues_symmetric, op_norm
from .errors import VolterraError
from .kernels import KernelSpec, Part
from .norms import norm_report
from .numrange import brown_curve_arrays, range_interval, rayleigh_probe_re, weak_left_endpoint
from .pencil import build_pencil, pencil_eigenpairs
from .report import Check, ReportDoc, emit_csv, emit_json, emit_table
from .verify import run_all


class UsageError(Exception):
    pass


def _pencil_ok(part: Part, n: int) -> bool:
    return (part is Part.REAL and n % 2 == 1) or (part is Part.IMAG and n % 2 == 0)


def _analytic_ok(part: Part, n: int) -> bool:
    return (part, n) in ((Part.IMAG, 1), (Part.REAL, 2))


def cmd_eigs(part: Part, n: int, method: str = "auto", count: int = 10,
             m: int = C.DEFAULT_GRID) -> ReportDoc:
    doc = ReportDoc("eigs", {"part": part.value, "n": n, "method": method, "count": count, "m": m})
    if part is Part.FULL_V:
        if method not in ("auto", "discretize"):
            raise UsageError("V^n is quasinilpotent; only --method discretize/auto applies")
        norm = op_norm(assemble(KernelSpec(part, n), GridSpec(m)))
        doc.results.append({"index": 1, "value": 0.0, "source": "quasinilpotent",
                            "op_norm_discretized": norm})
        return doc
    if method == "auto":
        method = "pencil" if _pencil_ok(part, n) else "analytic" if _analytic_ok(part, n) else "discretize"
    if method == "pencil":
        if not _pencil_ok(part, n):
            raise UsageError("pencil needs --part re with odd n or --part im with even n")
        for k, pair in enumerate(pencil_eigenpairs(build_pencil(n))[:count], 1):
            doc.results.append({"index": k, "value": pair.lam, "source": "pencil",
                                "residual": pair.residual, "multiplicity": pair.multiplicity})
        return doc
    if method == "analytic":
        if not _analytic_ok(part, n):
            raise UsageError("analytic families exist only for --part im --n 1 and --part re --n 2")
        fam = imv_eigenvalues((count + 1) // 2) if part is Part.IMAG else rev2_eigenvalues(count)
        for k, v in enumerate(fam.values[:count], 1):
            doc.results.append({"index": k, "value": float(v), "source": "analytic"})
        return doc
    if method != "discretize":
        raise UsageError(f"unknown method {method!r}")
    mat = assemble(KernelSpec(part, n), GridSpec(m))
    spec = eigenvalues_symmetric(mat) if part is Part.REAL else eigenvalues_antisymmetric(mat)
    for k, v in enumerate(spec.top(count), 1):
        doc.results.append({"index": k, "value": float(v), "source": "discretized"})
    return doc


def cmd_norms(n: int, m: int = C.DEFAULT_GRID) -> ReportDoc:
    doc = ReportDoc("norms", {"n": n, "m": m})
    grid = GridSpec(m)
    for part in (Part.FULL_V, Part.REAL, Part.IMAG):
        spec = KernelSpec(part, n)
        rep = norm_report(part, n, op_norm(assemble(spec, grid)))
        doc.results.append({"operator": spec.label, "hs_exact": rep.hs_exact,
                            "op_lower": rep.op_lower, "op_upper": rep.op_upper,
                            "op_exact": rep.op_exact, "op_discretized": rep.op_discretized})
        slack = C.SANDWICH_SLACK * rep.op_upper
        doc.checks.append(Check(f"{spec.label} discretized norm within bounds",
                                [rep.op_lower, rep.op_upper], rep.op_discretized, slack,
                                rep.contains(rep.op_discretized, slack), "in"))
        if rep.op_exact is not None:
            doc.checks.append(Check(f"{spec.label} closed-form norm within bounds",
                                    [rep.op_lower, rep.op_upper], rep.op_exact,
                                    C.TOL_TABLE_IN_BOUNDS,
                                    rep.contains(rep.op_exact, C.TOL_TABLE_IN_BOUNDS), "in"))
    return doc


def cmd_nrange(n: int, points: int = C.CURVE_SAMPLES, out_csv: str | None = None,
               m: int = C.DEFAULT_GRID) -> ReportDoc:
    doc = ReportDoc("nrange", {"n": n, "points": points, "out": out_csv, "m": m})
    for part in (Part.REAL, Part.IMAG):
        iv = range_interval(part, n, m)
        doc.results.append({"operator": KernelSpec(part, n).label, "lo": iv.lo, "hi": iv.hi,
                            "source": iv.source})
    doc.results.append({"operator": f"Re V^{n} at 1-2x", "rayleigh": rayleigh_probe_re(n),
                        "weak_endpoint": weak_left_endpoint(n)})
    if out_csv is not None:
        if n != 1:
            raise UsageError("the boundary curve of the numerical range is only known for n=1")
        t, x, y = brown_curve_arrays(points)
        with open(out_csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t", "x", "y_upper", "y_lower"])
            for row in zip(t, x, y, -y):
                writer.writerow([format(float(v), ".12g") for v in row])
    return doc


def cmd_accretive(a: float, b: float, m: int = 500) -> ReportDoc:
    q = QuadCoeffs(a, b)
    doc = ReportDoc("accretive", {"a": a, "b": b, "m": m})
    verdict = certify_numeric(q, m)
    row = {"accretive": verdict.predicate, "dissipative": is_dissipative_quadratic(q),
           "min_eig_real_part": verdict.min_eig_certificate,
           "witness": verdict.witness.tag if verdict.witness else None,
           "witness_rayleigh": verdict.witness.value if verdict.witness else None}
    if verdict.predicate:
        row["resolvent_norm"] = resolvent_norm_check(q, m)
    doc.results.append(row)
    return doc


def cmd_verify(level: str = "fast") -> ReportDoc:
    m = C.VERIFY_GRID[level]
    doc = ReportDoc("verify", {"level": level, "m": m})
    for num, title, checks in run_all(m):
        doc.results.append({"criterion": num, "title": title,
                            "pass": all(c.passed for c in checks), "checks": len(checks)})
        for c in checks:
            c.name = f"[{num}] {c.name}"
            doc.checks.append(c)
    return doc


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_const", const="json", dest="format",
                       default=argparse.SUPPRESS, help="emit JSON")
    group.add_argument("--csv", action="store_const", const="csv", dest="format",
                       default=argparse.SUPPRESS, help="emit CSV")

    parser = argparse.ArgumentParser(prog="volterra", parents=[fmt],
                                     description=__doc__.split("\n\n")[0],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigs", parents=[fmt], help="eigenvalues of Re V^n or Im V^n")
    p.add_argument("--part", choices=["re", "im", "v"], required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--method", choices=["auto", "pencil", "analytic", "discretize"], default="auto")
    p.add_argument("--count", type=_positive, default=10)
    p.add_argument("--m", type=_positive, default=C.DEFAULT_GRID)

    p = sub.add_parser("norms", parents=[fmt], help="norms and bounds")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_positive, default=C.DEFAULT_GRID)

    p = sub.add_parser("nrange", parents=[fmt], help="numerical ranges")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--points", type=_positive, default=C.CURVE_SAMPLES)
    p.add_argument("--out", default=None, help="CSV file for the W(V) boundary (n=1 only)")
    p.add_argument("--m", type=_positive, default=C.DEFAULT_GRID)

    p = sub.add_parser("accretive", parents=[fmt], help="accretivity of aV + bV^2")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--m", type=_positive, default=500)

    p = sub.add_parser("verify", parents=[fmt], help="run the reproduction suite")
    p.add_argument("--level", choices=["fast", "full"], default="fast")
    return parser


def _dispatch(args) -> ReportDoc:
    if args.command == "eigs":
        return cmd_eigs(Part.parse(args.part), args.n, args.method, args.count, args.m)
    if args.command == "norms":
        return cmd_norms(args.n, args.m)
    if args.command == "nrange":
        return cmd_nrange(args.n, args.points, args.out, args.m)
    if args.command == "accretive":
        return cmd_accretive(args.a, args.b, args.m)
    return cmd_verify(args.level)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = _dispatch(args)
    except (UsageError, VolterraError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"volterra: error: {exc}", file=sys.stderr)
        return 2
    fmt = getattr(args, "format", "table")
    out = {"json": emit_json, "csv": emit_csv}.get(fmt, emit_table)(doc)
    sys.stdout.write(out)
    if args.command == "verify" and not doc.ok:
        for c in doc.failures:
            print(f"FAILED {c.name}: actual {c.actual} {c.relation} expected {c.expected}",
                  file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
