"""Command-line front end.

Every subcommand writes deterministic output: sorted collections, fixed
decimal precision and the tolerance echoed next to each real number.
Exit status is 0 iff every requested check passes.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .circle import orbit, parse_angle
from .critportrait import hat_closure, partition, quadratic_portrait
from .entropy import core_entropy, hdim_growth, pair_graph
from .exceptions import PrecedenceFails, RaylamError
from .itinerary import (
    _quadratic_partition,
    boundary_side,
    enumerate_angles,
    first_split,
    itinerary,
    lamination,
    valence_histogram,
)
from .portrait import key_inequality_audit, load_orbit
from .quadratic import characteristic_arc, characteristic_audit, monotonicity_check
from .render import lamination_svg, partition_svg

WORKERS_ENV = "RAYLAM_WORKERS"
DIGITS = 12


def _real(x, tol):
    return f"{x:.{DIGITS}f} ± {tol:g}"


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parse_classes(text):
    return [[parse_angle(a) for a in group.split(",")] for group in text.split(";") if group.strip()]


def _default_workers():
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def cmd_partition(args, out):
    if args.classes:
        cp = hat_closure(_parse_classes(args.classes), args.degree)
    else:
        cp = quadratic_portrait(args.theta)
    p = partition(cp)
    data = {"portrait": cp.to_dict(), "partition": p.to_dict()}
    if args.json:
        _write(args.json, _dumps(data))
    if args.svg:
        _write(args.svg, partition_svg(p))
    out.write(_dumps(data))
    return 0


def cmd_itinerary(args, out):
    if args.classes:
        p = partition(hat_closure(_parse_classes(args.classes), args.degree))
        side = args.side
    else:
        p = _quadratic_partition(args.theta)
        side = boundary_side(args.theta) if args.side == "auto" else args.side
    side = None if side in (None, "both") else side
    for a in args.angles:
        out.write(f"{a}\t{itinerary(a, p, p.d, side)}\n")
    return 0


def cmd_equiv(args, out):
    side = boundary_side(args.theta)
    n = first_split(args.a, args.b, _quadratic_partition(args.theta), 2, side)
    if n is None:
        out.write(f"{args.a} ~ {args.b} for theta_c={args.theta}: equivalent\n")
        return 0
    out.write(f"{args.a} ~ {args.b} for theta_c={args.theta}: distinct, first split at index {n}\n")
    return 1


def cmd_lamination(args, out):
    lam = lamination(args.theta, args.period, args.preperiod, check=not args.no_check)
    if args.json:
        _write(args.json, _dumps(lam.to_dict()))
    if args.svg:
        _write(args.svg, lamination_svg(lam, f"lamination {args.theta}"))
    out.write(f"theta_c {args.theta}  max_period {args.period}  max_preperiod {args.preperiod}\n")
    out.write(f"angles {len(lam.angles)}  classes {len(lam.classes)}\n")
    out.write("valence " + " ".join(f"{v}:{n}" for v, n in valence_histogram(lam).items()) + "\n")
    for c in lam.nontrivial():
        out.write("{" + ", ".join(map(str, c)) + "}\n")
    return 0


def cmd_entropy(args, out):
    for t in args.theta:
        h = core_entropy(t, args.tol, args.method)
        out.write(f"{t}\t{_real(h, args.tol)}\n")
    if args.json:
        graphs = [pair_graph(t).to_dict() for t in args.theta]
        _write(args.json, _dumps(graphs if len(graphs) > 1 else graphs[0]))
    return 0


def cmd_char_arc(args, out):
    rows = [characteristic_arc(t).to_dict() for t in args.theta]
    if args.json:
        _write(args.json, _dumps(rows))
    for r in rows:
        out.write(f"{r['theta_c']}\t{r['case']}\t{r['arc']}\tlength {r['length']}\n")
    return 0


def cmd_monotone(args, out):
    try:
        rep = monotonicity_check(args.source, args.target, args.period, args.tol)
    except PrecedenceFails as exc:
        out.write(f"FAIL precedence: {exc}\n")
        return 3
    if args.json:
        _write(args.json, _dumps(rep.to_dict()))
    out.write(f"{args.source} -> {args.target}  period bound {args.period}\n")
    out.write(f"acc inclusion: {'ok' if rep.acc_included else 'violated'}"
              f" ({len(rep.violations)} violations)\n")
    for x in rep.violations:
        out.write(f"  violating angle {x}\n")
    out.write(f"entropy {args.source}: {_real(rep.entropy_a, args.tol)}\n")
    out.write(f"entropy {args.target}: {_real(rep.entropy_b, args.tol)}\n")
    out.write(f"preimage halves nested: {'ok' if rep.preimages_nested else 'violated'}\n")
    if rep.full_circle:
        out.write("note: source arc is the whole circle\n")
    out.write("PASS\n" if rep.passed else "FAIL\n")
    return 0 if rep.passed else 1


def _sweep_row(job):
    theta, dim_bound, tol = job
    pre, per, _ = orbit(theta)
    h = core_entropy(theta, tol)
    dim = hdim_growth(theta, dim_bound) if dim_bound else None
    return theta, pre, per, h, dim


def cmd_sweep(args, out):
    thetas = enumerate_angles(args.max_period, args.max_preperiod)
    jobs = [(t, args.dim_bound, args.tol) for t in thetas]
    workers = args.workers or _default_workers()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_sweep_row, jobs, chunksize=8))
    else:
        rows = [_sweep_row(j) for j in jobs]
    rows.sort(key=lambda r: r[0])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "preperiod", "period", "entropy", "dim_estimate"])
    for t, pre, per, h, dim in rows:
        w.writerow([str(t), pre, per, f"{h:.{DIGITS}f}", "" if dim is None else f"{dim:.6f}"])
    text = buf.getvalue()
    if args.csv:
        _write(args.csv, text)
    else:
        out.write(text)
    out.write(f"# tol {args.tol:g}\n" if not args.csv else f"{len(rows)} rows, tol {args.tol:g}\n")
    return 0


def cmd_audit(args, out):
    if args.kind in ("characteristic", "lemma71"):
        thetas = list(args.theta or [])
        if args.max_period:
            thetas += enumerate_angles(args.max_period)
        thetas = sorted(set(thetas))
        if not thetas:
            raise SystemExit("audit characteristic: give --theta or --max-period")
        reports = [characteristic_audit(t) for t in thetas]
        data = {"passed": all(r.passed for r in reports), "reports": [r.to_dict() for r in reports]}
        ok = data["passed"]
    else:
        if not args.orbit:
            raise SystemExit("audit key-inequality: give at least one --orbit file")
        orbits = []
        for path in args.orbit:
            with open(path, encoding="utf-8") as fh:
                orbits.append(load_orbit(fh.read()))
        rep = key_inequality_audit(orbits, args.degree, Fraction(args.epsilon))
        data = rep.as_dict()
        ok = rep.passed
    if args.json:
        _write(args.json, _dumps(data))
    out.write(_dumps(data))
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="raylam", description="Rational external rays, landing classes and core entropy.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="critical portrait and circle partition")
    p.add_argument("--theta", type=parse_angle, default=parse_angle("0"))
    p.add_argument("--classes", help="explicit portrait, e.g. '0,1/3;1/2,5/6'")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--json")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("itinerary", help="itineraries of angles")
    p.add_argument("angles", nargs="+", type=parse_angle)
    p.add_argument("--theta", type=parse_angle, default=parse_angle("0"))
    p.add_argument("--classes")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--side", choices=["auto", "both", "left", "right"], default="auto")
    p.set_defaults(func=cmd_itinerary)

    p = sub.add_parser("equiv", help="do two rays land together")
    p.add_argument("a", type=parse_angle)
    p.add_argument("b", type=parse_angle)
    p.add_argument("--theta", type=parse_angle, required=True)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("lamination", help="landing classes up to period/preperiod bounds")
    p.add_argument("--theta", type=parse_angle, required=True)
    p.add_argument("--period", type=_positive, required=True)
    p.add_argument("--preperiod", type=int, default=0)
    p.add_argument("--no-check", action="store_true")
    p.add_argument("--json")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_lamination)

    p = sub.add_parser("entropy", help="core entropy")
    p.add_argument("--theta", type=parse_angle, nargs="+", required=True)
    p.add_argument("--tol", type=_positive_real, default=1e-9)
    p.add_argument("--method", choices=["auto", "exact", "power"], default="auto")
    p.add_argument("--json", help="dump the pair graph(s)")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("char-arc", help="characteristic arc")
    p.add_argument("--theta", type=parse_angle, nargs="+", required=True)
    p.add_argument("--json")
    p.set_defaults(func=cmd_char_arc)

    p = sub.add_parser("monotone", help="biaccessible-set inclusion and entropy order")
    p.add_argument("--from", dest="source", type=parse_angle, required=True)
    p.add_argument("--to", dest="target", type=parse_angle, required=True)
    p.add_argument("--period", type=_positive, default=10)
    p.add_argument("--tol", type=_positive_real, default=1e-9)
    p.add_argument("--json")
    p.set_defaults(func=cmd_monotone)

    p = sub.add_parser("sweep", help="entropy table over all angles up to bounds (CSV)")
    p.add_argument("--max-period", type=_positive, required=True)
    p.add_argument("--max-preperiod", type=int, default=0)
    p.add_argument("--dim-bound", type=int, default=0, help="bound for the dimension estimate (0: skip)")
    p.add_argument("--tol", type=_positive_real, default=1e-9)
    p.add_argument("--workers", type=int, default=0, help=f"default from ${WORKERS_ENV}, else 1")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("audit", help="structural audits")
    p.add_argument("kind", choices=["characteristic", "lemma71", "key-inequality"])
    p.add_argument("--theta", type=parse_angle, nargs="+")
    p.add_argument("--max-period", type=int, default=0)
    p.add_argument("--orbit", nargs="+", help="orbit prefix files, one portrait per line")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--epsilon", default="1/100")
    p.add_argument("--json")
    p.set_defaults(func=cmd_audit)
    return ap


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _positive_real(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return x


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (RaylamError, ValueError) as exc:
        sys.stderr.write(f"raylam {args.command}: {type(exc).__name__}: {exc}\n")
        return 2
