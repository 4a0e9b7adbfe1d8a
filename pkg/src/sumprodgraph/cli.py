"""Command line entry point.

Exit codes: 0 when every invariant passes, 1 on an invariant violation,
2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import harness
from .bounds import compare, crossover_exponent, evaluate_bounds, parse_bound, THM41, UNCOND
from .constructions import CONSTRUCTIONS, ConstructionError, geometric_set
from .energy import dyadic_extract, energy
from .pencils import build_pencil_scene, verify_four_incidences
from .setgraph import Mode, read_value_set, write_graph, write_value_set


class UsageError(Exception):
    pass


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args) -> dict:
    p = {}
    name = args.name
    if name in ("sumprod", "case1", "case2", "projection"):
        if args.n is None:
            raise UsageError(f"{name} needs --n")
        p["n"] = args.n
    if name in ("case1", "case2"):
        if args.c is None:
            raise UsageError(f"{name} needs --c")
        p["c"] = Fraction(args.c)
    if name in ("matching", "ruzsa"):
        if args.k is None:
            raise UsageError(f"{name} needs --k")
        p["k"] = args.k
    if name in ("blowup", "blowup_restricted"):
        p["A"] = read_value_set(args.set) if args.set else geometric_set(args.k or 3)
        p["seed"] = args.seed
    if getattr(args, "exclude_one", False) and name in ("sumprod", "case1", "case2"):
        p["include_one"] = False
    return p


def _modes(text: str | None):
    if not text:
        return tuple(Mode)
    return tuple(Mode(m.strip()) for m in text.split(","))


def cmd_construct(args) -> int:
    out, _, rec = harness.run(args.name, modes=_modes(args.modes), timings=args.timings, **_params(args))
    if args.emit_set:
        write_value_set(out.set, args.emit_set)
    if args.emit_graph:
        write_graph(out.graph, args.emit_graph)
    _write(harness.emit_report(rec, "json"), args.out)
    return 0 if rec.passed else 1


def cmd_sweep(args) -> int:
    fixed = {}
    if args.c is not None:
        fixed["c"] = Fraction(args.c)
    if args.name in ("blowup", "blowup_restricted"):
        fixed["seed"] = args.seed
    points = [int(x) for x in args.points.split(",") if x.strip()]
    if not points:
        raise UsageError("--points is empty")
    recs = harness.sweep(args.name, points, modes=_modes(args.modes), timings=args.timings, **fixed)
    text = harness.emit_report(recs, args.format)
    if args.fit:
        x, _, y = args.fit.partition(":")
        fit = harness.fit_exponent(recs, x, y)
        sys.stderr.write(f"fit log({y}) ~ {fit.slope:.4f} log({x}) + {fit.intercept:.4f} "
                         f"(residual {fit.residual:.3g}, {fit.points} points)\n")
    _write(text, args.out)
    return 0 if all(r.passed for r in recs) else 1


def cmd_energy(args) -> int:
    A = read_value_set(args.set)
    ext = dyadic_extract(A, args.mode)
    summary = ext.summary()
    summary["E_check"] = energy(A, args.mode) == ext.energy
    _write(json.dumps(summary, indent=2, sort_keys=True) + "\n", args.out)
    return 0 if all(summary["invariants"].values()) else 1


def cmd_bounds(args) -> int:
    report = evaluate_bounds(args.n, args.m)
    report["thm41_ge_uncond"] = compare(THM41, UNCOND, args.n, args.m) >= 0
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        print(f"n = {args.n}, m = {args.m}  ({report['note']})")
        for name, v in report["values"].items():
            mark = "  <- dominant" if name == report["dominant"] else ""
            print(f"  {name:<8} {v:.6g}{mark}")
    return 0


def cmd_crossover(args) -> int:
    print(crossover_exponent(parse_bound(args.b1), parse_bound(args.b2)))
    return 0


def cmd_pencils(args) -> int:
    scene = build_pencil_scene(args.n)
    report = verify_four_incidences(scene)
    if args.csv:
        scene.to_csv(args.csv)
    _write(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return 0 if report["pass"] else 1


def cmd_verify(args) -> int:
    checks = harness.verify(args.name, seed=args.seed)
    for key, ok in checks.items():
        print(f"{'PASS' if ok else 'FAIL'}  {key}")
    return 0 if all(checks.values()) else 1


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sumprodgraph", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int)
        p.add_argument("--c", help="rational exponent, e.g. 3/4")
        p.add_argument("--k", type=int)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--set", help="value-set file (one num/den per line) for blowup")
        p.add_argument("--modes", help="comma list of sum,product,ratio,difference")
        p.add_argument("--timings", action="store_true", help="record wall-clock seconds (breaks byte-stability)")
        p.add_argument("--exclude-one", action="store_true", help="drop u = 1 from the u*w/v constructions")
        p.add_argument("--out")

    p = sub.add_parser("construct", help="build one construction and report")
    p.add_argument("name", choices=sorted(CONSTRUCTIONS))
    common(p)
    p.add_argument("--emit-set")
    p.add_argument("--emit-graph")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sweep", help="run a construction over parameter points")
    p.add_argument("name", choices=sorted(CONSTRUCTIONS))
    p.add_argument("--points", required=True, help="comma list of the primary parameter (n or k)")
    p.add_argument("--fit", help="x:y quantities, e.g. n_set:m_edges or n_set:sums+products")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("energy", help="dyadic extraction summary for a value set")
    p.add_argument("--mode", choices=("add", "mul"), required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("bounds", help="evaluate the lower-bound formulas at (n, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("crossover", help="exact crossover exponent of two bounds")
    p.add_argument("--b1", required=True, help="bound name or 'a,b' for m^a/n^b")
    p.add_argument("--b2", required=True)
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("pencils", help="four-pencil arrangement report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pencils)

    p = sub.add_parser("verify", help="brute-force oracle suite at small parameters")
    p.add_argument("name", choices=sorted(harness.VERIFY) + ["all"])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConstructionError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
