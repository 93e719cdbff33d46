"""Command-line front end.

Exit status: 0 when the command succeeds and nothing is violated, 1 when
violations, failed runs or counterexamples are found, 2 on input errors.
Every command builds one report dictionary; ``--output json`` prints it and
``--output text`` renders the same values as aligned tables.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from enum import Enum
from fractions import Fraction
from pathlib import Path

from .fileformat import InputError, dump_instance, dumps, parse_input
from .functions import FunctionSpec
from .hyperspace import hausdorff
from .instance import LabInstance
from .multimaps import approx_value, classify_all, level_sets
from .solvers import (
    IterationLog,
    endpoint_solve,
    feasibility_audit,
    fixed_solve_sym,
    picard_solve,
    startpoint_solve,
)
from .space import AxiomError, StructuralError, as_rational
from .lab.corpus import CORPUS_IDS, corpus
from .lab.suites import SUITES, run_suite

EXIT_OK, EXIT_FOUND, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def to_jsonable(obj):
    """Fractions become "p/q" strings; dataclasses, enums and sets are unpacked."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def _table(headers, rows) -> str:
    cells = [[str(h) for h in headers]] + [["-" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _set(labels) -> str:
    return "{" + ", ".join(labels) + "}"


# ---------------------------------------------------------------- loading


def _load(path: str) -> LabInstance:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc), path) from None
    return parse_input(text)


def _need(inst: LabInstance, attr: str, what: str):
    value = getattr(inst, attr)
    if value is None:
        raise UsageError(f"the input has no {what} ({attr!r})")
    return value


def _labels(text: str):
    return [p for p in (s.strip() for s in text.split(",")) if p]


# ---------------------------------------------------------------- commands


def cmd_validate(args):
    inst = _load(args.file)
    report = {
        "valid": True,
        "points": len(inst.space),
        "t0": inst.space.is_t0(),
        "maps": [k for k in ("F", "f") if getattr(inst, k) is not None],
    }
    return report, EXIT_OK


def _render_validate(r):
    return f"valid: {r['points']} points, T0={r['t0']}, maps: {', '.join(r['maps']) or 'none'}"


def cmd_analyze(args):
    inst = _load(args.file)
    space = inst.space
    F = _need(inst, "F", "set-valued map")
    rows = classify_all(space, F)
    levels = level_sets(space, F, args.levels)
    report = {
        "points": [
            {
                "point": pc.point,
                "start_value": pc.start_value,
                "end_value": pc.end_value,
                "startpoint": pc.startpoint,
                "endpoint": pc.endpoint,
                "fixed": pc.fixed,
            }
            for pc in rows
        ],
        "startpoints": [pc.point for pc in rows if pc.startpoint],
        "endpoints": [pc.point for pc in rows if pc.endpoint],
        "fixed_points": [pc.point for pc in rows if pc.fixed],
        "approx": {
            kind: {"value": a.value, "witness": a.witness}
            for kind, a in ((k, approx_value(space, F, k)) for k in ("start", "end", "mix"))
        },
        "level_sets": [
            {"n": n, "points": space.points(levels[n]), "diameter": levels.diameters[n - 1]}
            for n in range(1, args.levels + 1)
        ],
        "core": space.points(levels.core),
    }
    return to_jsonable(report), EXIT_OK


def _render_analyze(r):
    rows = [[p["point"], p["start_value"], p["end_value"], p["startpoint"], p["endpoint"], p["fixed"]]
            for p in r["points"]]
    out = [_table(["point", "start", "end", "startpoint", "endpoint", "fixed"], rows), ""]
    out.append(f"startpoints:  {_set(r['startpoints'])}")
    out.append(f"endpoints:    {_set(r['endpoints'])}")
    out.append(f"fixed points: {_set(r['fixed_points'])}")
    out.append("")
    out.append(_table(["approx", "value", "witness"],
                      [[k, v["value"], v["witness"]] for k, v in r["approx"].items()]))
    out.append("")
    out.append(_table(["n", "C_n", "diameter"],
                      [[lv["n"], _set(lv["points"]), lv["diameter"]] for lv in r["level_sets"]]))
    out.append(f"zero set: {_set(r['core'])}")
    return "\n".join(out)


def cmd_hausdorff(args):
    inst = _load(args.file)
    A, B = _labels(args.A), _labels(args.B)
    try:
        ab = hausdorff(inst.space, A, B)
        ba = hausdorff(inst.space, B, A)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    except (StructuralError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    report = {
        "A": inst.space.points(A),
        "B": inst.space.points(B),
        "H(A,B)": {"value": ab.value, "side": ab.side, "witness": ab.witness, "partner": ab.partner},
        "H(B,A)": {"value": ba.value, "side": ba.side, "witness": ba.witness, "partner": ba.partner},
        "Hs": max(ab.value, ba.value),
    }
    return to_jsonable(report), EXIT_OK


def _render_hausdorff(r):
    rows = [[k, r[k]["value"], r[k]["side"], r[k]["witness"], r[k]["partner"]] for k in ("H(A,B)", "H(B,A)")]
    rows.append(["Hs", r["Hs"], None, None, None])
    return f"A = {_set(r['A'])}, B = {_set(r['B'])}\n" + _table(["quantity", "value", "side", "witness", "partner"], rows)


def _log_report(log: IterationLog, extra=None):
    doc = to_jsonable(log)
    doc["trajectory"] = list(log.trajectory)
    doc["hypotheses"] = {k: v for k, v in log.hypotheses}
    if extra:
        doc.update(to_jsonable(extra))
    return doc


def cmd_solve(args):
    inst = _load(args.file)
    space = inst.space
    x0 = args.seed_point if args.seed_point is not None else inst.x0
    if x0 is None:
        raise UsageError("no seed point: pass --seed-point or set x0 in the input")
    if x0 not in space:
        raise UsageError(f"seed point {x0!r} is not a point of the space")
    extra = {}
    if args.kind == "picard":
        T = _need(inst, "f", "self-map")
        if args.gamma is not None:
            gamma = FunctionSpec.linear(as_rational(args.gamma))
        else:
            gamma = _need(inst, "gamma", "comparison function")
        log = picard_solve(space, T, gamma, x0, args.max_iter, args.mode,
                           accept_heuristic=args.accept_heuristic)
    else:
        F = _need(inst, "F", "set-valued map")
        c = as_rational(args.c) if args.c is not None else _need(inst, "c", "contraction constant")
        if args.kind == "startpoint":
            log = startpoint_solve(space, F, c, x0, args.max_iter)
            kind = "start"
        elif args.kind == "endpoint":
            log = endpoint_solve(space, F, c, x0, args.max_iter)
            kind = "end"
        else:
            if not space.is_t0():
                raise UsageError("solve fixed needs a T0 space")
            log = fixed_solve_sym(space, F, c, x0, args.max_iter, strict=args.strict_cor38)
            kind = "sym"
        audit = feasibility_audit(space, F, c, kind, strict=args.strict_cor38)
        extra["infeasible"] = [x for x in space.labels if not audit[x]]
    return _log_report(log, extra), EXIT_OK if log.found else EXIT_FOUND


def _render_solve(r):
    head = f"{r['solver']} ({r['mode']}) from {r['seed']}: {r['status']}"
    if r["terminal"] is not None:
        head += f", terminal {r['terminal']}"
    out = [head, f"steps: {len(r['steps'])}"]
    if r["steps"]:
        cols = ["n", "point", "successor", "distance", "bound", "ok"]
        rows = [[s["n"], s["point"], s["successor"], s["distance"], s["distance_bound"], s["distance_ok"]]
                for s in r["steps"]]
        if r["steps"][0]["value"] is not None:
            cols += ["f(x)", "f(y)", "c*allow", "value ok"]
            for row, s in zip(rows, r["steps"]):
                row += [s["value"], s["successor_value"], s["feasibility_bound"], s["value_ok"]]
        if r["steps"][0]["alpha"] is not None:
            cols.append("alpha")
            for row, s in zip(rows, r["steps"]):
                row.append(s["alpha"])
        out.append(_table(cols, rows))
    if r["hypotheses"]:
        out.append("hypotheses: " + ", ".join(f"{k}={v}" for k, v in r["hypotheses"].items()))
    if "infeasible" in r:
        out.append(f"no admissible successor at: {_set(r['infeasible'])}")
    if r["windows_ok"] is not None:
        out.append(f"window bounds hold: {r['windows_ok']}")
    out.extend(f"note: {n}" for n in r["notes"])
    return "\n".join(out)


def _size_bounds(text: str):
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":", 1))
        else:
            lo, hi = 1, int(text)
    except ValueError:
        raise UsageError(f"--size takes N or LO:HI, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise UsageError(f"bad size bounds {text!r}")
    return lo, hi


def cmd_lab(args):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}")
    report = run_suite(args.suite, args.trials, args.seed, _size_bounds(args.size))
    doc = report.to_dict(include_timing=args.timing)
    return doc, EXIT_FOUND if report.counterexamples else EXIT_OK


def _render_lab(r):
    out = [
        f"suite {r['suite']}  seed {r['seed']}  sizes {r['size_bounds'][0]}..{r['size_bounds'][1]}",
        f"draws {r['draws']}, applicable {r['applicable']}/{r['trials']}, passes {r['passes']}, "
        f"counterexamples {len(r['counterexamples'])}",
        _table(["bin", "count"], sorted(r["bins"].items())),
    ]
    if "wall_time" in r:
        out.append(f"wall time: {r['wall_time']} s")
    for c in r["counterexamples"]:
        out.append(f"counterexample: {c['message']}")
        out.append(dumps(c["instance"]))
    return "\n".join(out)


def cmd_corpus(args):
    try:
        inst = corpus(args.id, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return dump_instance(inst), EXIT_OK


_RENDER = {
    "validate": _render_validate,
    "analyze": _render_analyze,
    "hausdorff": _render_hausdorff,
    "solve": _render_solve,
    "lab": _render_lab,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text", help="report format")

    p = argparse.ArgumentParser(prog="quasistart", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a space/map file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", parents=[common], help="classify points of a set-valued map")
    s.add_argument("file")
    s.add_argument("--levels", type=int, default=4, help="number of level sets C_1..C_N to list")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("hausdorff", parents=[common], help="Hausdorff distances between two subsets")
    s.add_argument("file")
    s.add_argument("A", help="comma-separated labels")
    s.add_argument("B", help="comma-separated labels")
    s.set_defaults(func=cmd_hausdorff)

    s = sub.add_parser("solve", parents=[common], help="run an iterative solver")
    s.add_argument("kind", choices=("startpoint", "endpoint", "fixed", "picard"))
    s.add_argument("file")
    s.add_argument("--seed-point", help="starting point (default: x0 from the input)")
    s.add_argument("--c", help="contraction constant p/q in (0, 1) for the greedy solvers")
    s.add_argument("--max-iter", type=int, help="iteration cap (default 10 |X|)")
    s.add_argument("--strict-cor38", action="store_true",
                   help="fixed: use c d(y, x) instead of c min(d(x, y), d(y, x))")
    s.add_argument("--mode", choices=("forward", "backward", "symmetric"), default="forward",
                   help="picard: orientation of the step distances")
    s.add_argument("--gamma", help="picard: linear comparison function gamma(t) = g t")
    s.add_argument("--accept-heuristic", action="store_true",
                   help="picard: accept a table gamma certified only by the ratio heuristic")
    s.set_defaults(func=cmd_solve)

    lab = sub.add_parser("lab", parents=[common], help="property suites")
    lab_sub = lab.add_subparsers(dest="lab_command", required=True)
    s = lab_sub.add_parser("run", parents=[common], help="run a suite")
    s.add_argument("suite", help=f"one of: {', '.join(sorted(SUITES))}")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--size", default="1:6", help="point count N or LO:HI")
    s.add_argument("--timing", action="store_true", help="include wall time in the report")
    s.set_defaults(func=cmd_lab)

    cp = sub.add_parser("corpus", parents=[common], help="hand-built instances")
    cp_sub = cp.add_subparsers(dest="corpus_command", required=True)
    s = cp_sub.add_parser("export", help="print a corpus instance as JSON")
    s.add_argument("id", choices=CORPUS_IDS)
    s.add_argument("--n", type=int, help="size for example28 and example36-family")
    s.set_defaults(func=cmd_corpus)
    return p


def _check_options(p, args):
    if args.command != "solve":
        return
    if args.strict_cor38 and args.kind != "fixed":
        p.error("--strict-cor38 only applies to 'solve fixed'")
    if args.kind == "picard" and args.c is not None:
        p.error("--c does not apply to 'solve picard'; use --gamma")
    if args.kind != "picard" and (args.gamma is not None or args.accept_heuristic or args.mode != "forward"):
        p.error("--gamma, --mode and --accept-heuristic only apply to 'solve picard'")
    if args.max_iter is not None and args.max_iter < 0:
        p.error("--max-iter must be nonnegative")


def main(argv=None) -> int:
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        _check_options(p, args)
    except SystemExit:
        return EXIT_INPUT

    try:
        report, code = args.func(args)
    except AxiomError as exc:
        doc = {"valid": False, "violations": [
            {"kind": v.kind, "witness": to_jsonable(v.witness), "lhs": to_jsonable(v.lhs), "rhs": to_jsonable(v.rhs)}
            for v in exc.diagnostics.violations
        ]}
        if args.output == "json":
            print(dumps(doc))
        else:
            print("axiom violations:")
            for v in exc.diagnostics.violations:
                print(f"  {v}")
        return EXIT_FOUND
    except (InputError, UsageError, StructuralError) as exc:
        if args.output == "json":
            print(dumps({"error": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if isinstance(report, str):
        print(report)
    elif args.output == "json":
        print(dumps(report))
    else:
        print(_RENDER[args.command](report))
    return code


if __name__ == "__main__":
    sys.exit(main())
