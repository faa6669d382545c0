"""Command-line front end.

Subcommands: ``solve``, ``sweep``, ``partition``, ``metrics``, ``limits``.
Instance files are JSON objects with ``ell`` and ``mu`` arrays (entries may
be exact strings like ``"23/72"``) and an optional ``name``. Alphabet
indices are printed 1-based.

Exit codes: 0 success, 2 invalid input, 3 infeasible problem, 4 oracle
disagreement.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

import numpy as np

from . import oracle
from .datasets import parse_number
from .errors import DimensionError, DomainError, InfeasibleError, SweepError, TVExtremumError
from .metrics import check_bounds
from .partition import build_partition
from .solvers import KINDS, ExtremumSolution, ProblemInstance, d_max, r_max, r_max_lower, solve, sweep

__all__ = ["run", "main", "load_instance", "instance_to_dict", "fmt", "VERIFY_TOL"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_ORACLE = 4

VERIFY_TOL = 1e-8
SWEEP_HEADER = ["budget", "value", "saturated", "alpha"]


class InputError(TVExtremumError, ValueError):
    """Malformed instance file or flag combination."""


def fmt(x: float) -> str:
    """Fixed 12-significant-digit rendering used in text and CSV output."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    return f"{x:.12g}"


def load_instance(path) -> ProblemInstance:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read instance file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"instance file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict) or "ell" not in raw or "mu" not in raw:
        raise InputError(f"instance file {path} must be an object with 'ell' and 'mu' arrays")
    try:
        ell = [parse_number(v) for v in raw["ell"]]
        mu = [parse_number(v) for v in raw["mu"]]
    except (TypeError, ValueError) as exc:
        raise InputError(f"instance file {path}: {exc}") from exc
    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("'name' must be a string")
    return ProblemInstance(ell=ell, mu=mu, name=name)


def instance_to_dict(inst: ProblemInstance) -> dict:
    """JSON-ready form that :func:`load_instance` reads back unchanged."""
    out = {"ell": inst.ell.tolist(), "mu": inst.mu.tolist()}
    if inst.name is not None:
        out = {"name": inst.name, **out}
    return out


def _one_based(indices) -> list[int]:
    return [i + 1 for i in indices]


def _verify(sol: ExtremumSolution, inst: ProblemInstance) -> dict:
    budget = sol.budget
    if sol.kind == "r-plus":
        budget = min(budget, float(inst.ell.entries.max()))
    res = oracle.oracle_value(sol.kind, inst.ell.entries, inst.mu.entries, budget)
    if res.status != "optimal":
        return {"status": res.status, "value": None, "discrepancy": math.inf}
    return {"status": res.status, "value": res.optimum, "discrepancy": abs(res.optimum - sol.value)}


def _solution_dict(sol: ExtremumSolution, inst: ProblemInstance) -> dict:
    part = sol.partition
    levels = {lab: (s, v) for lab, s, v in part.labelled_sets()}
    return {
        **instance_to_dict(inst),
        "problem": sol.kind,
        "budget": sol.budget,
        "value": sol.value,
        "alpha": sol.alpha,
        "saturated": sol.saturated,
        "payoff": sol.payoff,
        "set_masses": [
            {"label": lab, "indices": _one_based(levels[lab][0]), "level": levels[lab][1], "mass": mass}
            for lab, mass in sol.set_masses
        ],
        "nu_star": sol.nu_star.tolist(),
        "partition": {"direction": part.direction, "r": part.r},
    }


def _write_solution(sol: ExtremumSolution, inst: ProblemInstance, form: str, check: Optional[dict], out: TextIO):
    if form == "json":
        d = _solution_dict(sol, inst)
        if check is not None:
            d["oracle"] = check
        out.write(json.dumps(d, indent=2) + "\n")
        return
    levels = {lab: (s, v) for lab, s, v in sol.partition.labelled_sets()}
    if form == "csv":
        w = csv.writer(out, lineterminator="\n")
        head = ["problem", "budget", "value", "alpha", "saturated", "payoff"]
        row = [sol.kind, fmt(sol.budget), fmt(sol.value), fmt(sol.alpha), str(sol.saturated).lower(), fmt(sol.payoff)]
        if check is not None:
            head += ["oracle_value", "discrepancy"]
            row += [fmt(check["value"]) if check["value"] is not None else "", fmt(check["discrepancy"])]
        w.writerow(head)
        w.writerow(row)
        out.write("\n")
        w.writerow(["set", "indices", "level", "mass"])
        for lab, mass in sol.set_masses:
            s, v = levels[lab]
            w.writerow([lab, " ".join(map(str, _one_based(s))), fmt(v), fmt(mass)])
        out.write("\n")
        w.writerow(["index", "mu", "nu_star"])
        for i, (m, n) in enumerate(zip(inst.mu.entries, sol.nu_star.entries), start=1):
            w.writerow([i, fmt(m), fmt(n)])
        return
    lines = [
        f"problem:   {sol.kind}",
        f"budget:    {fmt(sol.budget)}",
        f"value:     {fmt(sol.value)}",
        f"alpha:     {fmt(sol.alpha)}",
        f"saturated: {str(sol.saturated).lower()}",
        f"payoff:    {fmt(sol.payoff)}",
        f"partition: {sol.partition.direction}, r = {sol.partition.r}",
        "set masses:",
    ]
    for lab, mass in sol.set_masses:
        s, v = levels[lab]
        lines.append(f"  {lab:<5} level={fmt(v):<14} mass={fmt(mass):<16} indices={','.join(map(str, _one_based(s)))}")
    lines.append("nu_star:   " + " ".join(fmt(x) for x in sol.nu_star.entries))
    if check is not None:
        oval = fmt(check["value"]) if check["value"] is not None else check["status"]
        lines.append(f"oracle:    {oval} (discrepancy {fmt(check['discrepancy'])})")
    out.write("\n".join(lines) + "\n")


def _cmd_solve(args, out: TextIO) -> int:
    inst = load_instance(args.instance)
    is_radius = args.problem.startswith("d-")
    budget = args.radius if is_radius else args.target
    if budget is None:
        flag = "--radius" if is_radius else "--target"
        raise InputError(f"problem {args.problem} requires {flag}")
    other = args.target if is_radius else args.radius
    if other is not None:
        raise InputError(f"problem {args.problem} takes {'--radius' if is_radius else '--target'} only")
    sol = solve(args.problem, inst.ell, inst.mu, budget)
    check = _verify(sol, inst) if args.verify else None
    _write_solution(sol, inst, args.format, check, out)
    if check is not None and not check["discrepancy"] <= VERIFY_TOL:
        print(f"oracle disagreement: {fmt(check['discrepancy'])} > {VERIFY_TOL:g}", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


def _cmd_sweep(args, out: TextIO) -> int:
    inst = load_instance(args.instance)
    if args.points < 1:
        raise InputError("--points must be at least 1")
    grid = np.linspace(args.start, args.stop, args.points)
    points = sweep(args.problem, inst.ell, inst.mu, grid)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for p in points:
        w.writerow([fmt(p.budget), fmt(p.value), str(p.saturated).lower(), fmt(p.alpha)])
    if args.output:
        Path(args.output).write_text(buf.getvalue())
    else:
        out.write(buf.getvalue())

    if args.nu_output:
        nbuf = io.StringIO()
        w = csv.writer(nbuf, lineterminator="\n")
        w.writerow(["budget"] + [f"nu_{i}" for i in range(1, len(inst.mu) + 1)])
        for p in points:
            w.writerow([fmt(p.budget)] + [fmt(x) for x in p.nu_star.entries])
        Path(args.nu_output).write_text(nbuf.getvalue())
    return EXIT_OK


def _cmd_partition(args, out: TextIO) -> int:
    inst = load_instance(args.instance)
    part = build_partition(inst.ell, args.direction)
    lines = [f"direction: {part.direction}", f"r: {part.r}"]
    for lab, s, v in part.labelled_sets():
        lines.append(f"{lab:<5} value={fmt(v):<14} indices={','.join(map(str, _one_based(s)))}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_metrics(args, out: TextIO) -> int:
    first = load_instance(args.instance)
    second = load_instance(args.second)
    if len(first.mu) != len(second.mu):
        raise DimensionError(f"instances have {len(first.mu)} and {len(second.mu)} entries")
    rep = check_bounds(first.mu, second.mu)
    lines = [
        f"tv:                 {fmt(rep.tv)}",
        f"kl:                 {fmt(rep.kl)}",
        f"hellinger_integral: {fmt(rep.hellinger_integral)}",
        f"kh_distance:        {fmt(rep.kh_distance)}",
        "bounds:",
    ]
    for b in rep.bounds_satisfied:
        lines.append(f"  {b.name:<18} {'holds' if b.holds else 'VIOLATED':<8} slack={fmt(b.slack)}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_limits(args, out: TextIO) -> int:
    inst = load_instance(args.instance)
    lines = [
        f"R_max = {fmt(r_max(inst.ell, inst.mu))}",
        f"R_max_lower = {fmt(r_max_lower(inst.ell, inst.mu))}",
        f"D_max = {fmt(d_max(inst.ell, inst.mu))}",
        f"ell_min = {fmt(inst.ell.entries.min())}",
        f"ell_max = {fmt(inst.ell.entries.max())}",
    ]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tvextremum",
        description="Extremum problems with total variation distance on finite alphabets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one problem instance")
    p.add_argument("--problem", required=True, choices=KINDS)
    p.add_argument("--instance", required=True)
    p.add_argument("--radius", type=float, help="TV radius R for d-plus / d-minus")
    p.add_argument("--target", type=float, help="pay-off level D for r-plus / r-minus")
    p.add_argument("--verify", action="store_true", help="cross-check against the LP oracle")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("sweep", help="trace a value curve over a uniform budget grid")
    p.add_argument("--problem", required=True, choices=KINDS)
    p.add_argument("--instance", required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--output", help="CSV file (default: stdout)")
    p.add_argument("--nu-output", help="also write the per-point nu_star matrix to this CSV file")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("partition", help="print the level-set partition")
    p.add_argument("--instance", required=True)
    p.add_argument("--direction", choices=("from-min", "from-max"), default="from-min")
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("metrics", help="divergences and TV bounds between two instances' mu")
    p.add_argument("--instance", required=True)
    p.add_argument("--second", required=True)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("limits", help="print R_max and D_max")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=_cmd_limits)
    return parser


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    """Run the CLI and return its exit code."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return args.func(args, out)
    except SweepError as exc:
        print(f"error: sweep failed at {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE if isinstance(exc.cause, InfeasibleError) else EXIT_INVALID
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DomainError, ValueError, TVExtremumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
