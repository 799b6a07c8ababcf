"""Command-line interface.

    gramsynth synth <problem.prob> [--grammar LEVEL] [--mode single|hybrid|plearn]
                    [--max-size N] [--max-rounds N] [--execution lockstep|parallel]
                    [--json]
    gramsynth report <corpus-dir> [--levels ...] [--modes ...] [--max-size N]
                    [--max-rounds N] [-o out.csv]
    gramsynth omega <problem.prob> <examples.exs> [--size-cap N] [--levels ...]
                    [-o out.csv]

synth exits 0 with the solution on success, 1 on failure; usage errors exit 2.
report writes one CSV row per (problem, level, mode); omega writes one
OverfitReport row per level.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import io
import sys
import time
from pathlib import Path

from .cegis import cegis_loop
from .grammar import LEVEL_NAMES, level_name_to_index
from .oracle import BoundedOracle
from .overfit import UndefinedOmegaError, omega_bounded
from .parsing import parse_examples, parse_problem
from .plearn import plearn
from .problems import SynthesisProblem

REPORT_COLUMNS = ("problem", "level", "mode", "status", "rounds", "wall_ms", "total_cost_ms")
OMEGA_COLUMNS = ("problem", "level", "size_cap", "omega", "undefined")


def corpus_dir() -> Path:
    return Path(__file__).parent / "corpus"


def load_problem(path: str | Path) -> SynthesisProblem:
    return parse_problem(Path(path).read_text())


def _trace_json(trace) -> list[dict]:
    rows = []
    for i, rnd in enumerate(trace):
        cex = None
        if rnd.counterexample is not None:
            cex = {
                "input": {n: v for n, v in rnd.counterexample.inputs},
                "output": rnd.counterexample.output,
            }
        rows.append({"round": i + 1, "candidate": repr(rnd.candidate), "counterexample": cex})
    return rows


def _cmd_synth(args) -> int:
    problem = load_problem(args.problem)
    level = problem.grammar_level if args.grammar is None else level_name_to_index(args.grammar)

    if args.mode == "plearn":
        outcome = plearn(
            problem,
            levels=level,
            max_rounds=args.max_rounds,
            max_size=args.max_size,
            execution=args.execution,
        )
        solved = outcome.solved
        payload = {
            "problem": problem.name,
            "mode": "plearn",
            "execution": args.execution,
            "status": "solved" if solved else "failed",
            "winner_level": outcome.winner_level,
            "solution": repr(outcome.solution) if solved else None,
            "per_level": [
                {
                    "level": LEVEL_NAMES[r.level - 1],
                    "status": r.status.value,
                    "rounds": r.rounds,
                    "wall_ms": round(r.wall_ms, 3),
                }
                for r in outcome.per_level
            ],
            "total_cost_ms": round(outcome.total_cost_ms, 3),
        }
        if args.json:
            print(json.dumps(payload, indent=2))
        elif solved:
            print(f"solved at level {LEVEL_NAMES[outcome.winner_level - 1]}: {outcome.solution!r}")
        else:
            print("failed: no level found a solution")
        return 0 if solved else 1

    result = cegis_loop(
        problem,
        max_rounds=args.max_rounds,
        max_size=args.max_size,
        mode=args.mode,
        grammar_level=level,
    )
    payload = {
        "problem": problem.name,
        "mode": args.mode,
        "level": LEVEL_NAMES[level - 1],
        "status": "solved" if result.solved else result.failure.value,
        "rounds": result.rounds,
        "solution": repr(result.solution) if result.solved else None,
        "trace": _trace_json(result.trace),
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    elif result.solved:
        print(f"solved in {result.rounds} rounds: {result.solution!r}")
    else:
        print(f"failed ({result.failure.value}) after {result.rounds} rounds")
    return 0 if result.solved else 1


def run_report(
    problems: list[SynthesisProblem],
    levels: list[int],
    modes: list[str],
    max_size: int,
    max_rounds: int,
) -> list[dict]:
    """One row per (problem, level, mode); errors recorded in-row."""
    rows = []
    for problem in sorted(problems, key=lambda p: p.name):
        oracle = BoundedOracle(problem)
        for level in levels:
            for mode in modes:
                row = {
                    "problem": problem.name,
                    "level": LEVEL_NAMES[level - 1],
                    "mode": mode,
                }
                t0 = time.monotonic()
                try:
                    result = cegis_loop(
                        problem,
                        max_rounds=max_rounds,
                        max_size=max_size,
                        mode=mode,
                        grammar_level=level,
                        oracle=oracle,
                    )
                    wall = (time.monotonic() - t0) * 1000.0
                    row["status"] = "solved" if result.solved else result.failure.value
                    row["rounds"] = result.rounds
                    row["wall_ms"] = f"{wall:.3f}"
                    row["total_cost_ms"] = f"{wall:.3f}"
                    row["_result"] = result
                except Exception as exc:  # record, never abort the sweep
                    wall = (time.monotonic() - t0) * 1000.0
                    row["status"] = f"error:{type(exc).__name__}"
                    row["rounds"] = ""
                    row["wall_ms"] = f"{wall:.3f}"
                    row["total_cost_ms"] = f"{wall:.3f}"
                    row["_result"] = None
                rows.append(row)
    return rows


def write_csv(rows: list[dict], columns: tuple[str, ...], out) -> None:
    writer = csv.writer(out)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])


def report_csv(rows: list[dict], columns: tuple[str, ...] = REPORT_COLUMNS) -> str:
    buf = io.StringIO()
    write_csv(rows, columns, buf)
    return buf.getvalue()


def _parse_levels(names: list[str]) -> list[int]:
    return [level_name_to_index(n) for n in names]


def _cmd_report(args) -> int:
    paths = sorted(Path(args.corpus).glob("*.prob"))
    if not paths:
        print(f"no .prob files under {args.corpus}", file=sys.stderr)
        return 1
    problems = [parse_problem(p.read_text()) for p in paths]
    levels = _parse_levels(args.levels)
    rows = run_report(problems, levels, args.modes, args.max_size, args.max_rounds)
    text = report_csv(rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    failures = {}
    for row in rows:
        if row["status"] != "solved":
            key = (row["level"], row["mode"])
            failures[key] = failures.get(key, 0) + 1
    for (level, mode), count in sorted(failures.items()):
        print(f"# failures {level}/{mode}: {count}", file=sys.stderr)
    return 0


def _cmd_omega(args) -> int:
    problem = load_problem(args.problem)
    examples = tuple(parse_examples(Path(args.examples).read_text(), problem))
    levels = _parse_levels(args.levels)
    oracle = BoundedOracle(problem)
    rows = []
    for level in levels:
        leveled = dataclasses.replace(problem, grammar_level=level)
        row = {"problem": problem.name, "level": LEVEL_NAMES[level - 1], "size_cap": args.size_cap}
        try:
            report = omega_bounded(leveled, examples, args.size_cap, oracle=oracle)
            row["omega"] = report.omega
            row["undefined"] = "false"
        except UndefinedOmegaError:
            row["omega"] = ""
            row["undefined"] = "true"
        rows.append(row)
    buf = io.StringIO()
    write_csv(rows, OMEGA_COLUMNS, buf)
    if args.output:
        Path(args.output).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gramsynth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="synthesize a solution for one problem")
    synth.add_argument("problem")
    synth.add_argument("--grammar", choices=LEVEL_NAMES, default=None)
    synth.add_argument("--mode", choices=("single", "hybrid", "plearn"), default="hybrid")
    synth.add_argument("--max-size", type=int, default=7)
    synth.add_argument("--max-rounds", type=int, default=30)
    synth.add_argument("--execution", choices=("lockstep", "parallel"), default="lockstep")
    synth.add_argument("--json", action="store_true")
    synth.set_defaults(func=_cmd_synth)

    report = sub.add_parser("report", help="sweep a corpus and emit CSV")
    report.add_argument("corpus")
    report.add_argument("--levels", nargs="+", choices=LEVEL_NAMES, default=list(LEVEL_NAMES))
    report.add_argument("--modes", nargs="+", choices=("single", "hybrid"), default=["single", "hybrid"])
    report.add_argument("--max-size", type=int, default=5)
    report.add_argument("--max-rounds", type=int, default=8)
    report.add_argument("-o", "--output", default=None)
    report.set_defaults(func=_cmd_report)

    omega = sub.add_parser("omega", help="overfitting potential per grammar level")
    omega.add_argument("problem")
    omega.add_argument("examples")
    omega.add_argument("--size-cap", type=int, default=5)
    omega.add_argument("--levels", nargs="+", choices=LEVEL_NAMES, default=list(LEVEL_NAMES))
    omega.add_argument("-o", "--output", default=None)
    omega.set_defaults(func=_cmd_omega)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
