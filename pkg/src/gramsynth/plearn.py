"""Run the same problem under every ladder prefix grammar; first success wins.

Each worker is an independent single-grammar CEGIS instance at one level of
the ladder.  Parallel execution uses one thread per level with cooperative
cancellation polled between rounds; the winner is the first instance to
verify, and total cost is p times the overall wall-clock time.  Lockstep
execution advances all instances one round at a time in level order, is fully
deterministic, and resolves simultaneous successes to the lowest level; total
cost is the sum of per-level elapsed time.

Any solution found at level i also solves the original problem, because
level i's grammar is a subset of the problem's grammar.
"""

from __future__ import annotations

import enum
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cegis import CegisRun, FailureReason
from .core import Expression
from .oracle import BoundedOracle
from .problems import SynthesisProblem


class LevelStatus(enum.Enum):
    SOLVED = "solved"
    FAILED = "failed"
    CANCELLED = "cancelled"


@dataclass
class LevelReport:
    level: int
    status: LevelStatus
    failure: FailureReason | None
    rounds: int
    wall_ms: float
    solution: Expression | None


@dataclass
class PLearnOutcome:
    winner_level: int | None
    solution: Expression | None
    per_level: tuple[LevelReport, ...]
    wall_ms: float
    total_cost_ms: float

    @property
    def solved(self) -> bool:
        return self.solution is not None


def _make_runs(problem, levels, max_rounds, max_size, share_oracle):
    # oracle=None makes each run build a private one (workers share nothing)
    shared = BoundedOracle(problem) if share_oracle else None
    return [
        CegisRun(
            problem,
            mode="single",
            grammar_level=lvl,
            max_rounds=max_rounds,
            max_size=max_size,
            oracle=shared,
        )
        for lvl in levels
    ]


def _report(level: int, run: CegisRun, wall_ms: float, cancelled: bool) -> LevelReport:
    if run.finished:
        res = run.result
        status = LevelStatus.SOLVED if res.solved else LevelStatus.FAILED
        return LevelReport(level, status, res.failure, res.rounds, wall_ms, res.solution)
    assert cancelled
    return LevelReport(level, LevelStatus.CANCELLED, None, len(run.trace), wall_ms, None)


def _lockstep(problem, levels, max_rounds, max_size) -> PLearnOutcome:
    started = time.monotonic()
    runs = _make_runs(problem, levels, max_rounds, max_size, share_oracle=True)
    elapsed = [0.0 for _ in runs]
    winner = None
    for _ in range(max_rounds):
        for i, run in enumerate(runs):
            if run.finished:
                continue
            t0 = time.monotonic()
            result = run.step()
            elapsed[i] += time.monotonic() - t0
            if result is not None and result.solved:
                winner = i
                break
        if winner is not None or all(r.finished for r in runs):
            break
    reports = tuple(
        _report(levels[i], run, elapsed[i] * 1000.0, cancelled=not run.finished)
        for i, run in enumerate(runs)
    )
    wall_ms = (time.monotonic() - started) * 1000.0
    solution = runs[winner].result.solution if winner is not None else None
    return PLearnOutcome(
        winner_level=levels[winner] if winner is not None else None,
        solution=solution,
        per_level=reports,
        wall_ms=wall_ms,
        total_cost_ms=sum(elapsed) * 1000.0,
    )


def _parallel(problem, levels, max_rounds, max_size) -> PLearnOutcome:
    started = time.monotonic()
    runs = _make_runs(problem, levels, max_rounds, max_size, share_oracle=False)
    cancel = threading.Event()
    solved_at: dict[int, float] = {}
    elapsed = [0.0 for _ in runs]

    def work(i: int):
        t0 = time.monotonic()
        run = runs[i]
        while not run.finished and not cancel.is_set():
            result = run.step()
            if result is not None and result.solved:
                solved_at[i] = time.monotonic()
                cancel.set()
        elapsed[i] = time.monotonic() - t0

    with ThreadPoolExecutor(max_workers=len(runs)) as pool:
        futures = [pool.submit(work, i) for i in range(len(runs))]
        for f in futures:
            f.result()

    winner = min(solved_at, key=solved_at.__getitem__) if solved_at else None
    reports = tuple(
        _report(levels[i], run, elapsed[i] * 1000.0, cancelled=not run.finished)
        for i, run in enumerate(runs)
    )
    wall_ms = (time.monotonic() - started) * 1000.0
    solution = runs[winner].result.solution if winner is not None else None
    return PLearnOutcome(
        winner_level=levels[winner] if winner is not None else None,
        solution=solution,
        per_level=reports,
        wall_ms=wall_ms,
        total_cost_ms=len(runs) * wall_ms,
    )


def plearn(
    problem: SynthesisProblem,
    levels: int | None = None,
    max_rounds: int = 30,
    max_size: int = 7,
    execution: str = "lockstep",
) -> PLearnOutcome:
    """Solve `problem` with one CEGIS instance per ladder level 1..levels.

    `levels` defaults to the problem's own grammar level, so every instance
    uses a subgrammar of the problem's grammar.
    """
    top = problem.grammar_level if levels is None else levels
    if not 1 <= top <= problem.ladder.p:
        raise ValueError(f"levels must be in 1..{problem.ladder.p}")
    level_list = list(range(1, top + 1))
    if execution == "lockstep":
        return _lockstep(problem, level_list, max_rounds, max_size)
    if execution == "parallel":
        return _parallel(problem, level_list, max_rounds, max_size)
    raise ValueError(f"unknown execution mode: {execution}")
