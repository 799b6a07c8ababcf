"""Counterexample-guided inductive synthesis.

Each round re-enumerates candidates (single grammar level or the hybrid
ladder prefix up to the problem's level) and proposes the first one of the
right type that is consistent with all accumulated counterexamples.  The
bounded oracle then either verifies it or contributes a new counterexample.
The run fails when the enumerator exhausts all expressions up to the size
budget with no consistent candidate left, or when the round budget runs out;
the two failures are distinguished.

`CegisRun` exposes one-round stepping so several instances can be advanced
in lockstep (see plearn).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .core import EvalError, Expression, evaluate, values_equal
from .enumeration import HybridEnumerator
from .oracle import BoundedOracle
from .problems import IOExample, SynthesisProblem


def consistent(candidate: Expression, examples: Iterable[IOExample]) -> bool:
    """True iff the candidate reproduces every labeled output (errors fail)."""
    for ex in examples:
        try:
            if not values_equal(evaluate(candidate, ex.env), ex.output):
                return False
        except EvalError:
            return False
    return True


class FailureReason(enum.Enum):
    EXHAUSTED_ROUNDS = "exhausted_rounds"
    EXHAUSTED_SPACE = "exhausted_space"


@dataclass
class TraceRound:
    candidate: Expression
    counterexample: IOExample | None


@dataclass
class SynthesisResult:
    solution: Expression | None
    failure: FailureReason | None
    trace: list[TraceRound]

    @property
    def solved(self) -> bool:
        return self.solution is not None

    @property
    def rounds(self) -> int:
        return len(self.trace)


class CegisRun:
    """A stepping CEGIS instance: one `step()` = one candidate, one query."""

    def __init__(
        self,
        problem: SynthesisProblem,
        mode: str = "single",
        max_size: int = 7,
        max_rounds: int = 30,
        grammar_level: int | None = None,
        oracle: BoundedOracle | None = None,
    ):
        if max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")
        if mode not in ("single", "hybrid"):
            raise ValueError(f"unknown mode: {mode}")
        level = problem.grammar_level if grammar_level is None else grammar_level
        self.problem = problem
        self.ladder = problem.ladder.single(level) if mode == "single" else problem.ladder.prefix(level)
        self.max_size = max_size
        self.max_rounds = max_rounds
        self.oracle = oracle if oracle is not None else BoundedOracle(problem)
        self.examples: list[IOExample] = []
        self.trace: list[TraceRound] = []
        self._result: SynthesisResult | None = None

    @property
    def finished(self) -> bool:
        return self._result is not None

    @property
    def result(self) -> SynthesisResult:
        if self._result is None:
            raise RuntimeError("run not finished")
        return self._result

    def _propose(self) -> Expression | None:
        want = self.problem.return_type
        examples = self.examples
        for e in HybridEnumerator(self.ladder, max_size=self.max_size).expressions():
            if e.ty is want and consistent(e, examples):
                return e
        return None

    def step(self) -> SynthesisResult | None:
        """Run one round; returns the result when the run just finished."""
        if self._result is not None:
            return self._result
        candidate = self._propose()
        if candidate is None:
            self._result = SynthesisResult(None, FailureReason.EXHAUSTED_SPACE, self.trace)
            return self._result
        cex = self.oracle.verify(candidate)
        self.trace.append(TraceRound(candidate, cex))
        if cex is None:
            self._result = SynthesisResult(candidate, None, self.trace)
            return self._result
        self.examples.append(cex)
        if len(self.trace) >= self.max_rounds:
            self._result = SynthesisResult(None, FailureReason.EXHAUSTED_ROUNDS, self.trace)
        return self._result

    def run(self) -> SynthesisResult:
        while self._result is None:
            self.step()
        return self._result


def cegis_loop(
    problem: SynthesisProblem,
    max_rounds: int = 30,
    max_size: int = 7,
    mode: str = "single",
    grammar_level: int | None = None,
    oracle: BoundedOracle | None = None,
) -> SynthesisResult:
    return CegisRun(
        problem,
        mode=mode,
        max_size=max_size,
        max_rounds=max_rounds,
        grammar_level=grammar_level,
        oracle=oracle,
    ).run()
