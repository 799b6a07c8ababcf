"""Potential-for-overfitting measurement and learning-bound counting.

`omega_bounded` counts the spurious candidates for a problem and example
set: expressions of the problem's grammar level, up to a size cap, that are
consistent with every example yet fail verification.  The count is the
size-bounded variant of the overfitting potential; the cap is recorded in
the report.

Example sets must be valid: each labeled point has to be achievable by some
expression that satisfies the whole specification.  Validity is checked
against box-bounded enumeration of satisfying expressions (at the most
expressive ladder level, so the verdict does not depend on which level is
being measured); when no satisfying expression exists within the cap,
functional problems fall back to "the spec holds at that point" and
invariant problems to a reachability argument.

`trace_count` and `example_set_count` are the exact closed forms for the
number of distinct counterexample traces (length <= m) and of m-point
example sets over finite input/output domains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cegis import consistent
from .core import EvalError, Expression, evaluate, values_equal
from .enumeration import naive_expressions
from .oracle import BoundedOracle, holds
from .problems import InvariantSpec, IOExample, SynthesisProblem


class UndefinedOmegaError(ValueError):
    """Some example is not a valid IO example for the specification."""


@dataclass(frozen=True)
class OverfitReport:
    problem: str
    level: int
    examples: tuple[IOExample, ...]
    size_cap: int
    omega: int
    witnesses: tuple[Expression, ...]


def _satisfying_expressions(oracle: BoundedOracle, level_index: int, size_cap: int) -> list[Expression]:
    problem = oracle.problem
    want = problem.return_type
    out = []
    for e in naive_expressions(problem.ladder.level(level_index), size_cap):
        if e.ty is want and oracle.verify(e) is None:
            out.append(e)
    return out


def _example_valid_fallback(oracle: BoundedOracle, ex: IOExample) -> bool:
    problem = oracle.problem
    spec = problem.kind
    if isinstance(spec, InvariantSpec):
        state = tuple(v for _, v in ex.inputs)
        if ex.output is False:
            return state not in oracle.reachable_states()
        # labeled true: the forward closure of the state must stay safe
        seen = {state}
        frontier = [state]
        while frontier:
            s = frontier.pop()
            if not holds(spec.post, oracle.env_of(s)):
                return False
            for nxt in oracle.successors(s):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return True
    env = ex.env
    if spec.reference is not None:
        try:
            return values_equal(evaluate(spec.reference, env), ex.output)
        except EvalError:
            return False
    return holds(spec.predicate, {**env, "out": ex.output})


def validate_examples(
    problem: SynthesisProblem,
    examples: tuple[IOExample, ...],
    size_cap: int,
    oracle: BoundedOracle | None = None,
) -> bool:
    """Every example individually consistent with some satisfying expression."""
    oracle = oracle if oracle is not None else BoundedOracle(problem)
    sats = _satisfying_expressions(oracle, problem.ladder.p, size_cap)
    if sats:
        return all(
            any(consistent(e, (ex,)) for e in sats) for ex in examples
        )
    return all(_example_valid_fallback(oracle, ex) for ex in examples)


def omega_bounded(
    problem: SynthesisProblem,
    examples: tuple[IOExample, ...],
    size_cap: int,
    witness_limit: int = 10,
    oracle: BoundedOracle | None = None,
) -> OverfitReport:
    """Count spurious candidates: consistent with the examples, rejected by
    the oracle.  Raises UndefinedOmegaError when the example set is invalid."""
    oracle = oracle if oracle is not None else BoundedOracle(problem)
    if not validate_examples(problem, examples, size_cap, oracle=oracle):
        raise UndefinedOmegaError(f"{problem.name}: example set is not valid for the spec")
    want = problem.return_type
    omega = 0
    witnesses: list[Expression] = []
    for e in naive_expressions(problem.ladder.level(problem.grammar_level), size_cap):
        if e.ty is not want or not consistent(e, examples):
            continue
        if oracle.verify(e) is not None:
            omega += 1
            if len(witnesses) < witness_limit:
                witnesses.append(e)
    return OverfitReport(
        problem=problem.name,
        level=problem.grammar_level,
        examples=tuple(examples),
        size_cap=size_cap,
        omega=omega,
        witnesses=tuple(witnesses),
    )


def trace_count(n_inputs: int, n_outputs: int, m: int) -> int:
    """Number of distinct counterexample traces of length <= m: sequences of
    distinct inputs, each with any output label.  Exact."""
    if not 0 <= m < n_inputs:
        raise ValueError("need 0 <= m < n_inputs")
    total = 0
    for i in range(m + 1):
        total += math.factorial(n_inputs) * n_outputs**i // math.factorial(n_inputs - i)
    return total


def example_set_count(n_inputs: int, n_outputs: int, m: int) -> int:
    """Number of distinct m-point example sets: input subsets of size m with
    any output labels.  Exact."""
    if not 0 <= m <= n_inputs:
        raise ValueError("need 0 <= m <= n_inputs")
    return math.comb(n_inputs, m) * n_outputs**m
