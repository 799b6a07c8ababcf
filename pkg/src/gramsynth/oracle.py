"""Bounded-exhaustive verification oracle.

The oracle is sound and complete over the problem's box: it scans input
points in lexicographic variable order and returns the first violation as a
labeled counterexample, or None when the candidate satisfies the
specification everywhere on the box.  An EvalError in the candidate counts
as a violation at that point.

Invariant problems are checked in three passes: precondition points,
postcondition points, then inductiveness over transition pairs.  Successor
states are found by a pruned depth-first search that partially evaluates the
transition formula as primed variables are bound one at a time; a branch is
cut as soon as the formula is definitely false (or errors), which preserves
the lexicographic first-violation order while avoiding the full box x box
scan.  An inductiveness violation (state, next-state) is resolved to a single
labeled example: if the state is reachable from the precondition the next
state is labeled true, otherwise the state is labeled false.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterator

from .core import EvalError, Expression, Ty, Value, evaluate, values_equal
from .problems import IOExample, FunctionalSpec, InvariantSpec, SynthesisProblem, primed

State = tuple[Value, ...]


class UnsatisfiablePointError(Exception):
    """No output satisfies the spec at some box point: the problem itself is
    unsatisfiable over the box, so no counterexample can be labeled."""


class _Mark:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


UNKNOWN = _Mark("UNKNOWN")
ERR = _Mark("ERR")


def _peval(expr: Expression, env: dict[str, Value]):
    """Evaluate under a partial environment.

    Returns a Value, UNKNOWN (some completion may change the result) or ERR
    (every completion errors before producing a value).  Mirrors `evaluate`,
    including the left-to-right short-circuit of and/or.
    """
    c = expr.component
    if c.is_variable:
        return env.get(c.name, UNKNOWN)
    name = c.name
    if name == "and" or name == "or":
        cut = name == "or"  # value that ends evaluation early
        for child in expr.children:
            v = _peval(child, env)
            if v is UNKNOWN or v is ERR:
                return v
            if v is cut:
                return cut
        return not cut
    args = []
    for child in expr.children:
        v = _peval(child, env)
        if v is UNKNOWN or v is ERR:
            return v
        args.append(v)
    try:
        return c.semantics(*args)
    except EvalError:
        return ERR


def holds(formula: Expression, env: dict[str, Value]) -> bool:
    """True iff the formula evaluates without error to true."""
    try:
        return evaluate(formula, env) is True
    except EvalError:
        return False


class BoundedOracle:
    """Exhaustive verifier for one problem; memoizes transition structure."""

    def __init__(self, problem: SynthesisProblem):
        self.problem = problem
        self._names = problem.var_names
        self._successor_memo: dict[State, tuple[State, ...]] = {}
        self._reachable: frozenset[State] | None = None

    def box_points(self) -> Iterator[State]:
        ranges = [range(lo, hi + 1) for lo, hi in self.problem.box]
        return itertools.product(*ranges)

    def env_of(self, state: State) -> dict[str, Value]:
        return dict(zip(self._names, state))

    # --- functional problems ---

    def _satisfying_outputs(self, spec: FunctionalSpec, env: dict[str, Value]) -> Iterator[Value]:
        assert spec.predicate is not None
        if spec.out_type is Ty.BOOL:
            candidates: Iterator[Value] = iter((False, True))
        else:
            lo, hi = spec.out_bounds if spec.out_bounds is not None else self._out_hull()
            candidates = iter(range(lo, hi + 1))
        for y in candidates:
            if holds(spec.predicate, {**env, "out": y}):
                yield y

    def _out_hull(self) -> tuple[int, int]:
        los, his = zip(*self.problem.box)
        return min(los), max(his)

    def _verify_functional(self, candidate: Expression) -> IOExample | None:
        spec = self.problem.kind
        assert isinstance(spec, FunctionalSpec)
        for state in self.box_points():
            env = self.env_of(state)
            if spec.reference is not None:
                try:
                    want = evaluate(spec.reference, env)
                except EvalError:
                    raise UnsatisfiablePointError(
                        f"{self.problem.name}: reference is undefined at {env}"
                    ) from None
                try:
                    if values_equal(evaluate(candidate, env), want):
                        continue
                except EvalError:
                    pass
                return self.problem.make_example(state, want)
            else:
                try:
                    out = evaluate(candidate, env)
                    ok = holds(spec.predicate, {**env, "out": out})
                except EvalError:
                    ok = False
                if ok:
                    continue
                want = next(self._satisfying_outputs(spec, env), None)
                if want is None:
                    raise UnsatisfiablePointError(f"{self.problem.name}: no valid output at {env}")
                return self.problem.make_example(state, want)
        return None

    # --- invariant problems ---

    def successors(self, state: State) -> tuple[State, ...]:
        """States s' in the box with trans(state, s'), lexicographic order."""
        known = self._successor_memo.get(state)
        if known is not None:
            return known
        spec = self.problem.kind
        assert isinstance(spec, InvariantSpec)
        trans = spec.trans
        box = self.problem.box
        names = self._names
        found: list[State] = []

        def extend(env: dict[str, Value], depth: int, prefix: tuple[Value, ...]):
            if depth == len(names):
                if holds(trans, env):
                    found.append(prefix)
                return
            name = primed(names[depth])
            lo, hi = box[depth]
            for v in range(lo, hi + 1):
                env[name] = v
                r = _peval(trans, env)
                if r is False or r is ERR:
                    continue
                extend(env, depth + 1, prefix + (v,))
            del env[name]

        extend(self.env_of(state), 0, ())
        result = tuple(found)
        self._successor_memo[state] = result
        return result

    def reachable_states(self) -> frozenset[State]:
        """Least fixpoint of trans over box points satisfying pre."""
        if self._reachable is not None:
            return self._reachable
        spec = self.problem.kind
        assert isinstance(spec, InvariantSpec)
        seen: set[State] = set()
        queue: deque[State] = deque()
        for state in self.box_points():
            if holds(spec.pre, self.env_of(state)):
                seen.add(state)
                queue.append(state)
        while queue:
            state = queue.popleft()
            for nxt in self.successors(state):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        self._reachable = frozenset(seen)
        return self._reachable

    def _verify_invariant(self, candidate: Expression) -> IOExample | None:
        spec = self.problem.kind
        assert isinstance(spec, InvariantSpec)
        accepts = lambda state: holds(candidate, self.env_of(state))

        for state in self.box_points():
            if holds(spec.pre, self.env_of(state)) and not accepts(state):
                return self.problem.make_example(state, True)
        for state in self.box_points():
            if accepts(state) and not holds(spec.post, self.env_of(state)):
                return self.problem.make_example(state, False)
        for state in self.box_points():
            if not accepts(state):
                continue
            for nxt in self.successors(state):
                if not accepts(nxt):
                    # ICE resolution: a reachable source forces the target
                    # true; an unreachable source may itself be excluded
                    if state in self.reachable_states():
                        return self.problem.make_example(nxt, True)
                    return self.problem.make_example(state, False)
        return None

    def verify(self, candidate: Expression) -> IOExample | None:
        """None when the candidate satisfies the spec on the whole box, else
        the first counterexample in scan order."""
        if candidate.ty is not self.problem.return_type:
            raise TypeError(
                f"candidate type {candidate.ty} does not match problem type {self.problem.return_type}"
            )
        if isinstance(self.problem.kind, InvariantSpec):
            return self._verify_invariant(candidate)
        return self._verify_functional(candidate)


def bounded_oracle(problem: SynthesisProblem, candidate: Expression) -> IOExample | None:
    """One-shot verification with a fresh oracle."""
    return BoundedOracle(problem).verify(candidate)
