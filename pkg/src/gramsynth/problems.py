"""Synthesis problem model: variables, specification, bounded domain box.

Two specification kinds are supported.  A functional problem constrains the
candidate's output at each input point, either against a reference expression
or against a predicate over the inputs and the distinguished symbol `out`.
An invariant problem gives pre/trans/post formulas over a state (trans also
over the primed next state); the candidate must be a Boolean predicate that
holds on initial states, is inductive under trans, and implies post.

Verification is exhaustive over the per-variable integer box, so problems
stay desk-scale by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .core import Expression, Ty, Value, value_type
from .grammar import GrammarLadder, standard_ladder

DEFAULT_FUNCTIONAL_BOUNDS = (-4, 4)
DEFAULT_INVARIANT_BOUNDS = (0, 8)


def primed(name: str) -> str:
    return name + "'"


@dataclass(frozen=True)
class IOExample:
    """One labeled point: variable assignment and the required output."""

    inputs: tuple[tuple[str, Value], ...]
    output: Value

    @property
    def env(self) -> dict[str, Value]:
        return dict(self.inputs)

    def __repr__(self) -> str:
        vals = " ".join(f"{n}={v}" for n, v in self.inputs)
        return f"<{vals} -> {self.output}>"


@dataclass(frozen=True)
class FunctionalSpec:
    """Pointwise output constraint: a reference expression or a predicate
    over the inputs plus `out`.  Predicates need out bounds to label
    counterexamples with a concrete satisfying output."""

    reference: Expression | None = None
    predicate: Expression | None = None
    out_type: Ty = Ty.INT
    out_bounds: tuple[int, int] | None = None

    def __post_init__(self):
        if (self.reference is None) == (self.predicate is None):
            raise ValueError("exactly one of reference/predicate must be given")
        if self.reference is not None and self.reference.ty is not self.out_type:
            raise ValueError("reference type does not match declared output type")
        if self.predicate is not None and self.predicate.ty is not Ty.BOOL:
            raise ValueError("spec predicate must be Boolean")


@dataclass(frozen=True)
class InvariantSpec:
    pre: Expression
    trans: Expression
    post: Expression

    def __post_init__(self):
        for name in ("pre", "trans", "post"):
            f: Expression = getattr(self, name)
            if f.ty is not Ty.BOOL:
                raise ValueError(f"{name} formula must be Boolean")


SpecKind = Union[FunctionalSpec, InvariantSpec]


@dataclass(frozen=True)
class SynthesisProblem:
    name: str
    variables: tuple[tuple[str, Ty], ...]
    kind: SpecKind
    box: tuple[tuple[int, int], ...]
    grammar_level: int = 6
    consts: tuple[int, ...] = ()
    # defaults to the standard ladder over the problem's variables and pool
    ladder: GrammarLadder | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.variables:
            raise ValueError("a problem needs at least one variable")
        if len(self.box) != len(self.variables):
            raise ValueError("box must give one interval per variable")
        for (name, _), (lo, hi) in zip(self.variables, self.box):
            if lo > hi:
                raise ValueError(f"empty box for {name}: [{lo}, {hi}]")
        if self.ladder is None:
            int_vars = [n for n, t in self.variables if t is Ty.INT]
            bool_vars = [n for n, t in self.variables if t is Ty.BOOL]
            ladder = standard_ladder(int_vars, self.consts, bool_vars=bool_vars)
            object.__setattr__(self, "ladder", ladder)
        if not 1 <= self.grammar_level <= self.ladder.p:
            raise ValueError(f"grammar level {self.grammar_level} out of range 1..{self.ladder.p}")

    @property
    def is_invariant(self) -> bool:
        return isinstance(self.kind, InvariantSpec)

    @property
    def return_type(self) -> Ty:
        if isinstance(self.kind, InvariantSpec):
            return Ty.BOOL
        return self.kind.out_type

    @property
    def var_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    def make_example(self, state: tuple[Value, ...], output: Value) -> IOExample:
        ex = IOExample(tuple(zip(self.var_names, state)), output)
        if value_type(output) is not self.return_type:
            raise ValueError(f"example output {output!r} does not match return type")
        return ex
