"""Component-based grammar levels and the six-level integer-predicate ladder.

A `GrammarLevel` is a finite ordered set of components; the grammar it
induces is the closure of those components under well-typed application.
A `GrammarLadder` is a strictly increasing chain of levels.  The standard
ladder mirrors the classic abstract-domain progression:

    equalities < intervals < octagons < polyhedra < polynomials < peano

Component order within a level is fixed (values first, operators after), so
enumeration over a level is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import (
    Component,
    Ty,
    bool_const,
    checked_int,
    euclid_div,
    euclid_mod,
    int_const,
    variable,
)

LEVEL_NAMES = ("equalities", "intervals", "octagons", "polyhedra", "polynomials", "peano")


class DuplicateNameError(ValueError):
    """Two components in one grammar level share a name."""


@dataclass(frozen=True)
class GrammarLevel:
    level_index: int
    name: str
    components: tuple[Component, ...]

    def __post_init__(self):
        seen = set()
        for c in self.components:
            if c.name in seen:
                raise DuplicateNameError(f"duplicate component name: {c.name}")
            seen.add(c.name)

    def __len__(self) -> int:
        return len(self.components)

    def by_name(self, name: str) -> Component:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)


def values_of(level: GrammarLevel) -> tuple[Component, ...]:
    """Nullary components (constants and variables), in level order."""
    return tuple(c for c in level.components if c.arity == 0)


def operators_of(level: GrammarLevel) -> tuple[Component, ...]:
    """Positive-arity components, in level order."""
    return tuple(c for c in level.components if c.arity > 0)


def is_component_subset(a: GrammarLevel, b: GrammarLevel) -> bool:
    """True iff every component of `a` (by name and signature) occurs in `b`."""
    have = {(c.name, c.arg_types, c.ret_type) for c in b.components}
    return all((c.name, c.arg_types, c.ret_type) in have for c in a.components)


def expressiveness_proxy(level: GrammarLevel, k: int) -> int:
    """|components|**k, exact.  Overapproximates the number of size-k expressions."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return len(level.components) ** k


@dataclass(frozen=True)
class GrammarLadder:
    """A strictly increasing chain of grammar levels, indexed 1..p."""

    levels: tuple[GrammarLevel, ...]

    def __post_init__(self):
        if not self.levels:
            raise ValueError("ladder must have at least one level")
        for i, level in enumerate(self.levels):
            if level.level_index != i + 1:
                raise ValueError(f"level {level.name} has index {level.level_index}, expected {i + 1}")
        for lo, hi in zip(self.levels, self.levels[1:]):
            if not is_component_subset(lo, hi) or len(lo) >= len(hi):
                raise ValueError(f"levels {lo.name} and {hi.name} are not strictly increasing")

    @property
    def p(self) -> int:
        return len(self.levels)

    def __len__(self) -> int:
        return len(self.levels)

    def level(self, index: int) -> GrammarLevel:
        """1-based lookup."""
        if not 1 <= index <= self.p:
            raise IndexError(f"level index {index} out of range 1..{self.p}")
        return self.levels[index - 1]

    def prefix(self, n: int) -> "GrammarLadder":
        if not 1 <= n <= self.p:
            raise IndexError(f"prefix length {n} out of range 1..{self.p}")
        return GrammarLadder(self.levels[:n])

    def single(self, index: int) -> "GrammarLadder":
        """A one-level ladder holding level `index`, reindexed to 1."""
        return GrammarLadder((replace(self.level(index), level_index=1),))


def _make_operators() -> dict[str, Component]:
    ii = (Ty.INT, Ty.INT)
    bb = (Ty.BOOL, Ty.BOOL)
    return {
        "not": Component("not", (Ty.BOOL,), Ty.BOOL, semantics=lambda a: not a),
        # and/or get no semantics: the evaluator short-circuits them by name
        "or": Component("or", bb, Ty.BOOL),
        "and": Component("and", bb, Ty.BOOL),
        "=": Component("=", ii, Ty.BOOL, semantics=lambda a, b: a == b),
        ">": Component(">", ii, Ty.BOOL, semantics=lambda a, b: a > b),
        ">=": Component(">=", ii, Ty.BOOL, semantics=lambda a, b: a >= b),
        "<": Component("<", ii, Ty.BOOL, semantics=lambda a, b: a < b),
        "<=": Component("<=", ii, Ty.BOOL, semantics=lambda a, b: a <= b),
        "+": Component("+", ii, Ty.INT, semantics=lambda a, b: checked_int(a + b)),
        "-": Component("-", ii, Ty.INT, semantics=lambda a, b: checked_int(a - b)),
        "*": Component("*", ii, Ty.INT, semantics=lambda a, b: checked_int(a * b)),
        "div": Component("div", ii, Ty.INT, semantics=euclid_div),
        "mod": Component("mod", ii, Ty.INT, semantics=euclid_mod),
    }


OPERATORS = _make_operators()


def operator_component(name: str) -> Component:
    return OPERATORS[name]


def scale_component(c: int) -> Component:
    """Unary multiplication by the constant c (the ladder's scalar product)."""
    return Component(f"scale_{c}", (Ty.INT,), Ty.INT, semantics=lambda v, c=c: checked_int(c * v))


def standard_ladder(
    int_vars: list[str] | tuple[str, ...],
    extra_consts: list[int] | tuple[int, ...] = (),
    bool_vars: list[str] | tuple[str, ...] = (),
) -> GrammarLadder:
    """The six-level ladder of quantifier-free integer predicates.

    Level 1 (equalities) holds the Boolean connectives, integer equality and
    the nullary pool: true/false, the constants {0, 1} plus `extra_consts`,
    and one variable per name.  Levels add, in order: comparisons; + and -;
    scalar multiplication (one unary scale_c per pool constant); nonlinear *;
    div and mod.
    """
    names = list(bool_vars) + list(int_vars)
    if len(set(names)) != len(names):
        raise DuplicateNameError("variable names must be distinct")
    pool = sorted({0, 1, *extra_consts})
    ops = OPERATORS

    values = [bool_const(True), bool_const(False)]
    values += [variable(v, Ty.BOOL) for v in bool_vars]
    values += [int_const(c) for c in pool]
    values += [variable(v, Ty.INT) for v in int_vars]

    base = tuple(values) + tuple(ops[o] for o in ("not", "or", "and", "="))
    tiers = [
        base,
        tuple(ops[o] for o in (">", ">=", "<", "<=")),
        (ops["+"], ops["-"]),
        tuple(scale_component(c) for c in pool),
        (ops["*"],),
        (ops["div"], ops["mod"]),
    ]
    levels = []
    acc: tuple[Component, ...] = ()
    for i, tier in enumerate(tiers):
        acc = acc + tier
        levels.append(GrammarLevel(i + 1, LEVEL_NAMES[i], acc))
    return GrammarLadder(tuple(levels))


def level_name_to_index(name: str) -> int:
    """1-based index of a standard-ladder level name."""
    try:
        return LEVEL_NAMES.index(name) + 1
    except ValueError:
        raise KeyError(f"unknown grammar level: {name}") from None
