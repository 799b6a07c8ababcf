"""Typed expression trees over components, and their evaluation.

Expressions are applications of `Component`s (typed operators, constants and
variable references) to child expressions.  Evaluation is deterministic and
total except for division/modulo by zero and 64-bit overflow, both of which
raise `EvalError`; callers uniformly treat an erroring candidate as "does not
satisfy".  The Boolean connectives `and`/`or` short-circuit left to right, so
an error in an unevaluated operand never surfaces.

Integer semantics: 64-bit signed, no wraparound (overflow is an error), and
Euclidean division/modulo (the remainder is always in [0, |divisor|)).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Union

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1


class Ty(enum.Enum):
    INT = "Int"
    BOOL = "Bool"

    def __str__(self) -> str:
        return self.value


Value = Union[int, bool]
Environment = Mapping[str, Value]


def value_type(v: Value) -> Ty:
    # bool is a subtype of int in Python, so the bool check must come first
    if type(v) is bool:
        return Ty.BOOL
    if type(v) is int:
        return Ty.INT
    raise TypeError(f"not a value: {v!r}")


def values_equal(a: Value, b: Value) -> bool:
    """Tag-aware equality: 1 and True are different values."""
    return type(a) is type(b) and a == b


class EvalErrorKind(enum.Enum):
    DIV_BY_ZERO = "div-by-zero"
    OVERFLOW = "overflow"


class EvalError(Exception):
    """The expression is undefined on this input."""

    def __init__(self, kind: EvalErrorKind):
        super().__init__(kind.value)
        self.kind = kind


class IllTypedError(TypeError):
    """Raised when constructing an expression that violates component types."""


class UnboundVariableError(KeyError):
    """The environment is missing a binding the expression needs."""


def checked_int(n: int) -> int:
    if INT_MIN <= n <= INT_MAX:
        return n
    raise EvalError(EvalErrorKind.OVERFLOW)


def euclid_div(a: int, b: int) -> int:
    if b == 0:
        raise EvalError(EvalErrorKind.DIV_BY_ZERO)
    q, r = divmod(a, b)
    if r < 0:  # Python floors toward -inf; shift so the remainder is >= 0
        q += 1
    return checked_int(q)


def euclid_mod(a: int, b: int) -> int:
    if b == 0:
        raise EvalError(EvalErrorKind.DIV_BY_ZERO)
    r = a % b
    if r < 0:
        r -= b
    return r


@dataclass(frozen=True)
class Component:
    """A typed operator, constant or variable reference.

    Identity (equality/hashing) is by name and signature only; the semantics
    callable is excluded so that independently built grammars compare equal.
    Variables carry no semantics: the evaluator resolves them in the
    environment.
    """

    name: str
    arg_types: tuple[Ty, ...]
    ret_type: Ty
    semantics: Callable[..., Value] | None = field(default=None, compare=False)
    is_variable: bool = False

    @property
    def arity(self) -> int:
        return len(self.arg_types)

    def __repr__(self) -> str:
        return f"Component({self.name!r})"


def variable(name: str, ty: Ty) -> Component:
    return Component(name, (), ty, is_variable=True)


def int_const(n: int) -> Component:
    if not INT_MIN <= n <= INT_MAX:
        raise ValueError(f"constant out of 64-bit range: {n}")
    return Component(str(n), (), Ty.INT, semantics=lambda n=n: n)


def bool_const(b: bool) -> Component:
    return Component("true" if b else "false", (), Ty.BOOL, semantics=lambda b=b: b)


class Expression:
    """A well-typed component application.  Immutable; hash and size cached."""

    __slots__ = ("component", "children", "size", "_hash")

    def __init__(self, component: Component, children: tuple["Expression", ...] = ()):
        children = tuple(children)
        if len(children) != component.arity:
            raise IllTypedError(
                f"{component.name} expects {component.arity} arguments, got {len(children)}"
            )
        for i, (child, want) in enumerate(zip(children, component.arg_types)):
            if child.ty is not want:
                raise IllTypedError(
                    f"argument {i} of {component.name} must be {want}, got {child.ty}"
                )
        self.component = component
        self.children = children
        self.size: int = 1 + sum(c.size for c in children)
        self._hash = hash((component, tuple(c._hash for c in children)))

    @property
    def ty(self) -> Ty:
        return self.component.ret_type

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Expression):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.component == other.component
            and self.children == other.children
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self.children:
            return self.component.name
        return "(" + " ".join([self.component.name] + [repr(c) for c in self.children]) + ")"


def type_of(expr: Expression) -> Ty:
    return expr.ty


def size(expr: Expression) -> int:
    return expr.size


def subexpressions(expr: Expression) -> Iterator[Expression]:
    """All nodes of the tree, preorder."""
    yield expr
    for child in expr.children:
        yield from subexpressions(child)


def evaluate(expr: Expression, env: Environment) -> Value:
    """Evaluate `expr` under `env`.

    Raises EvalError on division/modulo by zero or 64-bit overflow and
    UnboundVariableError when a variable has no binding (a caller bug, not a
    candidate failure).
    """
    c = expr.component
    if c.is_variable:
        try:
            return env[c.name]
        except KeyError:
            raise UnboundVariableError(c.name) from None
    name = c.name
    if name == "and":
        if evaluate(expr.children[0], env) is False:
            return False
        return evaluate(expr.children[1], env)
    if name == "or":
        if evaluate(expr.children[0], env) is True:
            return True
        return evaluate(expr.children[1], env)
    args = [evaluate(child, env) for child in expr.children]
    assert c.semantics is not None, f"component {c.name} has no semantics"
    return c.semantics(*args)
