"""Hybrid enumeration over a grammar ladder.

The enumerator interleaves several grammars in one bottom-up search.  Every
expression is visited exactly once and is cached in the cell C[j, k][ty]
where j is the least ladder level containing it and k its size.  (level, size)
cells are processed in a total order consistent with a *well order*: one that
puts (a, k1) before (b, k2) whenever grammar a is a subset of grammar b and
k1 < k2, which guarantees all candidate subexpressions are cached before they
are needed.  The default well order compares |components|**size exactly.

`divide` splits a size budget among an operator's argument slots and picks
the (level, size) cell for each slot such that the composed expression lands
in exactly one cell: when the operator already exists below the target level,
some argument must come from the target level itself, and pinning the first
argument suffices.

A deliberately naive single-grammar enumerator (`naive_expressions`,
`naive_unique_set`) is included as an independent correctness oracle; it
shares no machinery with the hybrid path.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple, Protocol, Sequence

from .core import Expression, Ty
from .grammar import GrammarLadder, GrammarLevel, operators_of, values_of


class Location(NamedTuple):
    level: int
    size: int


class ExpressionCache:
    """The C[level, size][type] table: ordered, duplicate-free cells."""

    def __init__(self):
        self._cells: dict[tuple[int, int, Ty], list[Expression]] = {}

    def add(self, level: int, size: int, expr: Expression) -> None:
        self._cells.setdefault((level, size, expr.ty), []).append(expr)

    def cell(self, level: int, size: int, ty: Ty) -> Sequence[Expression]:
        return self._cells.get((level, size, ty), ())

    def cell_expressions(self, level: int, size: int) -> list[Expression]:
        """Union of the typed lists for one (level, size) cell."""
        out = []
        for ty in Ty:
            out.extend(self._cells.get((level, size, ty), ()))
        return out

    def keys(self) -> list[tuple[int, int, Ty]]:
        return list(self._cells)

    def __len__(self) -> int:
        return sum(len(v) for v in self._cells.values())


class WellOrder(Protocol):
    def less(self, a: Location, b: Location) -> bool: ...


def star_order_less(a: Location, b: Location, levels: Sequence[GrammarLevel]) -> bool:
    """a < b iff |C_a|**size_a < |C_b|**size_b, compared exactly.

    Equal powers (e.g. 4**2 vs 2**4) are incomparable: false both ways.
    """
    na = len(levels[a.level - 1].components)
    nb = len(levels[b.level - 1].components)
    return na**a.size < nb**b.size


class StarOrder:
    """The default well order, with memoized exact powers."""

    def __init__(self, levels: Sequence[GrammarLevel] | GrammarLadder):
        if isinstance(levels, GrammarLadder):
            levels = levels.levels
        self._counts = [len(g.components) for g in levels]
        self._pow: dict[Location, int] = {}

    def _power(self, loc: Location) -> int:
        v = self._pow.get(loc)
        if v is None:
            v = self._counts[loc.level - 1] ** loc.size
            self._pow[loc] = v
        return v

    def less(self, a: Location, b: Location) -> bool:
        return self._power(a) < self._power(b)


def sort_pairs(order: WellOrder, ladder: GrammarLadder, max_size: int) -> list[Location]:
    """All (level, size) pairs with 2 <= size <= max_size, totally ordered
    consistently with `order`; ties broken by (size, level) ascending."""
    if max_size < 2:
        raise ValueError("max_size must be >= 2")
    pending = [Location(lvl, sz) for sz in range(2, max_size + 1) for lvl in range(1, ladder.p + 1)]
    out: list[Location] = []
    while pending:
        minimal = [a for a in pending if not any(b is not a and order.less(b, a) for b in pending)]
        pick = min(minimal, key=lambda loc: (loc.size, loc.level))
        out.append(pick)
        pending.remove(pick)
    return out


def divide(
    arity: int,
    budget: int,
    op_level: int,
    expr_level: int,
    acc: tuple[Location, ...] = (),
) -> list[tuple[Location, ...]]:
    """All argument-location sequences for an arity-`arity` operator from
    level `op_level` such that the composed expression is new at exactly
    `expr_level` and the argument sizes sum to `budget`.

    The sequences extend `acc` on the left, so the result rows have the first
    argument's location at the head.
    """
    if not 1 <= arity <= budget:
        raise ValueError(f"need 1 <= arity <= budget, got arity={arity} budget={budget}")
    if op_level > expr_level:
        raise ValueError(f"operator level {op_level} exceeds expression level {expr_level}")
    if any(loc.level > expr_level for loc in acc):
        raise ValueError("accumulated locations must not exceed the expression level")
    return _divide(arity, budget, op_level, expr_level, acc)


def _divide(arity, budget, op_level, expr_level, acc):
    if arity == 1:
        if op_level == expr_level or any(loc.level == expr_level for loc in acc):
            return [(Location(u, budget),) + acc for u in range(1, expr_level + 1)]
        # operator exists below expr_level and no argument witnesses it yet:
        # the first argument must come from expr_level itself
        return [(Location(expr_level, budget),) + acc]
    out = []
    for u in range(1, expr_level + 1):
        for v in range(1, budget - arity + 2):
            out.extend(_divide(arity - 1, budget - v, op_level, expr_level, (Location(u, v),) + acc))
    return out


class HybridEnumerator:
    """Single-pass enumerator over a ladder, sizes 1..max_size.

    `expressions()` yields every expression of the top grammar at most once:
    all nullary values first (partitioned by the level introducing them), then
    composite sizes in well-order position.  Each expression is cached before
    it is yielded, so a consumer may stop at any point with a valid cache.
    """

    def __init__(self, ladder: GrammarLadder, order: WellOrder | None = None, max_size: int = 7):
        if max_size < 1:
            raise ValueError("max_size must be >= 1")
        self.ladder = ladder
        self.order: WellOrder = order if order is not None else StarOrder(ladder)
        self.max_size = max_size
        self.cache = ExpressionCache()
        self._divide_memo: dict[tuple[int, int, int, int], list[tuple[Location, ...]]] = {}
        self._started = False

    def _locations(self, arity: int, budget: int, op_level: int, expr_level: int):
        key = (arity, budget, op_level, expr_level)
        locs = self._divide_memo.get(key)
        if locs is None:
            locs = divide(arity, budget, op_level, expr_level)
            self._divide_memo[key] = locs
        return locs

    def expressions(self) -> Iterator[Expression]:
        if self._started:
            raise RuntimeError("enumerator is single-use; build a new one")
        self._started = True
        ladder = self.ladder
        cache = self.cache

        for i in range(1, ladder.p + 1):
            vals = values_of(ladder.level(i))
            if i > 1:
                prev = {c.name for c in values_of(ladder.level(i - 1))}
                vals = tuple(c for c in vals if c.name not in prev)
            for comp in vals:
                e = Expression(comp)
                cache.add(i, 1, e)
                yield e

        if self.max_size < 2:
            return
        for j, k in sort_pairs(self.order, ladder, self.max_size):
            for l in range(1, j + 1):
                ops = operators_of(ladder.level(l))
                if l > 1:
                    prev = {c.name for c in operators_of(ladder.level(l - 1))}
                    ops = tuple(c for c in ops if c.name not in prev)
                for op in ops:
                    if op.arity > k - 1:
                        continue
                    for locs in self._locations(op.arity, k - 1, l, j):
                        cells = [
                            cache.cell(loc.level, loc.size, ty)
                            for loc, ty in zip(locs, op.arg_types)
                        ]
                        if any(not c for c in cells):
                            continue
                        for args in itertools.product(*cells):
                            e = Expression(op, args)
                            cache.add(j, k, e)
                            yield e


def henum(
    check: Callable[[Expression], bool],
    ladder: GrammarLadder,
    order: WellOrder | None = None,
    max_size: int = 7,
) -> Expression | None:
    """Return the first enumerated expression accepted by `check`, or None
    once everything of size <= max_size has been tried."""
    for e in HybridEnumerator(ladder, order, max_size).expressions():
        if check(e):
            return e
    return None


# --- naive reference enumeration (test oracle; independent of the above) ---


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered sequences of `parts` positive integers summing to `total`."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=128)
def naive_expression_table(
    level: GrammarLevel, max_size: int
) -> dict[int, dict[Ty, tuple[Expression, ...]]]:
    """All expressions of the single grammar `level`, grouped by (size, type).

    Plain bottom-up dynamic programming over one component set; used as the
    ground truth that the hybrid enumerator is checked against.
    """
    table: dict[int, dict[Ty, list[Expression]]] = {k: {t: [] for t in Ty} for k in range(1, max_size + 1)}
    for comp in values_of(level):
        table[1][comp.ret_type].append(Expression(comp))
    for k in range(2, max_size + 1):
        for op in operators_of(level):
            if op.arity > k - 1:
                continue
            for sizes in _compositions(k - 1, op.arity):
                pools = [table[s][t] for s, t in zip(sizes, op.arg_types)]
                for args in itertools.product(*pools):
                    table[k][op.ret_type].append(Expression(op, args))
    return {k: {t: tuple(v) for t, v in by_ty.items()} for k, by_ty in table.items()}


def naive_expressions(level: GrammarLevel, max_size: int) -> list[Expression]:
    """All expressions of `level` with size <= max_size, sizes ascending."""
    table = naive_expression_table(level, max_size)
    out = []
    for k in range(1, max_size + 1):
        for ty in Ty:
            out.extend(table[k][ty])
    return out


def naive_unique_set(ladder: GrammarLadder, level: int, size: int) -> set[Expression]:
    """Expressions of exactly `size` in ladder level `level` but not in the
    level below it, by brute-force enumeration of both grammars."""
    table = naive_expression_table(ladder.level(level), size)
    here = {e for ty in Ty for e in table[size][ty]}
    if level == 1:
        return here
    below_table = naive_expression_table(ladder.level(level - 1), size)
    below = {e for ty in Ty for e in below_table[size][ty]}
    return here - below
