import itertools

import pytest

from gramsynth.core import Expression, Ty, int_const, variable
from gramsynth.enumeration import (
    HybridEnumerator,
    Location,
    StarOrder,
    divide,
    henum,
    naive_expressions,
    naive_unique_set,
    sort_pairs,
    star_order_less,
)
from gramsynth.grammar import GrammarLadder, GrammarLevel, operator_component, standard_ladder

from oracles import brute_force_locations


def int_level(index, name, const_names, var_names, op_names):
    comps = tuple(int_const(c) for c in const_names)
    comps += tuple(variable(v, Ty.INT) for v in var_names)
    comps += tuple(operator_component(o) for o in op_names)
    return GrammarLevel(index, name, comps)


def fake_levels(*sizes):
    """Levels that only matter for their component counts."""
    return [int_level(i + 1, f"l{i + 1}", range(n), (), ()) for i, n in enumerate(sizes)]


# The ladder 0,x,+ < +1,- < +2,* has fresh values and operators at every
# level, so every unique set E^k_j is inhabited.
INT_LADDER = GrammarLadder(
    (
        int_level(1, "base", [0], ["x"], ["+"]),
        int_level(2, "minus", [0, 1], ["x"], ["+", "-"]),
        int_level(3, "times", [0, 1, 2], ["x"], ["+", "-", "*"]),
    )
)


def test_star_order_examples():
    lv = fake_levels(2, 3)
    assert star_order_less(Location(1, 3), Location(2, 2), lv)  # 8 < 9
    assert not star_order_less(Location(2, 2), Location(1, 3), lv)
    lv = fake_levels(4, 2)
    assert not star_order_less(Location(1, 2), Location(2, 4), lv)  # 16 = 16
    assert not star_order_less(Location(2, 4), Location(1, 2), lv)
    lv = fake_levels(5)
    assert star_order_less(Location(1, 2), Location(1, 3), lv)


def test_star_order_is_a_well_order():
    # Def-9 law: subset levels and strictly smaller size compare less,
    # for every ladder pair and sizes up to 8.
    ladder = standard_ladder(["x", "y"], [])
    order = StarOrder(ladder)
    for a in range(1, 7):
        for b in range(a, 7):
            for k1 in range(1, 9):
                for k2 in range(k1 + 1, 9):
                    assert order.less(Location(a, k1), Location(b, k2))


def test_sort_pairs_single_level_is_size_chain():
    ladder = INT_LADDER.single(1)
    order = StarOrder(ladder)
    assert sort_pairs(order, ladder, 5) == [Location(1, k) for k in range(2, 6)]


def test_sort_pairs_contains_each_pair_once_and_respects_def9():
    ladder = standard_ladder(["x"], []).prefix(2)
    out = sort_pairs(StarOrder(ladder), ladder, 3)
    assert sorted(out) == sorted(Location(l, k) for l in (1, 2) for k in (2, 3))
    assert out.index(Location(1, 2)) < out.index(Location(1, 3))
    assert out.index(Location(2, 2)) < out.index(Location(2, 3))


def test_sort_pairs_derived_order_for_counts_five_and_seven():
    levels = fake_levels(5, 7)
    ladder = GrammarLadder(
        (
            int_level(1, "a", range(5), (), ()),
            int_level(2, "b", range(7), (), ()),
        )
    )
    # powers: 25, 49, 125, 343
    assert sort_pairs(StarOrder(levels), ladder, 3) == [
        Location(1, 2),
        Location(2, 2),
        Location(1, 3),
        Location(2, 3),
    ]


def test_sort_pairs_breaks_power_ties_by_size_then_level():
    ladder = GrammarLadder(
        (
            int_level(1, "a", range(2), (), ()),
            int_level(2, "b", range(4), (), ()),
        )
    )
    out = sort_pairs(StarOrder(ladder), ladder, 4)
    # 2**4 == 4**2: the size-2 pair comes first
    assert out.index(Location(2, 2)) < out.index(Location(1, 4))


def test_divide_spec_examples():
    assert set(divide(1, 3, 2, 2)) == {(Location(1, 3),), (Location(2, 3),)}
    assert set(divide(1, 3, 1, 2)) == {(Location(2, 3),)}
    assert set(divide(2, 2, 1, 1)) == {(Location(1, 1), Location(1, 1))}


def test_divide_preconditions():
    with pytest.raises(ValueError):
        divide(2, 1, 1, 1)  # arity > budget
    with pytest.raises(ValueError):
        divide(0, 1, 1, 1)
    with pytest.raises(ValueError):
        divide(1, 1, 3, 2)  # operator above expression level
    with pytest.raises(ValueError):
        divide(1, 2, 1, 1, acc=(Location(2, 1),))  # accumulated level too high


def test_divide_matches_brute_force_location_set():
    for arity in (1, 2, 3):
        for budget in range(arity, 7):
            for expr_level in (1, 2, 3):
                for op_level in range(1, expr_level + 1):
                    got = divide(arity, budget, op_level, expr_level)
                    assert len(set(got)) == len(got)
                    assert set(got) == brute_force_locations(arity, budget, op_level, expr_level, 3)


def test_divide_lemma3_expression_semantics():
    # On a fully inhabited ladder: for every target cell and operator, the
    # cross products over divide's locations are exactly the expressions of
    # the unique set that have that operator at the root.
    ladder = INT_LADDER
    op_level = {"+": 1, "-": 2, "*": 3}
    for j in (1, 2, 3):
        for k in (2, 3, 4, 5):
            want = naive_unique_set(ladder, j, k)
            for op_name, l in op_level.items():
                op = operator_component(op_name)
                if l > j or op.arity > k - 1:
                    continue
                want_op = {e for e in want if e.component == op}
                got = set()
                for locs in divide(op.arity, k - 1, l, j):
                    pools = [
                        [e for e in naive_unique_set(ladder, loc.level, loc.size) if e.ty is ty]
                        for loc, ty in zip(locs, op.arg_types)
                    ]
                    for args in itertools.product(*pools):
                        e = Expression(op, args)
                        assert e in want, (j, k, e)
                        got.add(e)
                assert got == want_op


def test_henum_values_first_and_size3_counts():
    ladder = GrammarLadder((int_level(1, "tiny", [0, 1], ["x"], ["+"]),))
    enum = HybridEnumerator(ladder, max_size=3)
    visited = []
    for e in enum.expressions():
        visited.append(e)
        if e.size >= 3:
            break
    assert len(visited) == 4  # 3 values, then the first composite
    everything = list(HybridEnumerator(ladder, max_size=3).expressions())
    assert sum(1 for e in everything if e.size == 3) == 9


def test_henum_early_return_on_values():
    ladder = standard_ladder(["x"], [])
    seen = []

    def check(e):
        seen.append(e)
        return repr(e) == "0"

    found = henum(check, ladder, max_size=4)
    assert repr(found) == "0"
    assert len(seen) <= 5  # at most the size-1 values of level 1


def test_henum_exhaustion_returns_none():
    ladder = INT_LADDER.prefix(1)
    assert henum(lambda e: False, ladder, max_size=3) is None


def test_henum_completeness_and_no_duplicates_two_level():
    ladder = standard_ladder(["x"], []).prefix(2)
    visited = list(HybridEnumerator(ladder, max_size=4).expressions())
    assert len(set(visited)) == len(visited)
    assert set(visited) == set(naive_expressions(ladder.level(2), 4))


def test_cache_cells_equal_unique_sets():
    for ladder in (INT_LADDER, standard_ladder(["x"], []).prefix(3)):
        enum = HybridEnumerator(ladder, max_size=5)
        for _ in enum.expressions():
            pass
        for j in range(1, ladder.p + 1):
            for k in range(1, 6):
                got = set(enum.cache.cell_expressions(j, k))
                assert got == naive_unique_set(ladder, j, k), (j, k)


def test_cache_cells_hold_matching_size_and_type():
    enum = HybridEnumerator(INT_LADDER, max_size=4)
    for _ in enum.expressions():
        pass
    for (level, sz, ty) in enum.cache.keys():
        for e in enum.cache.cell(level, sz, ty):
            assert e.size == sz and e.ty is ty


def test_unique_set_examples():
    ladder = standard_ladder(["x"], [])
    level1_values = {Expression(c) for c in ladder.level(1).components if c.arity == 0}
    assert naive_unique_set(ladder, 1, 1) == level1_values
    assert naive_unique_set(ladder, 2, 1) == set()
    e32 = naive_unique_set(ladder, 2, 3)
    assert e32
    assert {e.component.name for e in e32} == {">", ">=", "<", "<="}


def test_enumerator_is_single_use():
    enum = HybridEnumerator(INT_LADDER, max_size=2)
    list(enum.expressions())
    with pytest.raises(RuntimeError):
        list(enum.expressions())
