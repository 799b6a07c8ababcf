import csv
import io
import json

import pytest

from gramsynth.cli import (
    OMEGA_COLUMNS,
    REPORT_COLUMNS,
    corpus_dir,
    load_problem,
    main,
    report_csv,
    run_report,
)
from gramsynth.oracle import BoundedOracle
from gramsynth.parsing import parse_problem, parse_solution


def test_corpus_parses_and_round_trips():
    from gramsynth.parsing import print_problem

    paths = sorted(corpus_dir().glob("*.prob"))
    assert len(paths) >= 10
    for path in paths:
        problem = parse_problem(path.read_text())
        assert parse_problem(print_problem(problem)) == problem, path.name


def test_shipped_fib19_formulas_match_the_benchmark_semantics():
    import itertools

    from gramsynth.oracle import holds
    from gramsynth.problems import primed

    problem = load_problem(corpus_dir() / "fib_19.prob")
    assert problem.var_names == ("m", "n", "x", "y")
    spec = problem.kind

    def pre_ref(m, n, x, y):
        return 0 <= n and 0 <= m <= n and x == 0 and y == m

    def trans_ref(m, n, x, y, m2, n2, x2, y2):
        return (
            x < n
            and x2 == x + 1
            and m2 == m
            and n2 == n
            and ((x2 <= m and y2 == y) or (x2 > m and y2 == y + 1))
        )

    def post_ref(m, n, x, y):
        return y == n if x >= n else True

    points = list(itertools.product(range(3), repeat=4))
    for state in points:
        env = dict(zip(problem.var_names, state))
        assert holds(spec.pre, env) == pre_ref(*state)
        assert holds(spec.post, env) == post_ref(*state)
    for state in itertools.product(range(2), repeat=4):
        for nxt in itertools.product(range(3), repeat=4):
            env = dict(zip(problem.var_names, state))
            env.update({primed(v): val for v, val in zip(problem.var_names, nxt)})
            assert holds(spec.trans, env) == trans_ref(*state, *nxt)


def test_synth_identity_single_equalities(capsys):
    code = main(
        [
            "synth",
            str(corpus_dir() / "identity.prob"),
            "--mode",
            "single",
            "--grammar",
            "equalities",
            "--max-size",
            "3",
            "--json",
        ]
    )
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["status"] == "solved"
    assert out["solution"] == "x"
    assert out["rounds"] <= 3
    assert out["trace"][-1]["counterexample"] is None
    assert all(r["counterexample"] is not None for r in out["trace"][:-1])


def test_synth_solution_reverifies_after_reload(capsys):
    path = corpus_dir() / "sum_pair.prob"
    code = main(["synth", str(path), "--mode", "hybrid", "--max-size", "3", "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    problem = load_problem(path)
    solution = parse_solution(out["solution"], problem)
    assert BoundedOracle(problem).verify(solution) is None


def test_synth_failure_exit_code(capsys):
    code = main(
        [
            "synth",
            str(corpus_dir() / "sum_pair.prob"),
            "--mode",
            "single",
            "--grammar",
            "equalities",
            "--max-size",
            "3",
        ]
    )
    assert code == 1
    assert "exhausted" in capsys.readouterr().out


def test_synth_plearn_mode(capsys):
    code = main(
        [
            "synth",
            str(corpus_dir() / "sum_pair.prob"),
            "--mode",
            "plearn",
            "--grammar",
            "octagons",
            "--max-size",
            "3",
            "--json",
        ]
    )
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["winner_level"] == 3
    assert [r["status"] for r in out["per_level"]].count("solved") == 1


def test_unknown_grammar_name_is_a_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["synth", "whatever.prob", "--grammar", "lattices"])
    assert err.value.code == 2


def test_missing_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 2


def test_report_row_cardinality_and_columns(tmp_path):
    problems = [load_problem(corpus_dir() / f"{name}.prob") for name in ("const_zero", "identity", "is_nonneg")]
    rows = run_report(problems, levels=[1, 2], modes=["single", "hybrid"], max_size=3, max_rounds=5)
    assert len(rows) == 3 * 2 * 2
    text = report_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert list(parsed[0].keys()) == list(REPORT_COLUMNS)
    for row in parsed:
        if row["status"] == "solved":
            assert int(row["rounds"]) >= 1


def test_report_rounds_column_equals_trace_length():
    problems = [load_problem(corpus_dir() / "identity.prob")]
    rows = run_report(problems, levels=[1], modes=["single"], max_size=3, max_rounds=5)
    (row,) = rows
    assert row["rounds"] == row["_result"].rounds == len(row["_result"].trace)


def test_report_cli_writes_csv(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code = main(
        [
            "report",
            str(corpus_dir()),
            "--levels",
            "equalities",
            "--modes",
            "single",
            "--max-size",
            "2",
            "--max-rounds",
            "2",
            "-o",
            str(out),
        ]
    )
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    names = sorted(p.stem for p in corpus_dir().glob("*.prob"))
    assert [r["problem"] for r in rows] == names
    # failure counts per (level, mode) equal the non-solved rows
    err = capsys.readouterr().err
    unsolved = sum(1 for r in rows if r["status"] != "solved")
    assert f"# failures equalities/single: {unsolved}" in err


def test_omega_cli_rows_and_undefined_marker(tmp_path):
    out = tmp_path / "omega.csv"
    code = main(
        [
            "omega",
            str(corpus_dir() / "identity.prob"),
            str(corpus_dir() / "identity.exs"),
            "--size-cap",
            "3",
            "-o",
            str(out),
        ]
    )
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0].keys()) == list(OMEGA_COLUMNS)
    assert len(rows) == 6
    omegas = [int(r["omega"]) for r in rows]
    assert omegas == sorted(omegas)

    code = main(
        [
            "omega",
            str(corpus_dir() / "identity.prob"),
            str(corpus_dir() / "identity_bad.exs"),
            "--size-cap",
            "3",
            "-o",
            str(out),
        ]
    )
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert all(r["undefined"] == "true" and r["omega"] == "" for r in rows)
