import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gramsynth.cli import corpus_dir, run_report
from gramsynth.parsing import parse_problem

# Budgets for the corpus sweep used by the acceptance criteria.
SWEEP_MAX_SIZE = 5
SWEEP_MAX_ROUNDS = 12
ALL_LEVELS = list(range(1, 7))
SWEEP_MODES = ["single", "hybrid"]


def load_corpus():
    return [parse_problem(p.read_text()) for p in sorted(corpus_dir().glob("*.prob"))]


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def sweep_rows(corpus):
    """One full lockstep report sweep over the shipped corpus."""
    return run_report(corpus, ALL_LEVELS, SWEEP_MODES, SWEEP_MAX_SIZE, SWEEP_MAX_ROUNDS)
