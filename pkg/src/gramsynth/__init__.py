"""Enumerative syntax-guided synthesis over grammar ladders.

The package provides typed component expressions (`core`), the six-level
grammar ladder (`grammar`), hybrid enumeration with its well order and size
divider (`enumeration`), a CEGIS loop against bounded-exhaustive oracles
(`cegis`, `oracle`), overfitting measurement (`overfit`), the multi-grammar
portfolio runner (`plearn`), and a problem-file format plus CLI (`parsing`,
`cli`).
"""

from .cegis import CegisRun, FailureReason, SynthesisResult, TraceRound, cegis_loop, consistent
from .core import (
    Component,
    Environment,
    EvalError,
    EvalErrorKind,
    Expression,
    IllTypedError,
    Ty,
    Value,
    evaluate,
    size,
    type_of,
)
from .enumeration import (
    ExpressionCache,
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
from .grammar import (
    LEVEL_NAMES,
    DuplicateNameError,
    GrammarLadder,
    GrammarLevel,
    expressiveness_proxy,
    is_component_subset,
    operators_of,
    standard_ladder,
    values_of,
)
from .oracle import BoundedOracle, bounded_oracle
from .overfit import OverfitReport, UndefinedOmegaError, example_set_count, omega_bounded, trace_count
from .parsing import parse_examples, parse_problem, parse_solution, print_problem
from .plearn import LevelStatus, PLearnOutcome, plearn
from .problems import FunctionalSpec, InvariantSpec, IOExample, SynthesisProblem

__all__ = [name for name in dir() if not name.startswith("_")]
