"""Problem files and example files: text <-> model.

A problem file is one s-expression document:

    (problem
      (name counter)
      (kind invariant)                 ; or functional
      (vars (x Int) (n Int))
      (pre (and (= x 0) (>= n 0)))    ; invariant: pre, trans, post
      (trans (and (< x n) (= x' (+ x 1)) (= n' n)))
      (post (=> (>= x n) (= x n)))
      (bounds (x 0 8) (n 0 8))        ; optional, per variable
      (consts 2)                      ; optional extra grammar constants
      (level intervals))              ; optional, default peano

Functional problems use (ref <term>) or (pred <formula>) instead of
pre/trans/post; predicate specs may declare (out Int <lo> <hi>) or
(out Bool) for the output symbol `out`.  Formula syntax follows SMT-LIB
operator names; and/or/+/-/* may be n-ary (left-folded), (=> a b) desugars
to (or (not a) b), (- a) to (- 0 a).  Primed variables like x' are only
legal inside trans.

An example file lists labeled points:

    (examples
      (example (in (x 0)) (out 0))
      (example (in (x 2)) (out 2)))
"""

from __future__ import annotations

from .core import Expression, IllTypedError, Ty, Value, int_const, value_type, variable
from .grammar import LEVEL_NAMES, level_name_to_index, operator_component, scale_component
from .problems import (
    DEFAULT_FUNCTIONAL_BOUNDS,
    DEFAULT_INVARIANT_BOUNDS,
    FunctionalSpec,
    InvariantSpec,
    IOExample,
    SynthesisProblem,
    primed,
)
from .sexpr import Node, parse_one, to_text


class ProblemFormatError(ValueError):
    """The document parses as s-expressions but is not a valid problem."""


_FOLDABLE = {"and", "or", "+", "-", "*"}
_BINARY_ONLY = {"=", ">", ">=", "<", "<=", "div", "mod"}


def parse_term(node: Node, env: dict[str, Ty]) -> Expression:
    """Parse a formula or term over the given variable typing.

    `env` maps every legal atom (variables, and `out` where permitted) to its
    type; integer literals and true/false are always legal.
    """
    if isinstance(node, int):
        return Expression(int_const(node))
    if isinstance(node, str):
        if node == "true":
            return _bool_leaf(True)
        if node == "false":
            return _bool_leaf(False)
        if node in env:
            return Expression(variable(node, env[node]))
        raise ProblemFormatError(f"unknown symbol: {node}")
    if not node:
        raise ProblemFormatError("empty application")
    head = node[0]
    if not isinstance(head, str):
        raise ProblemFormatError(f"operator expected, got {to_text(head)}")
    args = node[1:]
    if head == "=>":
        if len(args) != 2:
            raise ProblemFormatError("=> takes exactly two arguments")
        a, b = (parse_term(x, env) for x in args)
        return _apply("or", _apply("not", a), b)
    if head == "not":
        if len(args) != 1:
            raise ProblemFormatError("not takes exactly one argument")
        return _apply("not", parse_term(args[0], env))
    if head == "-" and len(args) == 1:
        return _apply("-", Expression(int_const(0)), parse_term(args[0], env))
    if head in _FOLDABLE:
        if len(args) < 2:
            raise ProblemFormatError(f"{head} needs at least two arguments")
        terms = [parse_term(x, env) for x in args]
        acc = terms[0]
        for t in terms[1:]:
            acc = _apply(head, acc, t)
        return acc
    if head in _BINARY_ONLY:
        if len(args) != 2:
            raise ProblemFormatError(f"{head} takes exactly two arguments")
        return _apply(head, parse_term(args[0], env), parse_term(args[1], env))
    if head.startswith("scale_"):
        try:
            c = int(head[len("scale_"):])
        except ValueError:
            raise ProblemFormatError(f"unknown operator: {head}") from None
        if len(args) != 1:
            raise ProblemFormatError(f"{head} takes exactly one argument")
        return Expression(scale_component(c), (parse_term(args[0], env),))
    raise ProblemFormatError(f"unknown operator: {head}")


def _bool_leaf(b: bool) -> Expression:
    from .core import bool_const

    return Expression(bool_const(b))


def _apply(name: str, *args: Expression) -> Expression:
    comp = operator_component(name)
    try:
        return Expression(comp, args)
    except IllTypedError as exc:
        raise IllTypedError(f"in ({name} ...): {exc}") from None


def expression_to_node(expr: Expression) -> Node:
    if not expr.children:
        name = expr.component.name
        try:
            return int(name)
        except ValueError:
            return name
    return [expr.component.name] + [expression_to_node(c) for c in expr.children]


def _key_map(body: list[Node], what: str) -> dict[str, list[Node]]:
    out: dict[str, list[Node]] = {}
    for entry in body:
        if not isinstance(entry, list) or not entry or not isinstance(entry[0], str):
            raise ProblemFormatError(f"malformed {what} entry: {to_text(entry)}")
        key = entry[0]
        if key in out:
            raise ProblemFormatError(f"duplicate key: {key}")
        out[key] = entry[1:]
    return out


def _parse_vars(nodes: list[Node]) -> tuple[tuple[str, Ty], ...]:
    if not nodes:
        raise ProblemFormatError("vars must declare at least one variable")
    out = []
    for node in nodes:
        if not (isinstance(node, list) and len(node) == 2 and isinstance(node[0], str)):
            raise ProblemFormatError(f"malformed var declaration: {to_text(node)}")
        name, ty_name = node
        if ty_name not in ("Int", "Bool"):
            raise ProblemFormatError(f"unknown type for {name}: {ty_name}")
        if name.endswith("'") or name in ("out", "true", "false"):
            raise ProblemFormatError(f"reserved variable name: {name}")
        out.append((name, Ty.INT if ty_name == "Int" else Ty.BOOL))
    if len({n for n, _ in out}) != len(out):
        raise ProblemFormatError("duplicate variable names")
    return tuple(out)


def _parse_value(node: Node) -> Value:
    if isinstance(node, int):
        return node
    if node == "true":
        return True
    if node == "false":
        return False
    raise ProblemFormatError(f"not a value: {to_text(node)}")


def parse_problem(text: str) -> SynthesisProblem:
    doc = parse_one(text)
    if not (isinstance(doc, list) and doc and doc[0] == "problem"):
        raise ProblemFormatError("document must be a (problem ...) form")
    keys = _key_map(doc[1:], "problem")

    known = {"name", "kind", "vars", "ref", "pred", "out", "pre", "trans", "post", "bounds", "consts", "level"}
    for k in keys:
        if k not in known:
            raise ProblemFormatError(f"unknown key: {k}")
    for required in ("name", "kind", "vars"):
        if required not in keys:
            raise ProblemFormatError(f"missing key: {required}")

    (name,) = keys["name"] if len(keys["name"]) == 1 else (None,)
    if not isinstance(name, str):
        raise ProblemFormatError("name must be a single symbol")
    (kind,) = keys["kind"] if len(keys["kind"]) == 1 else (None,)
    if kind not in ("functional", "invariant"):
        raise ProblemFormatError("kind must be functional or invariant")

    variables = _parse_vars(keys["vars"])
    var_env = dict(variables)

    consts: tuple[int, ...] = ()
    if "consts" in keys:
        if not all(isinstance(c, int) for c in keys["consts"]):
            raise ProblemFormatError("consts must be integers")
        consts = tuple(keys["consts"])

    level = 6
    if "level" in keys:
        (lvl_node,) = keys["level"] if len(keys["level"]) == 1 else (None,)
        if not isinstance(lvl_node, str) or lvl_node not in LEVEL_NAMES:
            raise ProblemFormatError(f"level must be one of {', '.join(LEVEL_NAMES)}")
        level = level_name_to_index(lvl_node)

    if kind == "functional":
        for bad in ("pre", "trans", "post"):
            if bad in keys:
                raise ProblemFormatError(f"{bad} is only valid for invariant problems")
        if ("ref" in keys) == ("pred" in keys):
            raise ProblemFormatError("functional problems need exactly one of ref/pred")
        if "ref" in keys:
            if "out" in keys:
                raise ProblemFormatError("out declaration is only valid with pred")
            (ref_node,) = keys["ref"] if len(keys["ref"]) == 1 else (None,)
            ref = parse_term(ref_node, var_env)
            spec: FunctionalSpec | InvariantSpec = FunctionalSpec(reference=ref, out_type=ref.ty)
        else:
            out_type, out_bounds = Ty.INT, None
            if "out" in keys:
                decl = keys["out"]
                if decl and decl[0] == "Bool" and len(decl) == 1:
                    out_type = Ty.BOOL
                elif decl and decl[0] == "Int" and len(decl) in (1, 3):
                    if len(decl) == 3:
                        if not (isinstance(decl[1], int) and isinstance(decl[2], int)):
                            raise ProblemFormatError("out bounds must be integers")
                        out_bounds = (decl[1], decl[2])
                else:
                    raise ProblemFormatError("out must be (out Bool) or (out Int [lo hi])")
            (pred_node,) = keys["pred"] if len(keys["pred"]) == 1 else (None,)
            pred = parse_term(pred_node, {**var_env, "out": out_type})
            spec = FunctionalSpec(predicate=pred, out_type=out_type, out_bounds=out_bounds)
        default_bounds = DEFAULT_FUNCTIONAL_BOUNDS
    else:
        for bad in ("ref", "pred", "out"):
            if bad in keys:
                raise ProblemFormatError(f"{bad} is only valid for functional problems")
        for required in ("pre", "trans", "post"):
            if required not in keys:
                raise ProblemFormatError(f"invariant problems need {required}")

        def formula(key: str, allow_primed: bool) -> Expression:
            (node,) = keys[key] if len(keys[key]) == 1 else (None,)
            env = dict(var_env)
            if allow_primed:
                env.update({primed(n): t for n, t in variables})
            f = parse_term(node, env)
            if f.ty is not Ty.BOOL:
                raise IllTypedError(f"{key} must be Boolean")
            return f

        spec = InvariantSpec(
            pre=formula("pre", False),
            trans=formula("trans", True),
            post=formula("post", False),
        )
        default_bounds = DEFAULT_INVARIANT_BOUNDS

    bounds = {n: default_bounds for n, _ in variables}
    if "bounds" in keys:
        for node in keys["bounds"]:
            ok = (
                isinstance(node, list)
                and len(node) == 3
                and isinstance(node[0], str)
                and isinstance(node[1], int)
                and isinstance(node[2], int)
            )
            if not ok:
                raise ProblemFormatError(f"malformed bounds entry: {to_text(node)}")
            if node[0] not in bounds:
                raise ProblemFormatError(f"bounds for unknown variable: {node[0]}")
            bounds[node[0]] = (node[1], node[2])

    return SynthesisProblem(
        name=name,
        variables=variables,
        kind=spec,
        box=tuple(bounds[n] for n, _ in variables),
        grammar_level=level,
        consts=consts,
    )


def print_problem(problem: SynthesisProblem) -> str:
    body: list[Node] = [
        ["name", problem.name],
        ["kind", "invariant" if problem.is_invariant else "functional"],
        ["vars"] + [[n, str(t)] for n, t in problem.variables],
    ]
    kind = problem.kind
    if isinstance(kind, InvariantSpec):
        body.append(["pre", expression_to_node(kind.pre)])
        body.append(["trans", expression_to_node(kind.trans)])
        body.append(["post", expression_to_node(kind.post)])
    elif kind.reference is not None:
        body.append(["ref", expression_to_node(kind.reference)])
    else:
        out_decl: list[Node] = ["out", str(kind.out_type)]
        if kind.out_bounds is not None:
            out_decl += list(kind.out_bounds)
        body.append(out_decl)
        body.append(["pred", expression_to_node(kind.predicate)])
    body.append(["bounds"] + [[n, lo, hi] for (n, _), (lo, hi) in zip(problem.variables, problem.box)])
    if problem.consts:
        body.append(["consts"] + list(problem.consts))
    body.append(["level", LEVEL_NAMES[problem.grammar_level - 1]])
    lines = ["(problem"] + [f"  {to_text(entry)}" for entry in body]
    return "\n".join(lines) + ")\n"


def parse_examples(text: str, problem: SynthesisProblem) -> list[IOExample]:
    doc = parse_one(text)
    if not (isinstance(doc, list) and doc and doc[0] == "examples"):
        raise ProblemFormatError("document must be an (examples ...) form")
    out = []
    for node in doc[1:]:
        if not (isinstance(node, list) and node and node[0] == "example"):
            raise ProblemFormatError(f"malformed example: {to_text(node)}")
        keys = _key_map(node[1:], "example")
        if set(keys) != {"in", "out"}:
            raise ProblemFormatError("example needs exactly (in ...) and (out ...)")
        given: dict[str, Value] = {}
        for binding in keys["in"]:
            if not (isinstance(binding, list) and len(binding) == 2 and isinstance(binding[0], str)):
                raise ProblemFormatError(f"malformed binding: {to_text(binding)}")
            given[binding[0]] = _parse_value(binding[1])
        if set(given) != set(problem.var_names):
            raise ProblemFormatError("example must bind exactly the problem variables")
        for var_name, ty in problem.variables:
            if value_type(given[var_name]) is not ty:
                raise ProblemFormatError(f"binding for {var_name} must be {ty}")
        (out_node,) = keys["out"] if len(keys["out"]) == 1 else (None,)
        label = _parse_value(out_node)
        state = tuple(given[n] for n in problem.var_names)
        out.append(problem.make_example(state, label))
    return out


def parse_solution(text: str, problem: SynthesisProblem) -> Expression:
    """Re-parse a printed candidate expression against the problem variables."""
    return parse_term(parse_one(text), dict(problem.variables))
