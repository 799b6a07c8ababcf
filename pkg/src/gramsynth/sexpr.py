"""Minimal s-expression reader and printer.

Nodes are ints, symbol strings, or lists of nodes.  `;` starts a comment to
end of line.  Parse errors carry line and column.
"""

from __future__ import annotations

from typing import Union

Node = Union[int, str, list]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


def _tokenize(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c in " \t\r":
            col += 1
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, line, col
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            yield text[start:i], line, start_col
    yield None, line, col


def _atom(token: str) -> Node:
    try:
        return int(token)
    except ValueError:
        return token


def parse_all(text: str) -> list[Node]:
    """Parse every top-level node in the document."""
    stack: list[list[Node]] = []
    opens: list[tuple[int, int]] = []
    top: list[Node] = []
    for token, line, col in _tokenize(text):
        if token is None:
            if stack:
                oline, ocol = opens[-1]
                raise ParseError("unclosed '('", oline, ocol)
            return top
        if token == "(":
            stack.append([])
            opens.append((line, col))
        elif token == ")":
            if not stack:
                raise ParseError("unmatched ')'", line, col)
            done = stack.pop()
            opens.pop()
            (stack[-1] if stack else top).append(done)
        else:
            (stack[-1] if stack else top).append(_atom(token))
    raise AssertionError("tokenizer must yield a terminator")


def parse_one(text: str) -> Node:
    nodes = parse_all(text)
    if len(nodes) != 1:
        raise ParseError(f"expected exactly one expression, found {len(nodes)}", 1, 1)
    return nodes[0]


def to_text(node: Node) -> str:
    if isinstance(node, list):
        return "(" + " ".join(to_text(x) for x in node) + ")"
    return str(node)
