"""Text and JSON encodings for cylinder expressions.

Text grammar (whitespace-insensitive)::

    expr   := diff ('|' diff)*           union, lowest precedence
    diff   := inter ('\\' inter)*         difference, left-associative
    inter  := atom ('&' atom)*           intersection, highest precedence
    atom   := 'S(' naturals? ')'         basic cylinder; 'S()' is the whole space
            | '0'                        the empty set
            | '(' expr ')'

JSON uses tagged objects ``{"op": ..., "args": [...]}`` with atom args a
plain array of naturals.
"""

from __future__ import annotations

from typing import Any

from .cylinder import EMPTY, FULL, Atom, Diff, Expr, Inter, Union


class ExprSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, Any]]:
    tokens: list[tuple[str, Any]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "|&\\()," :
            tokens.append((ch, ch))
            i += 1
        elif ch == "S":
            tokens.append(("S", "S"))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j])))
            i = j
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r} at {i}")
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, Any]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind: str) -> Any:
        if self.peek() != kind:
            raise ExprSyntaxError(f"expected {kind!r} at token {self.pos}")
        value = self.tokens[self.pos][1]
        self.pos += 1
        return value

    def parse_expr(self) -> Expr:
        e = self.parse_diff()
        while self.peek() == "|":
            self.take("|")
            e = Union(e, self.parse_diff())
        return e

    def parse_diff(self) -> Expr:
        e = self.parse_inter()
        while self.peek() == "\\":
            self.take("\\")
            e = Diff(e, self.parse_inter())
        return e

    def parse_inter(self) -> Expr:
        e = self.parse_atom()
        while self.peek() == "&":
            self.take("&")
            e = Inter(e, self.parse_atom())
        return e

    def parse_atom(self) -> Expr:
        kind = self.peek()
        if kind == "S":
            self.take("S")
            self.take("(")
            entries: list[int] = []
            if self.peek() == "num":
                entries.append(self.take("num"))
                while self.peek() == ",":
                    self.take(",")
                    entries.append(self.take("num"))
            self.take(")")
            return FULL if not entries else Atom(tuple(entries))
        if kind == "num":
            v = self.take("num")
            if v != 0:
                raise ExprSyntaxError(f"bare number {v} is not an expression")
            return EMPTY
        if kind == "(":
            self.take("(")
            e = self.parse_expr()
            self.take(")")
            return e
        raise ExprSyntaxError(f"unexpected token at {self.pos}")


def parse_expr(text: str) -> Expr:
    parser = _Parser(_tokenize(text))
    e = parser.parse_expr()
    if parser.pos != len(parser.tokens):
        raise ExprSyntaxError(f"trailing input at token {parser.pos}")
    return e


_UNION, _DIFF, _INTER, _ATOM = 0, 1, 2, 3


def expr_to_text(e: Expr) -> str:
    return _render(e, _UNION)


def _render(e: Expr, context: int) -> str:
    if isinstance(e, Atom):
        return "S(" + ",".join(str(v) for v in e.entries) + ")"
    if isinstance(e, type(FULL)):
        return "S()"
    if isinstance(e, type(EMPTY)):
        return "0"
    if isinstance(e, Union):
        text = _render(e.left, _UNION) + "|" + _render(e.right, _DIFF)
        level = _UNION
    elif isinstance(e, Diff):
        text = _render(e.left, _DIFF) + "\\" + _render(e.right, _INTER)
        level = _DIFF
    elif isinstance(e, Inter):
        text = _render(e.left, _INTER) + "&" + _render(e.right, _ATOM)
        level = _INTER
    else:
        raise TypeError(f"not a cylinder expression: {e!r}")
    return f"({text})" if level < context else text


def expr_to_json(e: Expr) -> dict:
    if isinstance(e, Atom):
        return {"op": "atom", "args": list(e.entries)}
    if isinstance(e, type(FULL)):
        return {"op": "full", "args": []}
    if isinstance(e, type(EMPTY)):
        return {"op": "empty", "args": []}
    ops = {Union: "union", Inter: "inter", Diff: "diff"}
    op = ops.get(type(e))
    if op is None:
        raise TypeError(f"not a cylinder expression: {e!r}")
    return {"op": op, "args": [expr_to_json(e.left), expr_to_json(e.right)]}


def expr_from_json(obj: Any) -> Expr:
    if not isinstance(obj, dict) or "op" not in obj:
        raise ValueError(f"bad expression object: {obj!r}")
    op, args = obj["op"], obj.get("args", [])
    if op == "atom":
        if not all(isinstance(v, int) and v >= 0 for v in args):
            raise ValueError(f"atom entries must be naturals: {args!r}")
        return Atom(tuple(args))
    if op == "full":
        return FULL
    if op == "empty":
        return EMPTY
    makers = {"union": Union, "inter": Inter, "diff": Diff}
    if op in makers and len(args) == 2:
        return makers[op](expr_from_json(args[0]), expr_from_json(args[1]))
    raise ValueError(f"bad expression object: {obj!r}")
