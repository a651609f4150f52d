"""Recursive-descent parser for the formula text syntax.

    formula := "bot" | "top" | ident | "~" formula | "(" formula "->" formula ")"
             | "And" "[" [formula {"," formula}] "]"
             | "Or" "[" [formula {"," formula}] "]"
"""
from __future__ import annotations

import re
from typing import NamedTuple

from .formula import BOT, TOP, Atom, Conj, Disj, Formula, Impl, Neg

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<arrow>->)|(?P<punct>[~()\[\],])|(?P<word>[A-Za-z_][A-Za-z0-9_]*)"
)
_FORMULA_START = ("'('", "'And'", "'Or'", "'bot'", "'top'", "'~'", "identifier")


class Token(NamedTuple):
    kind: str  # "->", one of ~()[],  "word", or "eof"
    text: str
    line: int
    column: int


class FormulaSyntaxError(SyntaxError):
    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...]):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        super().__init__(
            f"{message} at line {line}, column {column}; expected one of: "
            + ", ".join(self.expected)
        )


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise FormulaSyntaxError(
                f"unexpected character {text[pos]!r}", line, col, _FORMULA_START
            )
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ws":
            for i, ch in enumerate(chunk):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        elif kind == "arrow":
            tokens.append(Token("->", chunk, line, col))
        elif kind == "punct":
            tokens.append(Token(chunk, chunk, line, col))
        else:
            tokens.append(Token("word", chunk, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, expected) -> None:
        t = self.tok
        what = "end of input" if t.kind == "eof" else f"{t.text!r}"
        raise FormulaSyntaxError(f"unexpected {what}", t.line, t.column, expected)

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail((f"'{kind}'",))
        t = self.tok
        self.i += 1
        return t

    def formula(self) -> Formula:
        t = self.tok
        if t.kind == "~":
            self.i += 1
            return Neg(self.formula())
        if t.kind == "(":
            self.i += 1
            left = self.formula()
            self.expect("->")
            right = self.formula()
            self.expect(")")
            return Impl(left, right)
        if t.kind == "word":
            if t.text in ("And", "Or"):
                self.i += 1
                items = self.item_list()
                return Conj(items) if t.text == "And" else Disj(items)
            if t.text == "bot":
                self.i += 1
                return BOT
            if t.text == "top":
                self.i += 1
                return TOP
            if re.fullmatch(r"[a-z][a-z0-9_]*", t.text):
                self.i += 1
                return Atom(t.text)
        self.fail(_FORMULA_START)

    def item_list(self) -> tuple[Formula, ...]:
        self.expect("[")
        if self.tok.kind == "]":
            self.i += 1
            return ()
        items = [self.formula()]
        while self.tok.kind == ",":
            self.i += 1
            items.append(self.formula())
        if self.tok.kind != "]":
            self.fail(("','", "']'"))
        self.i += 1
        return tuple(items)


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "eof":
        p.fail(("end of input",))
    return f
