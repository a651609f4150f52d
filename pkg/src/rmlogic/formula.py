"""Relevant formulas: AST, canonical printing, degree and derived connectives.

Conjunction and disjunction carry finite ordered item lists. ``Conj(())`` is
true everywhere and ``Disj(())`` nowhere.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import BoundTooSmall

IDENT_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
RESERVED = frozenset({"bot", "top"})


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not IDENT_RE.match(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid propositional variable {self.name!r}")


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Neg:
    sub: Formula


@dataclass(frozen=True)
class Conj:
    items: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Disj:
    items: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Impl:
    antecedent: Formula
    consequent: Formula


Formula = Union[Atom, Bottom, Neg, Conj, Disj, Impl]

BOT = Bottom()
TOP = Neg(BOT)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Neg):
        return (f.sub,)
    if isinstance(f, (Conj, Disj)):
        return f.items
    if isinstance(f, Impl):
        return (f.antecedent, f.consequent)
    return ()


def _postorder(f: Formula) -> Iterator[Formula]:
    """Each distinct node (by identity) once, children before parents."""
    seen: set[int] = set()
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for c in reversed(children(node)):
            if id(c) not in seen:
                stack.append((c, False))


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(n.name for n in _postorder(f) if isinstance(n, Atom))


def degree(f: Formula) -> int:
    """Nesting depth of ``->``; negation, conjunction and disjunction add nothing."""
    memo: dict[int, int] = {}
    for node in _postorder(f):
        if isinstance(node, Impl):
            d = max(memo[id(node.antecedent)], memo[id(node.consequent)]) + 1
        else:
            d = max((memo[id(c)] for c in children(node)), default=0)
        memo[id(node)] = d
    return memo[id(f)]


def tree_size(f: Formula) -> int:
    """Node count of the fully materialized tree (shared nodes counted per use)."""
    memo: dict[int, int] = {}
    for node in _postorder(f):
        memo[id(node)] = 1 + sum(memo[id(c)] for c in children(node))
    return memo[id(f)]


def dag_size(f: Formula) -> int:
    return sum(1 for _ in _postorder(f))


def to_text(f: Formula) -> str:
    """Canonical concrete syntax; ``parse(to_text(f)) == f``."""
    out: dict[int, str] = {}
    for node in _postorder(f):
        if isinstance(node, Atom):
            s = node.name
        elif isinstance(node, Bottom):
            s = "bot"
        elif isinstance(node, Neg):
            s = "~" + out[id(node.sub)]
        elif isinstance(node, Conj):
            s = "And[" + ", ".join(out[id(c)] for c in node.items) + "]"
        elif isinstance(node, Disj):
            s = "Or[" + ", ".join(out[id(c)] for c in node.items) + "]"
        else:
            s = f"({out[id(node.antecedent)]} -> {out[id(node.consequent)]})"
        out[id(node)] = s
    return out[id(f)]


def nested_impl(phi: Formula, psi: Formula, n: int) -> Formula:
    """phi -> (phi -> (... (phi -> psi))) with n copies of phi."""
    f = psi
    for _ in range(n):
        f = Impl(phi, f)
    return f


def omega_arrow(phi: Formula, psi: Formula, bound: int) -> Disj:
    """Iterated entailment truncated at ``bound`` antecedent copies.

    The untruncated connective is the disjunction over every n > 1 of the
    n-fold nested implication; here n runs over 2..bound.
    """
    if bound < 2:
        raise BoundTooSmall(f"bound must be >= 2, got {bound}")
    return Disj(tuple(nested_impl(phi, psi, n) for n in range(2, bound + 1)))
