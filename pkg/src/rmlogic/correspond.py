"""Translation of relevant formulas into the first-order correspondence language.

Signature: constant T, unary function *, ternary relation R, one unary predicate
per propositional variable. ``fo_eval`` is a plain Tarskian evaluator over a
finite model and shares no code with ``model.satisfies``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import count, product
from typing import Callable, Union

from .errors import UnboundVariable
from .formula import Atom, Bottom, Conj, Disj, Formula, Impl, Neg
from .model import RMModel


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Star:
    t: FOTerm


@dataclass(frozen=True)
class ConstT:
    pass


FOTerm = Union[Var, Star, ConstT]


@dataclass(frozen=True)
class Pred:
    p: str
    t: FOTerm


@dataclass(frozen=True)
class RAtom:
    t1: FOTerm
    t2: FOTerm
    t3: FOTerm


@dataclass(frozen=True)
class Not:
    f: FOFormula


@dataclass(frozen=True)
class And:
    items: tuple[FOFormula, ...] = ()


@dataclass(frozen=True)
class Or:
    items: tuple[FOFormula, ...] = ()


@dataclass(frozen=True)
class MatImpl:
    f: FOFormula
    g: FOFormula


@dataclass(frozen=True)
class Forall:
    vars: tuple[str, ...]
    f: FOFormula


@dataclass(frozen=True)
class Exists:
    vars: tuple[str, ...]
    f: FOFormula


FOFormula = Union[Pred, RAtom, Not, And, Or, MatImpl, Forall, Exists]


def translate(f: Formula, x: str = "x") -> FOFormula:
    """Standard translation with ``x`` the only free variable.

    Substituting x* for x (negation) is done by threading the current world
    term down the recursion; bound variables are y0, z0, y1, z1, ... and skip
    ``x`` itself.
    """
    fresh = count()

    def new_pair() -> tuple[str, str]:
        while True:
            k = next(fresh)
            y, z = f"y{k}", f"z{k}"
            if x not in (y, z):
                return y, z

    def tr(g: Formula, t: FOTerm) -> FOFormula:
        if isinstance(g, Bottom):
            r = RAtom(t, t, t)
            return And((Not(r), r))
        if isinstance(g, Atom):
            return Pred(g.name, t)
        if isinstance(g, Neg):
            return Not(tr(g.sub, Star(t)))
        if isinstance(g, Conj):
            return And(tuple(tr(h, t) for h in g.items))
        if isinstance(g, Disj):
            return Or(tuple(tr(h, t) for h in g.items))
        if isinstance(g, Impl):
            y, z = new_pair()
            body = MatImpl(
                And((RAtom(t, Var(y), Var(z)), tr(g.antecedent, Var(y)))),
                tr(g.consequent, Var(z)),
            )
            return Forall((y, z), body)
        raise TypeError(f"not a formula: {g!r}")

    return tr(f, Var(x))


def _term_vars(t: FOTerm) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Star):
        return _term_vars(t.t)
    return set()


def free_vars(f: FOFormula) -> frozenset[str]:
    if isinstance(f, Pred):
        return frozenset(_term_vars(f.t))
    if isinstance(f, RAtom):
        return frozenset(_term_vars(f.t1) | _term_vars(f.t2) | _term_vars(f.t3))
    if isinstance(f, Not):
        return free_vars(f.f)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_vars(g) for g in f.items))
    if isinstance(f, MatImpl):
        return free_vars(f.f) | free_vars(f.g)
    return free_vars(f.f) - set(f.vars)


def rename_bound(f: FOFormula, rename: Callable[[str], str]) -> FOFormula:
    """Apply ``rename`` to every bound variable and its bound occurrences."""

    def term(t: FOTerm, env: dict) -> FOTerm:
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, Star):
            return Star(term(t.t, env))
        return t

    def go(g: FOFormula, env: dict) -> FOFormula:
        if isinstance(g, Pred):
            return Pred(g.p, term(g.t, env))
        if isinstance(g, RAtom):
            return RAtom(term(g.t1, env), term(g.t2, env), term(g.t3, env))
        if isinstance(g, Not):
            return Not(go(g.f, env))
        if isinstance(g, And):
            return And(tuple(go(h, env) for h in g.items))
        if isinstance(g, Or):
            return Or(tuple(go(h, env) for h in g.items))
        if isinstance(g, MatImpl):
            return MatImpl(go(g.f, env), go(g.g, env))
        inner = dict(env)
        inner.update({v: rename(v) for v in g.vars})
        return type(g)(tuple(inner[v] for v in g.vars), go(g.f, inner))

    return go(f, {})


def fo_eval(model: RMModel, f: FOFormula, assignment: dict[str, str]) -> bool:
    """Tarskian truth of ``f`` in ``model`` under ``assignment``."""
    env = dict(assignment)
    W, R, star = model.worlds, model.R, model.star

    def val(t: FOTerm) -> str:
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise UnboundVariable(t.name) from None
        if isinstance(t, Star):
            return star[val(t.t)]
        return model.T

    def ev(g: FOFormula) -> bool:
        if isinstance(g, Pred):
            return val(g.t) in model.V(g.p)
        if isinstance(g, RAtom):
            return (val(g.t1), val(g.t2), val(g.t3)) in R
        if isinstance(g, Not):
            return not ev(g.f)
        if isinstance(g, And):
            return all(ev(h) for h in g.items)
        if isinstance(g, Or):
            return any(ev(h) for h in g.items)
        if isinstance(g, MatImpl):
            return not ev(g.f) or ev(g.g)
        want = isinstance(g, Forall)
        saved = {v: env[v] for v in g.vars if v in env}
        try:
            for values in product(W, repeat=len(g.vars)):
                env.update(zip(g.vars, values))
                if ev(g.f) != want:
                    return not want
            return want
        finally:
            for v in g.vars:
                env.pop(v, None)
            env.update(saved)

    return ev(f)


def _pred_name(p: str) -> str:
    return p[0].upper() + p[1:]


def fo_text(f: FOFormula) -> str:
    """ASCII rendering, e.g. ``forall y0 z0. (R(x,y0,z0) & P(y0)) => Q(z0)``."""

    def term(t: FOTerm) -> str:
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Star):
            return term(t.t) + "^*"
        return "T"

    def atomic(g: FOFormula) -> bool:
        return isinstance(g, (Pred, RAtom, Not)) or (isinstance(g, (And, Or)) and not g.items)

    def sub(g: FOFormula) -> str:
        s = show(g)
        return s if atomic(g) else f"({s})"

    def show(g: FOFormula) -> str:
        if isinstance(g, Pred):
            return f"{_pred_name(g.p)}({term(g.t)})"
        if isinstance(g, RAtom):
            return f"R({term(g.t1)},{term(g.t2)},{term(g.t3)})"
        if isinstance(g, Not):
            return "!" + sub(g.f)
        if isinstance(g, And):
            return " & ".join(sub(h) for h in g.items) if g.items else "true"
        if isinstance(g, Or):
            return " | ".join(sub(h) for h in g.items) if g.items else "false"
        if isinstance(g, MatImpl):
            return f"{sub(g.f)} => {sub(g.g)}"
        q = "forall" if isinstance(g, Forall) else "exists"
        return f"{q} {' '.join(g.vars)}. {show(g.f)}"

    return show(f)
