"""Relevant directed (alpha-)bisimulations between two finite models.

Sides are numbered 1 and 2. ``Z[i]`` relates worlds of model i to worlds of the
opposite model j. A pair (x, y) in ``Z[i]`` reads "everything true at x in M_i
is true at y in M_j" once the refinement has stabilized.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Union

from .errors import NotDistinguishable, UnknownProp, UnknownWorld
from .formula import BOT, TOP, Atom, Conj, Disj, Formula, Impl, Neg
from .model import RMModel, validate

Pair = tuple[str, str]


def other(i: int) -> int:
    return 3 - i


@dataclass(frozen=True)
class DirectedPair:
    Z1: frozenset[Pair]
    Z2: frozenset[Pair]

    def side(self, i: int) -> frozenset[Pair]:
        return self.Z1 if i == 1 else self.Z2

    def to_json(self, m1: RMModel, m2: RMModel) -> dict:
        return {
            "Z1": _sorted_pairs(self.Z1, m1, m2),
            "Z2": _sorted_pairs(self.Z2, m2, m1),
        }


def _sorted_pairs(Z, mi: RMModel, mj: RMModel) -> list[list[str]]:
    return [list(p) for p in sorted(Z, key=lambda p: (mi.index[p[0]], mj.index[p[1]]))]


@dataclass(frozen=True)
class DropRecord:
    """Why (x, y) left ``Z[side]`` at ``stage``.

    kind "atom": ``witness`` is a prop true at x and false at y.
    kind "star": ``witness`` is the pair (y*, x*) of the opposite side, already gone.
    kind "challenge": ``witness`` is a triple (y, b, c) of R_j with no matching response.
    """

    side: int
    x: str
    y: str
    stage: int
    kind: str
    witness: Union[str, tuple[str, ...]]
    seq: int

    def to_json(self) -> dict:
        w = self.witness if isinstance(self.witness, str) else list(self.witness)
        return {
            "side": self.side, "x": self.x, "y": self.y, "stage": self.stage,
            "kind": self.kind, "witness": w, "seq": self.seq,
        }


@dataclass
class Stratification:
    m1: RMModel
    m2: RMModel
    props: tuple[str, ...]
    stages: list[DirectedPair]
    drops: dict[tuple[int, str, str], DropRecord] = field(default_factory=dict)

    @property
    def alpha(self) -> int:
        return len(self.stages) - 1

    @property
    def final(self) -> DirectedPair:
        return self.stages[-1]

    def model(self, i: int) -> RMModel:
        return self.m1 if i == 1 else self.m2

    def related(self, i: int, x: str, y: str) -> bool:
        return (x, y) in self.final.side(i)

    def to_json(self) -> dict:
        m1, m2 = self.m1, self.m2
        drops = sorted(self.drops.values(), key=lambda d: d.seq)
        return {
            "alpha": self.alpha,
            "props": list(self.props),
            "stages": [s.to_json(m1, m2) for s in self.stages],
            "drops": [d.to_json() for d in drops],
        }


def resolve_props(m1: RMModel, m2: RMModel, props=None) -> tuple[str, ...]:
    """Default PropSet: the props both models declare."""
    if props is None:
        return tuple(sorted(set(m1.props) & set(m2.props)))
    props = tuple(sorted(set(props)))
    for p in props:
        if p not in m1.props or p not in m2.props:
            raise UnknownProp(p)
    return props


def stratify(m1: RMModel, m2: RMModel, props=None) -> Stratification:
    """Greatest relevant directed alpha-bisimulation, refined to its fixed point.

    Stage 0 keeps pairs passing the atom clause, then repeatedly removes pairs
    whose star-dual is missing. Stage b+1 keeps the stage-b pairs that answer
    every R-challenge using stage-b relations, then re-closes under the star
    clause. Stops at the first stage equal to its predecessor.
    """
    validate(m1)
    validate(m2)
    props = resolve_props(m1, m2, props)
    models = {1: m1, 2: m2}
    drops: dict[tuple[int, str, str], DropRecord] = {}

    def drop(i, x, y, stage, kind, witness):
        drops[(i, x, y)] = DropRecord(i, x, y, stage, kind, witness, len(drops))

    def ordered(i, Z):
        mi, mj = models[i], models[other(i)]
        return sorted(Z, key=lambda p: (mi.index[p[0]], mj.index[p[1]]))

    def star_close(Z: dict, stage: int) -> None:
        changed = True
        while changed:
            changed = False
            for i in (1, 2):
                j = other(i)
                mi, mj = models[i], models[j]
                for x, y in ordered(i, Z[i]):
                    dual = (mj.star[y], mi.star[x])
                    if dual not in Z[j]:
                        Z[i].discard((x, y))
                        drop(i, x, y, stage, "star", dual)
                        changed = True

    Z: dict[int, set[Pair]] = {}
    for i in (1, 2):
        mi, mj = models[i], models[other(i)]
        Z[i] = set()
        for x in mi.worlds:
            for y in mj.worlds:
                bad = next((p for p in props if x in mi.V(p) and y not in mj.V(p)), None)
                if bad is None:
                    Z[i].add((x, y))
                else:
                    drop(i, x, y, 0, "atom", bad)
    star_close(Z, 0)
    stages = [DirectedPair(frozenset(Z[1]), frozenset(Z[2]))]

    while True:
        prev = stages[-1]
        stage = len(stages)
        Z = {1: set(prev.Z1), 2: set(prev.Z2)}
        for i in (1, 2):
            j = other(i)
            mi, mj = models[i], models[j]
            Zi, Zj = prev.side(i), prev.side(j)
            for x, y in ordered(i, Z[i]):
                responses = mi.successors[x]
                for b, c in mj.successors[y]:
                    if not any((b, b2) in Zj and (c2, c) in Zi for b2, c2 in responses):
                        Z[i].discard((x, y))
                        drop(i, x, y, stage, "challenge", (y, b, c))
                        break
        star_close(Z, stage)
        nxt = DirectedPair(frozenset(Z[1]), frozenset(Z[2]))
        if nxt == prev:
            break
        stages.append(nxt)
    return Stratification(m1, m2, props, stages, drops)


def max_bisim(m1: RMModel, m2: RMModel, props=None) -> DirectedPair | None:
    """The greatest directed bisimulation, or None when it would be empty."""
    final = stratify(m1, m2, props).final
    if final.Z1 and final.Z2:
        return final
    return None


class BisimVerdict(NamedTuple):
    holds: bool
    clause: str | None = None
    witness: tuple = ()


def check_bisim(m1: RMModel, m2: RMModel, candidate: DirectedPair, props=None) -> BisimVerdict:
    """Check clauses (1)-(3) and nonemptiness for both directions."""
    props = resolve_props(m1, m2, props)
    models = {1: m1, 2: m2}
    for i in (1, 2):
        mi, mj = models[i], models[other(i)]
        for x, y in candidate.side(i):
            if x not in mi.index:
                raise UnknownWorld(x)
            if y not in mj.index:
                raise UnknownWorld(y)
    if not candidate.Z1 or not candidate.Z2:
        return BisimVerdict(False, "nonempty")
    for i in (1, 2):
        j = other(i)
        mi, mj = models[i], models[j]
        Zi, Zj = candidate.side(i), candidate.side(j)
        for x, y in sorted(Zi, key=lambda p: (mi.index[p[0]], mj.index[p[1]])):
            if (mj.star[y], mi.star[x]) not in Zj:
                return BisimVerdict(False, "1", (i, x, y))
            for b, c in mj.successors[y]:
                if not any((b, b2) in Zj and (c2, c) in Zi for b2, c2 in mi.successors[x]):
                    return BisimVerdict(False, "2", (i, x, y, b, c))
            for p in props:
                if x in mi.V(p) and y not in mj.V(p):
                    return BisimVerdict(False, "3", (i, x, y, p))
    return BisimVerdict(True)


def _conj(items: list[Formula]) -> Formula:
    if not items:
        return TOP
    return items[0] if len(items) == 1 else Conj(tuple(items))


def _disj(items: list[Formula]) -> Formula:
    if not items:
        return BOT
    return items[0] if len(items) == 1 else Disj(tuple(items))


def distinguishing_formula(strat: Stratification, side: int, x: str, y: str) -> Formula:
    """A formula true at x in M_side and false at y in the opposite model.

    Its degree never exceeds the stage at which (x, y) was dropped.
    """
    memo: dict[tuple[int, str, str], Formula] = {}

    def build(i: int, a: str, b: str) -> Formula:
        key = (i, a, b)
        if key in memo:
            return memo[key]
        rec = strat.drops.get(key)
        if rec is None:
            raise NotDistinguishable(f"({a}, {b}) survives on side {i}")
        j = other(i)
        if rec.kind == "atom":
            f = Atom(rec.witness)
        elif rec.kind == "star":
            ys, xs = rec.witness
            f = Neg(build(j, ys, xs))
        else:
            _, cb, cc = rec.witness
            mi = strat.model(i)
            before = strat.stages[rec.stage - 1]
            Zi, Zj = before.side(i), before.side(j)
            responses = mi.successors[a]
            ante_worlds = mi.sorted_worlds({b2 for b2, _ in responses if (cb, b2) not in Zj})
            cons_worlds = mi.sorted_worlds({c2 for _, c2 in responses if (c2, cc) not in Zi})
            ante = _conj([build(j, cb, b2) for b2 in ante_worlds])
            cons = _disj([build(i, c2, cc) for c2 in cons_worlds])
            f = Impl(ante, cons)
        memo[key] = f
        return f

    mi, mj = strat.model(side), strat.model(other(side))
    if x not in mi.index:
        raise UnknownWorld(x)
    if y not in mj.index:
        raise UnknownWorld(y)
    return build(side, x, y)


def distinguish(m1: RMModel, w1: str, m2: RMModel, w2: str, props=None) -> Formula:
    """Formula true at (m1, w1) and false at (m2, w2); NotDistinguishable if none exists."""
    return distinguishing_formula(stratify(m1, m2, props), 1, w1, w2)
