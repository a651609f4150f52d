"""Finite Routley-Meyer models and the satisfaction relation."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Mapping

from .errors import MalformedModel, UnknownProp, UnknownWorld
from .formula import Atom, Bottom, Conj, Disj, Formula, Neg, _postorder, atoms

World = str


@dataclass(frozen=True, eq=False)
class RMModel:
    """A structure <W, R, *, T, V>.

    ``worlds`` fixes the world order used for every deterministic tie-break.
    ``props`` is the PropSet in play; props without a valuation entry are
    false everywhere.
    """

    worlds: tuple[World, ...]
    R: frozenset[tuple[World, World, World]]
    star: Mapping[World, World]
    T: World
    valuation: Mapping[str, frozenset[World]]
    props: tuple[str, ...] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "R", frozenset(tuple(t) for t in self.R))
        object.__setattr__(self, "star", dict(self.star))
        object.__setattr__(
            self, "valuation", {p: frozenset(ws) for p, ws in self.valuation.items()}
        )
        props = sorted(self.valuation) if self.props is None else self.props
        object.__setattr__(self, "props", tuple(props))

    def __eq__(self, other):
        if not isinstance(other, RMModel):
            return NotImplemented
        return (
            self.worlds == other.worlds
            and self.R == other.R
            and self.star == other.star
            and self.T == other.T
            and self.props == other.props
            and self.valuation == other.valuation
        )

    __hash__ = None

    def V(self, p: str) -> frozenset[World]:
        return self.valuation.get(p, frozenset())

    @cached_property
    def index(self) -> dict[World, int]:
        return {w: i for i, w in enumerate(self.worlds)}

    @cached_property
    def successors(self) -> dict[World, tuple[tuple[World, World], ...]]:
        """x -> sorted (b, c) with Rxbc."""
        idx = self.index
        out: dict[World, list] = {w: [] for w in self.worlds}
        for x, b, c in self.R:
            out[x].append((b, c))
        return {
            x: tuple(sorted(pairs, key=lambda bc: (idx[bc[0]], idx[bc[1]])))
            for x, pairs in out.items()
        }

    def sorted_worlds(self, ws) -> list[World]:
        return sorted(ws, key=self.index.__getitem__)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        idx = self.index
        doc = {
            "worlds": list(self.worlds),
            "star": {w: self.star[w] for w in self.worlds},
            "R": [list(t) for t in sorted(self.R, key=lambda t: tuple(idx[w] for w in t))],
            "T": self.T,
            "valuation": {p: self.sorted_worlds(self.V(p)) for p in sorted(self.valuation)},
        }
        if tuple(self.props) != tuple(sorted(self.valuation)):
            doc["props"] = list(self.props)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> RMModel:
        try:
            m = cls(
                worlds=doc["worlds"],
                R=[tuple(t) for t in doc["R"]],
                star=doc["star"],
                T=doc["T"],
                valuation=doc.get("valuation", {}),
                props=doc.get("props"),
            )
        except (KeyError, TypeError) as e:
            raise MalformedModel(f"bad model document: {e}") from None
        validate(m)
        return m


def validate(model: RMModel) -> None:
    """Raise MalformedModel unless the structural invariants hold."""
    W = set(model.worlds)
    if not model.worlds:
        raise MalformedModel("world set is empty")
    if len(W) != len(model.worlds):
        raise MalformedModel("duplicate world ids")
    if any(not isinstance(w, str) for w in model.worlds):
        raise MalformedModel("world ids must be strings")
    if model.T not in W:
        raise MalformedModel(f"T={model.T!r} is not a world")
    for t in model.R:
        if len(t) != 3 or any(w not in W for w in t):
            raise MalformedModel(f"triple {t!r} out of range")
    for w in model.worlds:
        if w not in model.star:
            raise MalformedModel(f"star is not total: missing {w!r}")
    for w, v in model.star.items():
        if w not in W or v not in W:
            raise MalformedModel(f"star maps {w!r} to {v!r} outside the world set")
    for p, ws in model.valuation.items():
        if not ws <= W:
            raise MalformedModel(f"V({p}) is not a subset of the worlds")
    if len(set(model.props)) != len(model.props):
        raise MalformedModel("duplicate props")
    for p in model.props:
        try:
            Atom(p)
        except ValueError as e:
            raise MalformedModel(str(e)) from None


def extension(model: RMModel, f: Formula, memo: dict | None = None) -> frozenset[World]:
    """Set of worlds at which ``f`` holds.

    Works bottom-up over distinct nodes, so heavily shared DAGs are cheap.
    ``memo`` maps ``id(node)`` to its extension and may be reused across calls
    on the same model while the nodes stay alive.
    """
    if memo is None:
        memo = {}
    W = frozenset(model.worlds)
    for node in _postorder(f):
        if id(node) in memo:
            continue
        if isinstance(node, Bottom):
            ext = frozenset()
        elif isinstance(node, Atom):
            ext = model.V(node.name)
        elif isinstance(node, Neg):
            inner = memo[id(node.sub)]
            ext = frozenset(w for w in model.worlds if model.star[w] not in inner)
        elif isinstance(node, Conj):
            ext = W
            for c in node.items:
                ext = ext & memo[id(c)]
        elif isinstance(node, Disj):
            ext = frozenset()
            for c in node.items:
                ext = ext | memo[id(c)]
        else:
            a, b = memo[id(node.antecedent)], memo[id(node.consequent)]
            succ = model.successors
            ext = frozenset(
                w for w in model.worlds if all(y in b for x, y in succ[w] if x in a)
            )
        memo[id(node)] = ext
    return memo[id(f)]


def check_props(model: RMModel, f: Formula) -> None:
    known = set(model.props)
    for p in sorted(atoms(f)):
        if p not in known:
            raise UnknownProp(p)


def satisfies(model: RMModel, w: World, f: Formula) -> bool:
    if w not in model.index:
        raise UnknownWorld(w)
    check_props(model, f)
    return w in extension(model, f)


def load_model(path: str | Path) -> RMModel:
    with open(path) as fh:
        return RMModel.from_json(json.load(fh))


def dump_model(model: RMModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model.to_json(), indent=2, sort_keys=False) + "\n")


def fixture_a() -> RMModel:
    """Two-world RM model: star swaps t and s, p true everywhere, q only at t."""
    R = {
        ("t", "t", "t"), ("t", "s", "t"), ("t", "s", "s"), ("s", "t", "t"),
        ("s", "t", "s"), ("s", "s", "t"), ("s", "s", "s"),
    }
    return RMModel(
        worlds=("t", "s"),
        R=R,
        star={"t": "s", "s": "t"},
        T="t",
        valuation={"p": {"t", "s"}, "q": {"t"}},
    )


def fixture_b(p_worlds=()) -> RMModel:
    """One world, R = {(t,t,t)}, star the identity; V(p) = ``p_worlds``."""
    return RMModel(
        worlds=("t",),
        R={("t", "t", "t")},
        star={"t": "t"},
        T="t",
        valuation={"p": set(p_worlds)},
    )
