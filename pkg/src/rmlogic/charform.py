"""Inductive characteristic formulas for pointed models and the theta test.

For a world a of M_i the stage-0 formula conjoins the literals (p or ~p over the
shared PropSet) true at a. Stage n+1 conjoins the stage-n formula with every
implication  chi(b) -> Or[chi(d) for d in X]  (b a world of M_j, X a set of
worlds of M_i, chi the stage-n formulas) that holds at a, and with every negated
implication  ~(chi(b) -> Or[chi(d) for d in X])  with the roles swapped (b in
W_i, X a set of worlds of M_j) that holds at a.

Formulas are shared DAG nodes; every node carries its extension in both models,
so satisfaction tests never walk a materialized tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bisim import other, resolve_props
from .errors import BudgetExceeded, NotBModel, UnknownWorld
from .formula import Atom, Conj, Disj, Formula, Impl, Neg
from .frames import SystemClass, check_frame
from .model import RMModel, validate

DEFAULT_NODE_BUDGET = 10**6


@dataclass(frozen=True)
class CharKey:
    """Stage-``stage`` formula of ``world`` in model ``source``, aimed at the other model."""

    source: int
    world: str
    stage: int

    @property
    def target(self) -> int:
        return other(self.source)


Extents = tuple[frozenset, frozenset]  # (extension in M1, extension in M2)


class FormulaDag:
    """Memoized store of characteristic formulas for one pair of models."""

    def __init__(self, m1: RMModel, m2: RMModel, props=None,
                 node_budget: int = DEFAULT_NODE_BUDGET, *, literal_negations: bool = False):
        validate(m1)
        validate(m2)
        self.models = {1: m1, 2: m2}
        self.props = resolve_props(m1, m2, props)
        self.node_budget = node_budget
        self.nodes = 0
        self.store: dict[CharKey, Formula] = {}
        self._ext: dict[int, Extents] = {}
        self._keep: list[Formula] = []
        self._stages_built = -1
        # True negates the same family as the positive block; kept only to
        # exhibit that this variant breaks the theta test on B-models.
        self.literal_negations = literal_negations

    # -- node construction ---------------------------------------------------

    def _register(self, node: Formula, ext: Extents) -> Formula:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded(f"characteristic formula DAG exceeds {self.node_budget} nodes")
        self._keep.append(node)
        self._ext[id(node)] = ext
        return node

    def ext(self, node: Formula) -> Extents:
        return self._ext[id(node)]

    def extension(self, node: Formula, tag: int) -> frozenset:
        return self._ext[id(node)][tag - 1]

    def _atom(self, p: str) -> Formula:
        return self._register(Atom(p), (self.models[1].V(p), self.models[2].V(p)))

    def _neg(self, f: Formula) -> Formula:
        ext = tuple(
            frozenset(w for w in m.worlds if m.star[w] not in e)
            for m, e in zip((self.models[1], self.models[2]), self.ext(f))
        )
        return self._register(Neg(f), ext)

    def _conj(self, items: list[Formula]) -> Formula:
        exts = []
        for t in (1, 2):
            e = frozenset(self.models[t].worlds)
            for f in items:
                e = e & self.extension(f, t)
            exts.append(e)
        return self._register(Conj(tuple(items)), tuple(exts))

    def _disj(self, items: list[Formula]) -> Formula:
        exts = []
        for t in (1, 2):
            e = frozenset()
            for f in items:
                e = e | self.extension(f, t)
            exts.append(e)
        return self._register(Disj(tuple(items)), tuple(exts))

    def _impl_extents(self, a: Formula, b: Formula) -> Extents:
        exts = []
        for t in (1, 2):
            m = self.models[t]
            ea, eb = self.extension(a, t), self.extension(b, t)
            exts.append(frozenset(
                w for w in m.worlds if all(c in eb for x, c in m.successors[w] if x in ea)
            ))
        return tuple(exts)

    def _impl(self, a: Formula, b: Formula, ext: Extents | None = None) -> Formula:
        return self._register(Impl(a, b), ext or self._impl_extents(a, b))

    # -- stages --------------------------------------------------------------

    def _build_stage0(self) -> None:
        atoms = {p: self._atom(p) for p in self.props}
        negs: dict[str, Formula] = {}
        for i in (1, 2):
            m = self.models[i]
            for a in m.worlds:
                lits = []
                for p in self.props:
                    if a in m.V(p):
                        lits.append(atoms[p])
                    if m.star[a] not in m.V(p):
                        if p not in negs:
                            negs[p] = self._neg(atoms[p])
                        lits.append(negs[p])
                self.store[CharKey(i, a, 0)] = self._conj(lits)

    def _family(self, i: int, n: int) -> list[Formula]:
        """Implications chi(b) -> Or[chi(d) for d in X], b in W_j, X subset of W_i.

        One representative per satisfaction pattern over both models.
        """
        j = other(i)
        mi, mj = self.models[i], self.models[j]
        disjs = []
        for size in range(len(mi.worlds) + 1):
            for X in combinations(mi.worlds, size):
                disjs.append(self._disj([self.store[CharKey(i, d, n)] for d in X]))
        family: list[Formula] = []
        seen: set[Extents] = set()
        for b in mj.worlds:
            ante = self.store[CharKey(j, b, n)]
            for disj in disjs:
                pattern = self._impl_extents(ante, disj)
                if pattern in seen:
                    continue
                seen.add(pattern)
                family.append(self._impl(ante, disj, pattern))
        return family

    def _build_next(self, n: int) -> None:
        family = {i: self._family(i, n) for i in (1, 2)}
        negated = {i: [self._neg(f) for f in family[i]] for i in (1, 2)}
        for i in (1, 2):
            # The negated block comes from the opposite family: the star clause
            # of a bisimulation moves failures of those implications from u* to v*.
            neg_block = negated[i] if self.literal_negations else negated[other(i)]
            for a in self.models[i].worlds:
                items = [self.store[CharKey(i, a, n)]]
                items += [f for f in family[i] if a in self.extension(f, i)]
                items += [g for g in neg_block if a in self.extension(g, i)]
                self.store[CharKey(i, a, n + 1)] = self._conj(items)

    def build_to(self, stage: int) -> None:
        if stage < 0:
            raise ValueError("stage must be >= 0")
        while self._stages_built < stage:
            if self._stages_built < 0:
                self._build_stage0()
            else:
                self._build_next(self._stages_built)
            self._stages_built += 1

    def formula(self, key: CharKey) -> Formula:
        if key.world not in self.models[key.source].index:
            raise UnknownWorld(key.world)
        self.build_to(key.stage)
        return self.store[key]

    # -- stabilization -------------------------------------------------------

    def pattern(self, stage: int) -> tuple:
        """Extensions of every stage-``stage`` formula in both models."""
        self.build_to(stage)
        return tuple(
            self.ext(self.store[CharKey(i, a, stage)])
            for i in (1, 2)
            for a in self.models[i].worlds
        )

    def stabilization_stage(self) -> int:
        """Least n whose satisfaction pattern equals that of stage n+1.

        Extensions only shrink from stage to stage, and stage n+1 is a function
        of the stage-n pattern, so equality at one step means equality forever.
        """
        n = 0
        cur = self.pattern(0)
        while True:
            nxt = self.pattern(n + 1)
            if nxt == cur:
                return n
            n, cur = n + 1, nxt


def char_formula(m1: RMModel, m2: RMModel, key: CharKey, props=None,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> Formula:
    return FormulaDag(m1, m2, props, node_budget).formula(key)


def stabilization_stage(m1: RMModel, m2: RMModel, props=None,
                        node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    return FormulaDag(m1, m2, props, node_budget).stabilization_stage()


def require_b(*models: RMModel) -> None:
    for m in models:
        report = check_frame(m, SystemClass.B)
        if not report.passed:
            raise NotBModel(report.violations[0].describe())


def theta(mi: RMModel, wi: str, mj: RMModel, props=None,
          node_budget: int = DEFAULT_NODE_BUDGET) -> Formula:
    """Stabilized characteristic formula of (mi, wi) aimed at mj.

    (mj, wj) satisfies it iff some directed bisimulation relates wi to wj.
    Both models must be B-models.
    """
    require_b(mi, mj)
    dag = FormulaDag(mi, mj, props, node_budget)
    xi = dag.stabilization_stage()
    return dag.formula(CharKey(1, wi, xi))
