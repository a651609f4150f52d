"""Frame conditions for the B, R and RM model classes, and a model generator.

Condition ids:

    b1  RTxx
    b2  RTxv and Rvyz  =>  Rxyz
    b3  x** = x
    b4  RTxy  =>  RTy*x*                (B only; R replaces it by r4)
    b5  x in V(p) and RTxy  =>  y in V(p)
    r4  Rzxy  =>  Rzy*x*
    r5  R2(xy)zv  =>  R2x(yz)v
    r6  Rxxx
    r7  Rxyz  =>  Ryxz
    m1  Rxyz  =>  RTxz or RTyz
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from itertools import product

from .errors import GenerationFailed
from .model import RMModel, validate


class SystemClass(enum.Enum):
    Raw = "Raw"
    B = "B"
    R = "R"
    RM = "RM"


CONDITIONS = {
    SystemClass.Raw: (),
    SystemClass.B: ("b1", "b2", "b3", "b4", "b5"),
    SystemClass.R: ("b1", "b2", "b3", "r4", "b5", "r5", "r6", "r7"),
    SystemClass.RM: ("b1", "b2", "b3", "r4", "b5", "r5", "r6", "r7", "m1"),
}


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: tuple[tuple[str, str], ...]
    prop: str | None = None

    def to_json(self) -> dict:
        doc = {"condition": self.condition, "witness": dict(self.witness)}
        if self.prop is not None:
            doc["prop"] = self.prop
        return doc

    def describe(self) -> str:
        s = f"VIOLATION {self.condition}: witness " + " ".join(f"{k}={v}" for k, v in self.witness)
        if self.prop is not None:
            s += f" (prop {self.prop})"
        return s


@dataclass(frozen=True)
class FrameReport:
    violations: tuple[Violation, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"passed": self.passed, "violations": [v.to_json() for v in self.violations]}


def _w(**kw) -> tuple[tuple[str, str], ...]:
    return tuple(kw.items())


def _check(m: RMModel, cid: str):
    W, R, T, st = m.worlds, m.R, m.T, m.star
    if cid == "b1":
        for x in W:
            if (T, x, x) not in R:
                yield Violation(cid, _w(x=x))
    elif cid == "b2":
        for x, v, y, z in product(W, repeat=4):
            if (T, x, v) in R and (v, y, z) in R and (x, y, z) not in R:
                yield Violation(cid, _w(x=x, v=v, y=y, z=z))
    elif cid == "b3":
        for x in W:
            if st[st[x]] != x:
                yield Violation(cid, _w(x=x))
    elif cid == "b4":
        for x, y in product(W, repeat=2):
            if (T, x, y) in R and (T, st[y], st[x]) not in R:
                yield Violation(cid, _w(x=x, y=y))
    elif cid == "b5":
        for p in m.props:
            Vp = m.V(p)
            for x, y in product(W, repeat=2):
                if x in Vp and (T, x, y) in R and y not in Vp:
                    yield Violation(cid, _w(x=x, y=y), prop=p)
    elif cid == "r4":
        for z, x, y in product(W, repeat=3):
            if (z, x, y) in R and (z, st[y], st[x]) not in R:
                yield Violation(cid, _w(z=z, x=x, y=y))
    elif cid == "r5":
        for x, y, z, v in product(W, repeat=4):
            u = next((u for u in W if (x, y, u) in R and (u, z, v) in R), None)
            if u is None:
                continue
            if not any((x, u2, v) in R and (y, z, u2) in R for u2 in W):
                yield Violation(cid, _w(x=x, y=y, z=z, v=v, u=u))
    elif cid == "r6":
        for x in W:
            if (x, x, x) not in R:
                yield Violation(cid, _w(x=x))
    elif cid == "r7":
        for x, y, z in product(W, repeat=3):
            if (x, y, z) in R and (y, x, z) not in R:
                yield Violation(cid, _w(x=x, y=y, z=z))
    elif cid == "m1":
        for x, y, z in product(W, repeat=3):
            if (x, y, z) in R and (T, x, z) not in R and (T, y, z) not in R:
                yield Violation(cid, _w(x=x, y=y, z=z))
    else:
        raise ValueError(f"unknown condition {cid!r}")


def check_frame(model: RMModel, system: SystemClass | str) -> FrameReport:
    """Brute-force every condition of ``system`` over all world tuples."""
    system = SystemClass(system)
    validate(model)
    violations = []
    for cid in CONDITIONS[system]:
        violations.extend(_check(model, cid))
    return FrameReport(tuple(violations))


def prop_names(k: int) -> list[str]:
    base = ["p", "q", "r"]
    return base[:k] + [f"p{i}" for i in range(3, k)]


def _random_involution(worlds, rng: random.Random) -> dict:
    order = list(worlds)
    rng.shuffle(order)
    star = {}
    while order:
        x = order.pop()
        if order and rng.random() < 0.5:
            y = order.pop()
            star[x], star[y] = y, x
        else:
            star[x] = x
    return star


def _horn_close(R: set, worlds, T, star, system: SystemClass) -> None:
    strong = system in (SystemClass.R, SystemClass.RM)
    changed = True
    while changed:
        before = len(R)
        R.update((T, x, x) for x in worlds)
        if strong:
            R.update((x, x, x) for x in worlds)
        for t in list(R):
            x, y, z = t
            if x == T:
                R.update((y, b, c) for (v, b, c) in list(R) if v == z)
                if not strong:
                    R.add((T, star[z], star[y]))
            if strong:
                R.add((x, star[z], star[y]))
                R.add((y, x, z))
        changed = len(R) != before


def _close_valuation(V: dict, R: set, T) -> None:
    for p, ws in V.items():
        frontier = list(ws)
        while frontier:
            x = frontier.pop()
            for t in R:
                if t[0] == T and t[1] == x and t[2] not in ws:
                    ws.add(t[2])
                    frontier.append(t[2])


def generate_model(
    worlds: int,
    props: int,
    system: SystemClass | str = SystemClass.B,
    seed: int = 0,
    *,
    density: float | None = None,
    max_retries: int = 20,
) -> RMModel:
    """Random model passing ``check_frame(., system)``; deterministic in ``seed``.

    A random star (an involution unless ``system`` is Raw) and a random R are
    drawn, then R is closed under the Horn-shaped conditions and each V(p)
    upward along RT. Existential (r5) and disjunctive (m1) failures are
    repaired by adding a randomly chosen witness and the loop repeats.
    """
    system = SystemClass(system)
    if worlds < 1 or props < 0:
        raise ValueError("need worlds >= 1 and props >= 0")
    master = random.Random(seed)
    W = [f"w{i}" for i in range(worlds)]
    names = prop_names(props)
    for _ in range(max_retries):
        rng = random.Random(master.getrandbits(64))
        T = W[0]
        d = density if density is not None else rng.uniform(0.05, 0.35)
        if system is SystemClass.Raw:
            star = {w: rng.choice(W) for w in W}
        else:
            star = _random_involution(W, rng)
        R = {t for t in product(W, repeat=3) if rng.random() < d}
        V = {p: {w for w in W if rng.random() < 0.5} for p in names}
        m = RMModel(tuple(W), R, star, T, V, props=tuple(names))
        if system is SystemClass.Raw:
            return m
        for _ in range(worlds ** 3 + 1):
            _horn_close(R, W, T, star, system)
            _close_valuation(V, R, T)
            m = RMModel(tuple(W), R, star, T, V, props=tuple(names))
            report = check_frame(m, system)
            if report.passed:
                return m
            for v in report.violations:
                wit = dict(v.witness)
                if v.condition == "r5":
                    u = rng.choice(W)
                    R.add((wit["x"], u, wit["v"]))
                    R.add((wit["y"], wit["z"], u))
                elif v.condition == "m1":
                    R.add((T, wit[rng.choice("xy")], wit["z"]))
    raise GenerationFailed(f"no {system.value} model after {max_retries} attempts (seed {seed})")
