"""Seeded random corpora of formulas and model pairs for property checks."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .formula import BOT, Atom, Conj, Disj, Formula, Impl, Neg
from .frames import SystemClass, generate_model
from .model import RMModel


@dataclass(frozen=True)
class FormulaConfig:
    max_depth: int = 4
    max_width: int = 3
    leaf_prob: float = 0.25


@dataclass(frozen=True)
class PairCorpusConfig:
    pairs: int = 200
    max_worlds: int = 3
    max_props: int = 2
    seed: int = 2024
    systems: tuple[str, ...] = ("Raw", "B", "R", "RM")
    # fraction of pairs whose right model is a renamed copy of the left
    copy_fraction: float = 0.2


def random_formula(rng: random.Random, props: Sequence[str], cfg: FormulaConfig = FormulaConfig(),
                   depth: int | None = None) -> Formula:
    depth = cfg.max_depth if depth is None else depth
    if depth == 0 or rng.random() < cfg.leaf_prob:
        if props and rng.random() < 0.85:
            return Atom(rng.choice(list(props)))
        return BOT
    kind = rng.choice(("neg", "conj", "disj", "impl", "impl"))
    if kind == "neg":
        return Neg(random_formula(rng, props, cfg, depth - 1))
    if kind == "impl":
        return Impl(random_formula(rng, props, cfg, depth - 1),
                    random_formula(rng, props, cfg, depth - 1))
    items = tuple(random_formula(rng, props, cfg, depth - 1)
                  for _ in range(rng.randint(0, cfg.max_width)))
    return Conj(items) if kind == "conj" else Disj(items)


def formula_pool(props: Sequence[str], n: int, seed: int, cfg: FormulaConfig = FormulaConfig()) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, props, cfg) for _ in range(n)]


def renamed_copy(m: RMModel, rng: random.Random, prefix: str = "v") -> RMModel:
    """Isomorphic copy with fresh world ids in a shuffled order."""
    order = list(m.worlds)
    rng.shuffle(order)
    ren = {w: f"{prefix}{k}" for k, w in enumerate(order)}
    return RMModel(
        worlds=tuple(ren[w] for w in order),
        R={tuple(ren[w] for w in t) for t in m.R},
        star={ren[w]: ren[v] for w, v in m.star.items()},
        T=ren[m.T],
        valuation={p: {ren[w] for w in ws} for p, ws in m.valuation.items()},
        props=m.props,
    )


def model_pairs(cfg: PairCorpusConfig = PairCorpusConfig()) -> Iterator[tuple[RMModel, RMModel]]:
    """Deterministic stream of model pairs sharing one PropSet per pair."""
    rng = random.Random(cfg.seed)
    for _ in range(cfg.pairs):
        system = SystemClass(rng.choice(cfg.systems))
        k = rng.randint(1, cfg.max_props)
        m1 = generate_model(rng.randint(1, cfg.max_worlds), k, system, rng.getrandbits(32))
        if rng.random() < cfg.copy_fraction:
            m2 = renamed_copy(m1, rng)
        else:
            m2 = generate_model(rng.randint(1, cfg.max_worlds), k, system, rng.getrandbits(32))
        yield m1, m2
