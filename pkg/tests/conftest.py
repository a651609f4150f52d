from itertools import product
from pathlib import Path

import pytest
from hypothesis import strategies as st

from rmlogic.formula import BOT, Atom, Conj, Disj, Impl, Neg
from rmlogic.frames import generate_model
from rmlogic.model import RMModel, fixture_a, fixture_b

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
PROPS = ("p", "q", "r")


@pytest.fixture
def model_a():
    return fixture_a()


@pytest.fixture
def model_b():
    return fixture_b()


def formulas(props=PROPS, max_leaves=12):
    leaves = st.one_of(st.sampled_from([Atom(p) for p in props]), st.just(BOT))
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            kids.map(Neg),
            st.lists(kids, max_size=3).map(lambda xs: Conj(tuple(xs))),
            st.lists(kids, max_size=3).map(lambda xs: Disj(tuple(xs))),
            st.tuples(kids, kids).map(lambda ab: Impl(*ab)),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def raw_models(draw, max_worlds=3, props=("p", "q")):
    n = draw(st.integers(1, max_worlds))
    W = tuple(f"w{i}" for i in range(n))
    triples = list(product(W, repeat=3))
    R = {t for t in triples if draw(st.booleans())}
    star = {w: draw(st.sampled_from(W)) for w in W}
    V = {p: {w for w in W if draw(st.booleans())} for p in props}
    return RMModel(W, R, star, draw(st.sampled_from(W)), V)


@st.composite
def generated_models(draw, system="B", max_worlds=3, props=2):
    return generate_model(draw(st.integers(1, max_worlds)), props, system,
                          draw(st.integers(0, 2**32 - 1)))
