"""Acceptance suite: seven criteria, one PASS/FAIL line each.

Run standalone with ``python tests/test_acceptance.py`` or through pytest.
"""
from __future__ import annotations

import contextlib
import io
import random
import sys
import time
from pathlib import Path

import pytest

from rmlogic.bisim import check_bisim, distinguishing_formula, max_bisim, stratify
from rmlogic.charform import CharKey, FormulaDag, theta
from rmlogic.cli import dispatch, report
from rmlogic.correspond import fo_eval, translate
from rmlogic.corpus import FormulaConfig, PairCorpusConfig, model_pairs, random_formula
from rmlogic.errors import NotDistinguishable
from rmlogic.formula import degree
from rmlogic.frames import check_frame, generate_model
from rmlogic.model import fixture_a, satisfies
from rmlogic.parser import parse

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
CORPUS = PairCorpusConfig(pairs=200, max_worlds=3, max_props=2, seed=2024)

_pairs_cache: list | None = None


def corpus_pairs():
    global _pairs_cache
    if _pairs_cache is None:
        _pairs_cache = list(model_pairs(CORPUS))
    return _pairs_cache


def is_b_pair(m1, m2) -> bool:
    return check_frame(m1, "B").passed and check_frame(m2, "B").passed


def criterion_1():
    start = time.perf_counter()
    m = fixture_a()
    ok = (satisfies(m, "t", parse("And[q, ~q]")) is True
          and satisfies(m, "t", parse("And[p, ~p]")) is False
          and check_frame(m, "RM").violations == ())
    elapsed = time.perf_counter() - start
    return ok and elapsed < 1.0, f"fixture checks exact, {elapsed:.3f}s (limit 1s)"


def criterion_2(triples: int = 600):
    start = time.perf_counter()
    rng = random.Random(22)
    cfg = FormulaConfig(max_depth=4)
    agree = 0
    for _ in range(triples):
        k = rng.randint(1, 3)
        m = generate_model(rng.randint(1, 4), k, rng.choice(("Raw", "B", "R", "RM")), rng.getrandbits(32))
        w = rng.choice(m.worlds)
        f = random_formula(rng, m.props, cfg)
        agree += satisfies(m, w, f) == fo_eval(m, translate(f), {"x": w})
    elapsed = time.perf_counter() - start
    ok = agree == triples and elapsed < 30
    return ok, f"{agree}/{triples} triples agree, {elapsed:.1f}s (limit 30s)"


def criterion_3():
    start = time.perf_counter()
    bad = 0
    pairs = corpus_pairs()
    for m1, m2 in pairs:
        s = stratify(m1, m2)
        descends = all(
            b.Z1 <= a.Z1 and b.Z2 <= a.Z2 and a != b for a, b in zip(s.stages, s.stages[1:])
        )
        bounded = s.alpha <= 2 * len(m1.worlds) * len(m2.worlds)
        mb = max_bisim(m1, m2)
        accepted = mb is None or check_bisim(m1, m2, mb).holds
        bad += not (descends and bounded and accepted)
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 60
    return ok, f"{len(pairs) - bad}/{len(pairs)} pairs lawful, {elapsed:.1f}s (limit 60s)"


def criterion_4():
    total = disagree = b_checked = 0
    for m1, m2 in corpus_pairs():
        s = stratify(m1, m2)
        b_pair = is_b_pair(m1, m2)
        models = {1: m1, 2: m2}
        thetas = {}
        if b_pair:
            thetas = {(i, w): theta(models[i], w, models[3 - i]) for i in (1, 2) for w in models[i].worlds}
        for i in (1, 2):
            mi, mj = models[i], models[3 - i]
            for x in mi.worlds:
                for y in mj.worlds:
                    total += 1
                    a = s.related(i, x, y)
                    try:
                        distinguishing_formula(s, i, x, y)
                        b = False
                    except NotDistinguishable:
                        b = True
                    verdicts = {a, b}
                    if b_pair:
                        b_checked += 1
                        verdicts.add(satisfies(mj, y, thetas[(i, x)]))
                    disagree += len(verdicts) > 1
    ok = disagree == 0
    return ok, f"{total - disagree}/{total} world pairs agree ({b_checked} with theta)"


def criterion_5():
    total = good = 0
    for m1, m2 in corpus_pairs():
        s = stratify(m1, m2)
        models = {1: m1, 2: m2}
        for (i, x, y), rec in s.drops.items():
            total += 1
            f = distinguishing_formula(s, i, x, y)
            good += (satisfies(models[i], x, f) and not satisfies(models[3 - i], y, f)
                     and degree(f) <= rec.stage)
    return good == total, f"{good}/{total} dropped pairs have a sound distinguisher"


def criterion_6():
    start = time.perf_counter()
    worlds = good = b_pairs = 0
    for m1, m2 in corpus_pairs():
        if not is_b_pair(m1, m2):
            continue
        b_pairs += 1
        dag = FormulaDag(m1, m2, node_budget=10**6)
        xi = dag.stabilization_stage()
        models = {1: m1, 2: m2}
        for i in (1, 2):
            for a in models[i].worlds:
                worlds += 1
                exts = [dag.ext(dag.formula(CharKey(i, a, n))) for n in range(xi + 2)]
                self_sat = all(a in e[i - 1] for e in exts)
                # satisfaction at stage beta implies satisfaction at every gamma < beta
                monotone = all(
                    exts[n + 1][t] <= exts[n][t] for n in range(xi + 1) for t in (0, 1)
                )
                good += self_sat and monotone
    elapsed = time.perf_counter() - start
    ok = good == worlds and b_pairs > 0 and elapsed < 300
    return ok, f"{good}/{worlds} worlds over {b_pairs} B pairs, {elapsed:.1f}s (limit 300s)"


def _cli_invocations(tmp: Path) -> list[list[str]]:
    a = str(FIXTURES / "fixtureA.json")
    b = str(FIXTURES / "fixtureB.json")
    gen = str(tmp / "gen.json")
    return [
        ["gen", "--worlds", "3", "--props", "2", "--system", "B", "--seed", "9", "--out", gen],
        ["gen", "--worlds", "3", "--props", "2", "--system", "RM", "--seed", "9"],
        ["check", "--model", a, "--world", "t", "--formula", "And[q, ~q]"],
        ["check", "--model", a, "--world", "t", "--formula", "And[p, ~p]", "--format", "text"],
        ["frame", "--model", a, "--system", "RM"],
        ["frame", "--model", gen, "--system", "RM", "--format", "text"],
        ["bisim", "--left", a, "--right", a, "--pair", "t:s"],
        ["bisim", "--left", a, "--right", gen, "--trace", str(tmp / "trace.json")],
        ["distinguish", "--left", a, "--left-world", "t", "--right", b, "--right-world", "t"],
        ["charform", "--model", a, "--world", "t", "--target", gen, "--emit"],
        ["charform", "--model", gen, "--world", "w0", "--target", a, "--stage", "1"],
        ["translate", "--formula", "((p -> q) -> ~Or[p, bot])"],
        ["check", "--model", a, "--world", "t", "--formula", "(p"],
    ]


def criterion_7(tmp: Path):
    tmp.mkdir(parents=True, exist_ok=True)
    invocations = _cli_invocations(tmp)
    same = 0
    for argv in invocations:
        outputs = []
        for _ in range(2):
            result, fmt = dispatch(argv)
            side = b"".join(p.read_bytes() for p in sorted(tmp.glob("*.json")))
            outputs.append((int(result.status), report(result, fmt), side))
        same += outputs[0] == outputs[1]
    return same == len(invocations), f"{same}/{len(invocations)} invocations byte-identical"


CRITERIA = {
    1: ("fixture regression", criterion_1),
    2: ("translation oracle", criterion_2),
    3: ("stratification laws", criterion_3),
    4: ("three-way agreement", criterion_4),
    5: ("distinguisher soundness", criterion_5),
    6: ("characteristic formula laws", criterion_6),
    7: ("cli determinism", criterion_7),
}


def line(n: int, ok: bool, detail: str) -> str:
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n} {CRITERIA[n][0]}: {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, tmp_path, capsys):
    fn = CRITERIA[n][1]
    ok, detail = fn(tmp_path) if n == 7 else fn()
    with capsys.disabled():
        print("\n" + line(n, ok, detail))
    assert ok, detail


def main() -> int:
    import tempfile

    failures = 0
    for n, (_, fn) in CRITERIA.items():
        with tempfile.TemporaryDirectory() as d, contextlib.redirect_stderr(io.StringIO()):
            ok, detail = fn(Path(d)) if n == 7 else fn()
        print(line(n, ok, detail))
        failures += not ok
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
