"""Compare bisimilarity, indistinguishability and the theta test over a random corpus.

    python scripts/agreement_triangle.py --pairs 500 --max-worlds 3 --seed 7
"""
import argparse
import collections
import json

from rmlogic.bisim import distinguishing_formula, stratify
from rmlogic.charform import theta
from rmlogic.corpus import PairCorpusConfig, model_pairs
from rmlogic.errors import NotDistinguishable
from rmlogic.frames import check_frame
from rmlogic.model import satisfies


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--max-worlds", type=int, default=3)
    ap.add_argument("--max-props", type=int, default=2)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    cfg = PairCorpusConfig(pairs=args.pairs, max_worlds=args.max_worlds,
                           max_props=args.max_props, seed=args.seed)

    counts = collections.Counter()
    alphas = collections.Counter()
    for m1, m2 in model_pairs(cfg):
        s = stratify(m1, m2)
        alphas[s.alpha] += 1
        b_pair = check_frame(m1, "B").passed and check_frame(m2, "B").passed
        models = {1: m1, 2: m2}
        for i in (1, 2):
            mi, mj = models[i], models[3 - i]
            for x in mi.worlds:
                th = theta(mi, x, mj) if b_pair else None
                for y in mj.worlds:
                    related = s.related(i, x, y)
                    try:
                        distinguishing_formula(s, i, x, y)
                        indist = False
                    except NotDistinguishable:
                        indist = True
                    counts["world_pairs"] += 1
                    counts["related"] += related
                    counts["bisim_vs_distinguish_disagree"] += related != indist
                    if th is not None:
                        counts["theta_checked"] += 1
                        counts["theta_disagree"] += satisfies(mj, y, th) != related
    print(json.dumps({"counts": dict(counts), "alpha_histogram": dict(sorted(alphas.items()))},
                     indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
