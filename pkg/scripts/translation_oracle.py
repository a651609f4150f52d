"""Cross-check the model checker against the first-order translation on random triples.

    python scripts/translation_oracle.py --triples 5000 --max-worlds 4 --depth 4
"""
import argparse
import random
import time

from rmlogic.correspond import fo_eval, translate
from rmlogic.corpus import FormulaConfig, random_formula
from rmlogic.formula import to_text
from rmlogic.frames import generate_model
from rmlogic.model import satisfies


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--triples", type=int, default=1000)
    ap.add_argument("--max-worlds", type=int, default=4)
    ap.add_argument("--max-props", type=int, default=3)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cfg = FormulaConfig(max_depth=args.depth)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(args.triples):
        m = generate_model(rng.randint(1, args.max_worlds), rng.randint(1, args.max_props),
                           rng.choice(("Raw", "B", "R", "RM")), rng.getrandbits(32))
        w = rng.choice(m.worlds)
        f = random_formula(rng, m.props, cfg)
        if satisfies(m, w, f) != fo_eval(m, translate(f), {"x": w}):
            mismatches += 1
            print("mismatch:", w, to_text(f))
    elapsed = time.perf_counter() - start
    print(f"{args.triples - mismatches}/{args.triples} agree in {elapsed:.1f}s")


if __name__ == "__main__":
    main()
