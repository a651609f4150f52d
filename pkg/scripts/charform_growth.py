"""Report stabilization stages and DAG sizes of characteristic formulas on random B-model pairs.

    python scripts/charform_growth.py --pairs 50 --max-worlds 3
"""
import argparse
import random

from rmlogic.charform import FormulaDag
from rmlogic.frames import generate_model


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=30)
    ap.add_argument("--max-worlds", type=int, default=3)
    ap.add_argument("--props", type=int, default=2)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print("w1 w2 xi dag_nodes")
    for _ in range(args.pairs):
        m1 = generate_model(rng.randint(1, args.max_worlds), args.props, "B", rng.getrandbits(32))
        m2 = generate_model(rng.randint(1, args.max_worlds), args.props, "B", rng.getrandbits(32))
        dag = FormulaDag(m1, m2)
        xi = dag.stabilization_stage()
        print(len(m1.worlds), len(m2.worlds), xi, dag.nodes)


if __name__ == "__main__":
    main()
