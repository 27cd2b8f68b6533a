#!/usr/bin/env python3
"""Sweep competitive ratios of the online strategies against the exact optimum.

Draws random instances for every compatible (graph class, strategy) cell and
reports mean and worst-case observed ratios.  Typical use:

    python3 scripts/ratio_sweep.py --trials 150 --n-max 13 --seed 7
    python3 scripts/ratio_sweep.py --even --trials 300
"""

import argparse
import random
import sys
from fractions import Fraction

from firefight import (
    AlgorithmKind,
    Instance,
    random_cactus,
    random_one_almost_tree,
    random_sequence,
    random_tree,
    run_algorithm,
    solve_opt,
)

CELLS = {
    "tree": [
        AlgorithmKind.GREEDY_TREE,
        AlgorithmKind.ALG_A,
        AlgorithmKind.ALG_C,
        AlgorithmKind.ALG_E,
    ],
    "one-almost-tree": [AlgorithmKind.ALG_A, AlgorithmKind.ALG_C, AlgorithmKind.ALG_E],
    "cactus": [AlgorithmKind.ALG_C, AlgorithmKind.ALG_E],
}


def draw_instance(cls: str, rng: random.Random, n_max: int, even: bool) -> Instance:
    n = rng.randint(4, n_max)
    if cls == "tree":
        g = random_tree(n, rng.randrange(2**30))
    elif cls == "one-almost-tree":
        g = random_one_almost_tree(n, rng.randrange(2**30))
    else:
        g = random_cactus(n, rng.uniform(0.4, 1.0), rng.randint(3, 6), rng.randrange(2**30))
    seq = random_sequence(rng.randint(1, 4), rng.randint(1, 6), even, rng.randrange(2**30))
    return Instance(g, seq)


def sweep(trials: int, n_max: int, seed: int, even: bool):
    rows = []
    for cls, kinds in CELLS.items():
        for kind in kinds:
            worst = Fraction(0)
            total = Fraction(0)
            ties = 0
            for i in range(trials):
                rng = random.Random(seed * 1_000_003 + i * 7919 + hash(cls + kind.value) % 997)
                inst = draw_instance(cls, rng, n_max, even)
                alg = run_algorithm(inst, kind).profit
                opt = solve_opt(inst).value
                ratio = Fraction(opt, alg) if alg else Fraction(1)
                worst = max(worst, ratio)
                total += ratio
                ties += ratio == 1
            rows.append(
                {
                    "class": cls,
                    "alg": kind.value,
                    "trials": trials,
                    "mean": float(total / trials),
                    "worst": float(worst),
                    "optimal_share": ties / trials,
                }
            )
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--n-max", type=int, default=13)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--even", action="store_true", help="even-only firefighter sequences")
    args = ap.parse_args(argv)

    rows = sweep(args.trials, args.n_max, args.seed, args.even)
    header = f"{'class':<17} {'alg':<12} {'trials':>6} {'mean':>7} {'worst':>7} {'opt%':>6}"
    print(header)
    print("-" * len(header))
    for r in rows:
        print(
            f"{r['class']:<17} {r['alg']:<12} {r['trials']:>6} "
            f"{r['mean']:>7.3f} {r['worst']:>7.3f} {100 * r['optimal_share']:>5.1f}%"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
