#!/usr/bin/env python3
"""Show the adversarial lower bound growing with the cycle size.

Part one runs the adaptive tadpole adversary for each strategy over a range
of cycle parameters; the forced ratio grows like the square root of the
instance size.  Part two replays the two-cycle family where the even-round
strategy's ratio approaches 3 from below.

    python3 scripts/adversary_sweep.py --beta-max 12
"""

import argparse
import sys

from firefight import (
    AlgorithmKind,
    alge_tight_witness_schedule,
    make_alge_tight,
    replay,
    run_algorithm,
    tadpole_adversary_run,
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--beta-min", type=int, default=2)
    ap.add_argument("--beta-max", type=int, default=10)
    ap.add_argument(
        "--tight-betas",
        default="1,2,4,8,16,32",
        help="comma-separated parameters for the two-cycle family",
    )
    args = ap.parse_args(argv)

    print("adaptive tadpole adversary")
    header = f"{'alg':<8} {'beta':>4} {'n':>5} {'case':>4} {'alg':>5} {'opt':>5} {'ratio':>8} {'bound':>8}"
    print(header)
    print("-" * len(header))
    for kind in (AlgorithmKind.ALG_A, AlgorithmKind.ALG_C, AlgorithmKind.ALG_E):
        for beta in range(args.beta_min, args.beta_max + 1):
            rep = tadpole_adversary_run(kind, beta)
            n = beta * beta + beta + 2
            print(
                f"{kind.value:<8} {beta:>4} {n:>5} {rep.case:>4} "
                f"{rep.alg_profit:>5} {rep.opt_profit:>5} "
                f"{float(rep.ratio):>8.3f} {float(rep.bound):>8.3f}"
            )

    print()
    print("two-cycle family (ratio approaches 3)")
    header = f"{'beta':>4} {'n':>5} {'alg':>5} {'witness':>8} {'ratio':>8}"
    print(header)
    print("-" * len(header))
    for raw in args.tight_betas.split(","):
        beta = int(raw)
        inst = make_alge_tight(beta)
        alg = run_algorithm(inst, AlgorithmKind.ALG_E).profit
        witness, _ = replay(inst, alge_tight_witness_schedule(beta))
        print(
            f"{beta:>4} {inst.graph.n:>5} {alg:>5} {witness:>8} {witness / alg:>8.4f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
