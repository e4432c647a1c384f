"""Young's (1,1,1) bound for the reflected convolution: seed sweep over random
Gaussian-mixture pairs, the pinned counterexample, and the L1 norm growth of the
translation that causes it.

    python3 scripts/young_counterexample.py --seeds 10 --pairs 20
"""
import argparse

import numpy as np

from lcdwt.quadrature import SampledSignal, weighted_measure
from lcdwt.signals import random_mixture
from lcdwt.translation import dunkl_translate, young_check
from lcdwt.verify import POOL_MATRICES, POOL_MUS


def gaussian(y0):
    return lambda y: np.exp(-0.5 * (np.asarray(y) - y0) ** 2)


def sweep(seeds: int, pairs: int):
    measures = {mu: weighted_measure(mu) for mu in POOL_MUS}
    print("seed  fails  worst_ratio  worst_pair")
    for seed in range(seeds):
        rng = np.random.default_rng(seed)
        fails, worst, at = 0, 0.0, -1
        for i in range(pairs):
            mu, M = POOL_MUS[i % 4], POOL_MATRICES[i % 5]
            m = measures[mu]
            f, g = random_mixture(rng).sample(m), random_mixture(rng).sample(m)
            rep = young_check(M, mu, f, g, 1, 1, 1)
            fails += not rep.passed
            if rep.ratio > worst:
                worst, at = rep.ratio, i
        print(f"{seed:4d}  {fails:5d}  {worst:11.4f}  {at}")


def pinned():
    print("\npinned pair f = g = exp(-(y-1)^2/2), M = Dunkl")
    for mu in POOL_MUS:
        m = weighted_measure(mu)
        f = SampledSignal.from_function(m, gaussian(1.0))
        rep = young_check(POOL_MATRICES[0], mu, f, f, 1, 1, 1)
        g = SampledSignal.from_function(m, gaussian(-1.0))
        growth = dunkl_translate(mu, 1.0, g).norm(1) / g.norm(1)
        print(f"mu={mu:+.1f}  young ratio {rep.ratio:.4f} ({'PASS' if rep.passed else 'FAIL'})"
              f"  ||T_1 exp(-(y+1)^2/2)||_1 / ||.||_1 = {growth:.4f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--pairs", type=int, default=20)
    args = ap.parse_args()
    sweep(args.seeds, args.pairs)
    pinned()


if __name__ == "__main__":
    main()
