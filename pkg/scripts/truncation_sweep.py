"""Plancherel residual of the wavelet transform against the scale range.

The scale integral is truncated to [t_min, t_max]; the residual measures the
energy lost outside it.  Centred signals lose little at large scales, plain
Gaussians keep a spectral mass near the origin that only t_max controls.

    python3 scripts/truncation_sweep.py --mu 0.5
"""
import argparse

import numpy as np

from lcdwt import wavelet as wv
from lcdwt.quadrature import SampledSignal, build_log_grid, weighted_measure
from lcdwt.signals import random_signal
from lcdwt.verify import POOL_MATRICES

RANGES = ((1 / 4, 4, 36), (1 / 8, 8, 49), (1 / 16, 16, 64), (1 / 32, 32, 79))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mu", type=float, default=0.0)
    ap.add_argument("--matrix", type=int, default=1, help="index into the preset pool")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    M, mu = POOL_MATRICES[args.matrix], args.mu
    m = weighted_measure(mu)
    rng = np.random.default_rng(args.seed)
    signals = {
        "centred mixture": random_signal(m, rng, centered=True, matrix=M, order=2),
        "plain gaussian": SampledSignal.from_function(m, lambda y: np.exp(-0.5 * (y - 0.5) ** 2)),
    }
    print(f"M = {M.as_tuple()}, mu = {mu:g}")
    print("wavelet         signal            " + "  ".join(f"[1/{int(1 / lo)},{hi}]"
                                                          for lo, hi, _ in RANGES))
    for name in ("mexican-hat", "dunkl-hermite"):
        psi = wv.preset_wavelet(name, m)
        for label, f in signals.items():
            res = [wv.plancherel_residual(M, mu, f, psi, build_log_grid(lo, hi, n))
                   for lo, hi, n in RANGES]
            print(f"{name:15s} {label:17s} " + "  ".join(f"{r:9.2e}" for r in res))


if __name__ == "__main__":
    main()
