"""Preset taxonomy: each named (mu, M) pair, and the classical-fourier preset
checked against the closed-form fractional Fourier transform of a Gaussian.

    python3 scripts/taxonomy_demo.py
"""
import cmath
import math

import numpy as np

from lcdwt import lcdt
from lcdwt.config import PresetCatalog
from lcdwt.quadrature import SampledSignal, weighted_measure


def gaussian_lct(M, x, y0, s):
    """Closed-form classical LCT (mu = -1/2) of exp(-(y-y0)^2/2s^2)."""
    a, b, _, d = M.as_tuple()
    A = 1 / (2 * s * s) - 0.5j * a / b
    B = y0 / (s * s) - 1j * x / b
    C = -y0 * y0 / (2 * s * s) + 0.5j * d * x * x / b
    return cmath.sqrt(math.pi / A) * cmath.exp(B * B / (4 * A) + C) / cmath.sqrt(2j * math.pi * b)


def main():
    for line in PresetCatalog.listing():
        print(line)
    m = weighted_measure(-0.5)
    xs = np.array([-1.7, 0.0, 2.3])
    print("\nclassical-fourier vs closed form (max abs error over x in {-1.7, 0, 2.3})")
    for theta in (math.pi / 4, math.pi / 3, 1.2):
        M = PresetCatalog.get("classical-fourier").matrix(theta)
        errs = []
        for y0, s in ((0.0, 1.0), (0.5, 0.8), (-1.0, 1.2)):
            f = SampledSignal.from_function(m, lambda y: np.exp(-0.5 * ((y - y0) / s) ** 2))
            got = lcdt.forward_at(M, -0.5, f, xs)
            ref = np.array([gaussian_lct(M, x, y0, s) for x in xs])
            errs.append(np.abs(got - ref).max())
        print(f"theta={theta:.4f}  " + "  ".join(f"{e:.2e}" for e in errs))


if __name__ == "__main__":
    main()
