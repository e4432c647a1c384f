"""Random test signals: Gaussian mixtures and their zero-mean projections."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import SampledSignal, WeightedMeasure
from .special import SL2Matrix


@dataclass(frozen=True)
class MixtureSpec:
    """``sum_k c_k exp(-(y - y_k)^2 / (2 s_k^2))``."""

    amplitudes: tuple
    centers: tuple
    widths: tuple

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        out = np.zeros(y.shape, dtype=complex)
        for c, y0, s in zip(self.amplitudes, self.centers, self.widths):
            out += c * np.exp(-0.5 * ((y - y0) / s) ** 2)
        return out

    def sample(self, measure: WeightedMeasure) -> SampledSignal:
        return SampledSignal.from_function(measure, self)


def random_mixture(rng: np.random.Generator, terms: tuple = (1, 3), center: float = 1.5,
                   widths: tuple = (0.7, 1.2), complex_amplitudes: bool = True) -> MixtureSpec:
    k = int(rng.integers(terms[0], terms[1] + 1))
    amp = rng.normal(size=k) + (1j * rng.normal(size=k) if complex_amplitudes else 0.0)
    return MixtureSpec(tuple(complex(a) for a in amp),
                       tuple(float(c) for c in rng.uniform(-center, center, size=k)),
                       tuple(float(s) for s in rng.uniform(*widths, size=k)))


def zero_mean(f: SampledSignal, M: SL2Matrix | None = None, order: int = 1) -> SampledSignal:
    """Project out ``exp(-y^2/2)`` (and ``y exp(-y^2/2)`` for ``order=2``) so
    that the moments ``int y^k f |y|^(2mu+1) dy``, ``k < order``, vanish.

    The Dunkl spectrum then has a zero of that order at the origin, the class
    of signals whose wavelet scale integrals converge at large scales. With
    ``M`` the moments are taken of ``exp(ia y^2/2b) f``, the signal whose
    Dunkl spectrum controls ``D^M f``.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    y = f.nodes
    chirp = np.ones_like(y) if M is None or M.b == 0 else np.exp(0.5j * (M.a / M.b) * y * y)
    ww = f.measure.weighted_weights * chirp
    basis = [np.exp(-0.5 * y * y), y * np.exp(-0.5 * y * y)][:order]
    tests = [np.ones_like(y), y][:order]
    A = np.array([[np.sum(t * b * f.measure.weighted_weights) for b in basis] for t in tests])
    rhs = np.array([np.sum(t * f.values * ww) for t in tests])
    coef = np.linalg.solve(A, rhs)
    return f.with_values(f.values - sum(c * b for c, b in zip(coef, basis)) / chirp)


def random_signal(measure: WeightedMeasure, rng: np.random.Generator, centered: bool = False,
                  matrix: SL2Matrix | None = None, order: int = 1, **kwargs) -> SampledSignal:
    f = random_mixture(rng, **kwargs).sample(measure)
    return zero_mean(f, matrix, order) if centered else f
