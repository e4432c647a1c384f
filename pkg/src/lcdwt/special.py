"""Scalar kernels: gamma, normalized Bessel j_mu, the rank-one Dunkl kernel and
its chirp-modulated linear canonical version.

All functions accept numpy arrays and broadcast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import jv

from .errors import DomainError, ParameterError

MU_MIN = -0.5
DET_TOL = 1e-12
#: |x| at or below which j_mu is summed as a power series.
SERIES_CROSSOVER = 8.0
_SERIES_TERMS = 60


def check_mu(mu: float) -> float:
    mu = float(mu)
    if not math.isfinite(mu) or mu < MU_MIN:
        raise ParameterError(f"Dunkl order must be finite and >= -1/2, got {mu}")
    return mu


@dataclass(frozen=True)
class SL2Matrix:
    """Real 2x2 matrix ``[[a, b], [c, d]]`` with unit determinant."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        vals = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(v) for v in vals):
            raise ParameterError(f"matrix entries must be finite, got {vals}")
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > DET_TOL:
            raise ParameterError(f"det(M) must be 1, got {det!r} for {vals}")

    @classmethod
    def from_string(cls, text: str) -> "SL2Matrix":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 4:
            raise ParameterError(f"matrix needs four comma-separated entries: {text!r}")
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise ParameterError(f"bad matrix entry in {text!r}") from exc
        return cls(*vals)

    @classmethod
    def rotation(cls, theta: float) -> "SL2Matrix":
        c, s = math.cos(theta), math.sin(theta)
        return cls(c, s, -s, c)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "SL2Matrix") -> np.ndarray:
        return self.as_array() @ other.as_array()


IDENTITY = SL2Matrix(1.0, 0.0, 0.0, 1.0)
DUNKL = SL2Matrix(0.0, 1.0, -1.0, 0.0)


def gamma(x: float) -> float:
    """Gamma function for positive finite arguments."""
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"gamma is only evaluated for finite x > 0, got {x}")
    if x > 170.0:
        # overflow guard; callers needing this range should work in log space
        return math.exp(math.lgamma(x))
    return math.gamma(x)


def _bessel_series(mu, x):
    q = -0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for n in range(1, _SERIES_TERMS):
        term = term * q / (n * (n + mu))
        total = total + term
    return total


def bessel_j_normalized(mu: float, x):
    """Normalized Bessel function ``j_mu(x) = Gamma(mu+1) (2/x)^mu J_mu(x)``.

    Power series for ``|x| <= SERIES_CROSSOVER``, scipy's ``jv`` beyond.
    Even in ``x`` with ``j_mu(0) = 1``.
    """
    mu = check_mu(mu)
    arr = np.abs(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(arr)):
        raise DomainError("bessel_j_normalized needs finite arguments")
    out = np.empty_like(arr)
    small = arr <= SERIES_CROSSOVER
    out[small] = _bessel_series(mu, arr[small])
    big = ~small
    if np.any(big):
        xb = arr[big]
        out[big] = (2.0 ** mu * gamma(mu + 1.0)) * jv(mu, xb) / xb ** mu
    return out if out.ndim else float(out)


def dunkl_kernel(mu: float, x, y):
    """Dunkl kernel ``R_mu(ix, y) = j_mu(xy) + i xy/(2(mu+1)) j_{mu+1}(xy)``."""
    mu = check_mu(mu)
    z = np.multiply(x, y, dtype=float)
    out = bessel_j_normalized(mu, z) + 1j * z / (2.0 * (mu + 1.0)) * bessel_j_normalized(mu + 1.0, z)
    return out if np.ndim(out) else complex(out)


def lcd_kernel(mu: float, M: SL2Matrix, x, y):
    """Linear canonical Dunkl kernel ``exp(i/2 (d/b x^2 + a/b y^2)) R_mu(-ix/b, y)``."""
    if M.b == 0:
        raise ParameterError("lcd_kernel is undefined for b = 0; use the chirp-scaling branch")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    chirp = np.exp(0.5j * (M.d / M.b * x * x + M.a / M.b * y * y))
    out = chirp * dunkl_kernel(mu, -x / M.b, y)
    return out if np.ndim(out) else complex(out)


def complex_power_principal(base, exponent: float):
    """``base ** exponent`` on the principal branch, argument in (-pi, pi]."""
    base = np.asarray(base, dtype=complex)
    if np.any(base == 0):
        raise DomainError("complex_power_principal: zero base")
    # -0.0 imaginary parts would select the -pi side of the cut
    base = np.where(base.imag == 0, base.real + 0j, base)
    out = np.exp(exponent * np.log(base))
    return out if out.ndim else complex(out)


def _half_map(v: np.ndarray):
    """Non-negative half of a mirror-symmetric vector and the index map back."""
    n = v.size
    if n and np.array_equal(v, -v[::-1]):
        idx = np.arange(n)
        return np.abs(v[n // 2:]), np.where(idx < n // 2, n - 1 - idx, idx) - n // 2
    return np.abs(v), np.arange(n)


def dunkl_kernel_outer(mu: float, x, y) -> np.ndarray:
    """Matrix ``R_mu(i x_k, y_l)`` for 1-D ``x`` and ``y``.

    Exploits evenness of ``j_mu`` so mirror-symmetric node sets only pay for
    one quadrant of Bessel evaluations.
    """
    mu = check_mu(mu)
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    hx, mx = _half_map(x)
    hy, my = _half_map(y)
    az = hx[:, None] * hy[None, :]
    j0 = bessel_j_normalized(mu, az)[mx][:, my]
    j1 = bessel_j_normalized(mu + 1.0, az)[mx][:, my]
    z = x[:, None] * y[None, :]
    return j0 + 1j * z / (2.0 * (mu + 1.0)) * j1


def lcd_kernel_outer(mu: float, M: SL2Matrix, x, y) -> np.ndarray:
    """Matrix form of :func:`lcd_kernel` for 1-D ``x`` and ``y``."""
    if M.b == 0:
        raise ParameterError("lcd_kernel is undefined for b = 0; use the chirp-scaling branch")
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    chirp = np.exp(0.5j * (M.d / M.b) * x * x)[:, None] * np.exp(0.5j * (M.a / M.b) * y * y)[None, :]
    return chirp * dunkl_kernel_outer(mu, -x / M.b, y)
