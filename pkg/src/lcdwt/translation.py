"""Generalized translation and convolution for the (linear canonical) Dunkl
transform.

The classical translation is computed spectrally,
``T_x f = D^-1[ R_mu(i., x) D f ]`` with ``D`` the Dunkl transform
(``M = (0, 1, -1, 0)``).  The linear canonical translation is its chirp
conjugate

    T^M_x f(y) = exp(i d (x^2 + y^2) / 2b) T_x[exp(-i d z^2 / 2b) f](y)

which satisfies the product formula
``T^M_x R^M(., y)(z) = exp(-i a y^2 / 2b) R^M(x, y) R^M(z, y)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import lcdt
from .errors import ParameterError
from .quadrature import SampledSignal, SymmetricGrid, WeightedMeasure, build_grid, norm_p
from .report import CheckReport, inequality
from .special import (DUNKL, SL2Matrix, check_mu, complex_power_principal, dunkl_kernel_outer,
                      gamma, lcd_kernel_outer)

DUNKL_INVERSE = DUNKL.inverse()


@dataclass(frozen=True)
class TranslationOperator:
    matrix: SL2Matrix
    mu: float
    x: float

    def __post_init__(self):
        if self.matrix.b == 0:
            raise ParameterError("translation operator needs b != 0")
        check_mu(self.mu)


def dunkl_translate_table(mu: float, xs, f: SampledSignal, out_nodes=None,
                          spectral: SymmetricGrid | None = None) -> np.ndarray:
    """Rows ``T_{x_i} f`` sampled at ``out_nodes`` (default: the grid of ``f``)."""
    mu = check_mu(mu)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    spec_grid = f.measure.grid if spectral is None else spectral
    F = lcdt.forward(DUNKL, mu, f, spec_grid)
    B = dunkl_kernel_outer(mu, xs, F.nodes)
    if out_nodes is None:
        Kinv = lcdt.cached_kernel_matrix(DUNKL_INVERSE, mu, f.measure.grid, F.measure)
    else:
        Kinv = lcdt.kernel_matrix(DUNKL_INVERSE, mu, out_nodes, F.measure)
    return (B * F.values[None, :]) @ Kinv.T


def dunkl_translate(mu: float, x: float, f: SampledSignal) -> SampledSignal:
    """Classical Dunkl translation ``T_x f`` on the grid of ``f``."""
    return f.with_values(dunkl_translate_table(mu, [x], f)[0])


def _chirp(M: SL2Matrix, nodes) -> np.ndarray:
    return np.exp(0.5j * (M.d / M.b) * np.asarray(nodes) ** 2)


def chirped_spectral_grid(M: SL2Matrix, f: SampledSignal) -> SymmetricGrid:
    """Spectral grid wide enough for ``exp(-id z^2/2b) f``.

    The chirp shifts local frequencies by up to ``|d/b|`` times the support
    of ``f``, so the signal grid's band ``[-R, R]`` is widened by that much.
    """
    grid = f.measure.grid
    shift = abs(M.d / M.b) * min(lcdt.effective_support(f), grid.half_width)
    if shift <= 0.0:
        return grid
    # round up to whole panels so nearby supports share one cached grid
    width = grid.panel_width
    return grid.widened(grid.half_width + width * math.ceil(shift / width))


def lc_translate_table(M: SL2Matrix, mu: float, xs, f: SampledSignal, out_nodes=None) -> np.ndarray:
    if M.b == 0:
        raise ParameterError("translation needs b != 0")
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = f.nodes if out_nodes is None else np.asarray(out_nodes, dtype=float)
    inner = f.with_values(f.values / _chirp(M, f.nodes))
    T = dunkl_translate_table(mu, xs, inner, out_nodes, chirped_spectral_grid(M, f))
    return _chirp(M, xs)[:, None] * T * _chirp(M, ys)[None, :]


def translate(op: TranslationOperator, f: SampledSignal) -> SampledSignal:
    """Linear canonical Dunkl translation ``T^{mu,M}_x f`` on the grid of ``f``."""
    if op.mu != f.mu:
        raise ParameterError("operator and signal disagree on mu")
    return f.with_values(lc_translate_table(op.matrix, op.mu, [op.x], f)[0])


def dunkl_convolution_constant(mu: float) -> complex:
    """``D(f * g) = dunkl_convolution_constant(mu) * D f * D g``."""
    return gamma(mu + 1.0) * complex_power_principal(2j, mu + 1.0)


def _check_pair(mu, f: SampledSignal, g: SampledSignal):
    f._check_same(g)
    if check_mu(mu) != f.mu:
        raise ParameterError("signal measure and mu disagree")


def convolve_dunkl(mu: float, f: SampledSignal, g: SampledSignal) -> SampledSignal:
    """``(f * g)(x) = int T_x f(-y) g(y) |y|^(2mu+1) dy`` on the common grid."""
    _check_pair(mu, f, g)
    T = dunkl_translate_table(mu, f.nodes, f)
    vals = T[:, ::-1] @ (g.values * f.measure.weighted_weights)
    return f.with_values(vals)


def convolve_lc(M: SL2Matrix, mu: float, f: SampledSignal, g: SampledSignal) -> SampledSignal:
    """``(f star g)(x) = int T^M_x f(-y) exp(-i d y^2 / b) g(y) |y|^(2mu+1) dy``."""
    if M.b == 0:
        raise ParameterError("convolution needs b != 0")
    _check_pair(mu, f, g)
    T = lc_translate_table(M, mu, f.nodes, f)
    h = np.exp(-1j * (M.d / M.b) * f.nodes ** 2) * g.values * f.measure.weighted_weights
    return f.with_values(T[:, ::-1] @ h)


def _recip(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


def check_young_exponents(p: float, q: float, r: float):
    for e in (p, q, r):
        if not e >= 1:
            raise ParameterError(f"Young exponents must lie in [1, inf], got {(p, q, r)}")
    if abs(_recip(p) + _recip(q) - 1.0 - _recip(r)) > 1e-12:
        raise ParameterError(f"exponents violate 1/p + 1/q - 1 = 1/r: {(p, q, r)}")


def young_check(M: SL2Matrix, mu: float, f: SampledSignal, g: SampledSignal,
                p: float, q: float, r: float, slack: float = 1e-3) -> CheckReport:
    """``||f star g||_r <= ||f||_p ||g||_q``."""
    check_young_exponents(p, q, r)
    lhs = norm_p(convolve_lc(M, mu, f, g), r)
    rhs = norm_p(f, p) * norm_p(g, q)
    return inequality("young", lhs, rhs, slack, p=float(p), q=float(q), r=float(r))


def damped_kernel_packet(mu: float, center: float, width: float):
    """Nodes and weights ``(eta_k, c_k)`` for ``h = sum_k c_k R^M(., eta_k)``
    approximating ``int R^M(., eta) G(eta) |eta|^(2mu+1) d eta`` with a
    Gaussian ``G``; the weighting makes ``h`` decay like a Gaussian in space."""
    reach = abs(center) + 9.0 * width
    eta_measure = WeightedMeasure.build(mu, build_grid(reach, 2 * max(8, int(math.ceil(reach))), 16))
    eta = eta_measure.nodes
    return eta, np.exp(-0.5 * ((eta - center) / width) ** 2) * eta_measure.weighted_weights


def product_formula_residual(M: SL2Matrix, mu: float, f_measure: WeightedMeasure, xs, zs,
                             center: float = 0.7, width: float = 0.7) -> float:
    """Max over ``(x, z)`` of ``|T^M_x h(z) - sum_k c_k exp(-ia eta_k^2/2b)
    R^M(x, eta_k) R^M(z, eta_k)|`` relative to ``max |h|``.

    The packet is linear in the kernels, so each side is the product formula
    summed over ``eta_k``.
    """
    if M.b == 0:
        raise ParameterError("product formula needs b != 0")
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    zs = np.atleast_1d(np.asarray(zs, dtype=float))
    eta, c = damped_kernel_packet(check_mu(mu), center, width)
    h = SampledSignal(f_measure, lcd_kernel_outer(mu, M, f_measure.nodes, eta) @ c)
    lhs = lc_translate_table(M, mu, xs, h, out_nodes=zs)
    w = c * np.exp(-0.5j * (M.a / M.b) * eta ** 2)
    rhs = (lcd_kernel_outer(mu, M, xs, eta) * w[None, :]) @ lcd_kernel_outer(mu, M, zs, eta).T
    return float(np.abs(lhs - rhs).max() / np.abs(h.values).max())
