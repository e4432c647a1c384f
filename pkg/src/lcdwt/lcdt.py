"""Forward and inverse linear canonical Dunkl transform by direct quadrature.

For ``b != 0``

    D^M f(x) = 1 / (Gamma(mu+1) (2ib)^(mu+1)) * int R^M_mu(x, y) f(y) |y|^(2mu+1) dy

and for ``b = 0`` the transform is the chirp-scaling
``exp(i c x^2 / 2a) f(x/a) / |a|^(mu+1)``.  Each output node is an
independent weighted sum over the input grid, so the cost is O(N_in N_out).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ParameterError
from .quadrature import (SampledSignal, SymmetricGrid, WeightedMeasure, inner_product,
                         interpolate)
from .special import (IDENTITY, SL2Matrix, check_mu, complex_power_principal, gamma,
                      lcd_kernel_outer)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Spectrum(SampledSignal):
    """``D^M_mu f`` sampled on an output grid; remembers ``M`` and the source grid."""

    matrix: SL2Matrix = IDENTITY
    source: SymmetricGrid | None = None

    def with_values(self, values) -> "Spectrum":
        return Spectrum(self.measure, values, self.matrix, self.source)


def invert_matrix(M: SL2Matrix) -> SL2Matrix:
    return M.inverse()


def prefactor(M: SL2Matrix, mu: float) -> complex:
    """``1 / (Gamma(mu+1) (2ib)^(mu+1))`` on the principal branch."""
    return 1.0 / (gamma(mu + 1.0) * complex_power_principal(2j * M.b, mu + 1.0))


def spectral_grid_for(grid: SymmetricGrid, M: SL2Matrix) -> SymmetricGrid:
    """Default spectrum grid: the input grid widened by ``max(1, 1/|b|)``."""
    if M.b == 0 or abs(M.b) >= 1:
        return grid
    return grid.widened(grid.half_width / abs(M.b))


def kernel_matrix(M: SL2Matrix, mu: float, out_nodes, in_measure: WeightedMeasure) -> np.ndarray:
    """Dense matrix mapping input node values to transform values at ``out_nodes``."""
    K = lcd_kernel_outer(mu, M, out_nodes, in_measure.nodes)
    K *= prefactor(M, mu) * in_measure.weighted_weights[None, :]
    return K


@lru_cache(maxsize=24)
def _cached_kernel_matrix(M: SL2Matrix, mu: float, out_grid: SymmetricGrid,
                          in_measure: WeightedMeasure) -> np.ndarray:
    K = kernel_matrix(M, mu, out_grid.nodes, in_measure)
    K.setflags(write=False)
    return K


def cached_kernel_matrix(M, mu, out_grid, in_measure):
    return _cached_kernel_matrix(M, float(mu), out_grid, in_measure)


def _check_mu(mu, f: SampledSignal) -> float:
    mu = check_mu(mu)
    if mu != f.measure.mu:
        raise ParameterError(f"signal measure has mu={f.measure.mu}, transform asked for mu={mu}")
    return mu


def _chirp_scale(M: SL2Matrix, mu: float, f: SampledSignal, x: np.ndarray) -> np.ndarray:
    if M.a == 0:
        raise ParameterError("b = 0 and a = 0 cannot occur for det(M) = 1")
    if M.a == 1 and M.c == 0:
        if np.array_equal(x, f.nodes):
            return np.array(f.values)
    vals = interpolate(f, x / M.a, outside="raise")
    return np.exp(0.5j * (M.c / M.a) * x * x) * vals / abs(M.a) ** (mu + 1.0)


def forward_at(M: SL2Matrix, mu: float, f: SampledSignal, nodes) -> np.ndarray:
    """``D^M_mu f`` evaluated at arbitrary finite nodes."""
    mu = _check_mu(mu, f)
    x = np.asarray(nodes, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ParameterError("output nodes must be finite")
    if M.b == 0:
        return _chirp_scale(M, mu, f, x.ravel()).reshape(x.shape)
    flat = x.ravel()
    out = np.empty(flat.size, dtype=complex)
    # chunked so the dense kernel block stays bounded in memory
    step = max(1, 2_000_000 // max(1, f.nodes.size))
    for s in range(0, flat.size, step):
        out[s:s + step] = kernel_matrix(M, mu, flat[s:s + step], f.measure) @ f.values
    return out.reshape(x.shape)


def forward(M: SL2Matrix, mu: float, f: SampledSignal,
            output: SymmetricGrid | None = None) -> Spectrum:
    """Transform ``f`` onto ``output`` (default: :func:`spectral_grid_for`)."""
    mu = _check_mu(mu, f)
    out_grid = spectral_grid_for(f.measure.grid, M) if output is None else output
    out_measure = WeightedMeasure.build(mu, out_grid)
    if M.b == 0:
        values = _chirp_scale(M, mu, f, out_grid.nodes)
    else:
        values = cached_kernel_matrix(M, mu, out_grid, f.measure) @ f.values
    return Spectrum(out_measure, values, M, f.measure.grid)


def inverse(M: SL2Matrix, mu: float, F: SampledSignal,
            output: SymmetricGrid | None = None) -> SampledSignal:
    """Apply ``D^(M^-1)``; ``F`` must have been produced with ``M``.

    A plain :class:`SampledSignal` is accepted as a spectrum of ``M``.
    """
    if isinstance(F, Spectrum) and F.matrix != M:
        raise ParameterError(f"spectrum was produced with {F.matrix}, not {M}")
    if output is None:
        output = F.source if isinstance(F, Spectrum) and F.source is not None else F.measure.grid
    spec = forward(invert_matrix(M), mu, F, output)
    return SampledSignal(spec.measure, spec.values)


def parseval_cross_check(M: SL2Matrix, mu: float, f: SampledSignal, g: SampledSignal) -> float:
    """Normalized ``|<D^M f, g> - <f, D^(M^-1) g>|``."""
    if M.b == 0:
        raise ParameterError("parseval_cross_check needs b != 0")
    nf, ng = f.norm(2), g.norm(2)
    if nf == 0 or ng == 0:
        return 0.0
    Df = forward(M, mu, f, g.measure.grid)
    Dg = forward(invert_matrix(M), mu, g, f.measure.grid)
    lhs = inner_product(SampledSignal(g.measure, Df.values), g)
    rhs = inner_product(f, SampledSignal(f.measure, Dg.values))
    return abs(lhs - rhs) / (nf * ng)


def sup_bound(M: SL2Matrix, mu: float, f: SampledSignal) -> float:
    """``||f||_{mu,1} / (Gamma(mu+1) (2|b|)^(mu+1))``, the bound on ``||D^M f||_inf``."""
    return f.norm(1) / (gamma(mu + 1.0) * (2.0 * abs(M.b)) ** (mu + 1.0))


def effective_support(f: SampledSignal, rel: float = 1e-12) -> float:
    mag = np.abs(f.values)
    if not mag.any():
        return 0.0
    return float(np.abs(f.nodes[mag > rel * mag.max()]).max())


def resolution_ratio(M: SL2Matrix, f: SampledSignal, output_nodes) -> float:
    """Kernel phase advance per input node spacing, in units of pi/4.

    Values above 1 mean the quadrature under-resolves the oscillating kernel.
    """
    if M.b == 0:
        return 0.0
    grid = f.measure.grid
    spacing = float(np.diff(grid.nodes).max())
    y_eff = effective_support(f)
    x_max = float(np.abs(np.asarray(output_nodes)).max())
    rate = (x_max + abs(M.a) * y_eff) / abs(M.b)
    return rate * spacing / (math.pi / 4)


def warn_if_underresolved(M, f, output_nodes) -> float:
    ratio = resolution_ratio(M, f, output_nodes)
    if ratio > 1:
        log.warning("transform under-resolved: phase step %.2f x pi/4 per node (M=%s)",
                    ratio, M.as_tuple())
    return ratio
