"""Numerical checks of the coefficient bounds, concentration and Lieb-type
inequalities for the wavelet transform.

All region measures and field norms use the same product measure as the
field energy, ``|x|^(2mu+1) dx`` times ``dt / t^(2mu+3)``, and the constant
``K = (2^(mu+1) Gamma(mu+1))^2 C_psi^M`` that makes that energy exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .quadrature import SampledSignal, norm_p
from .report import CheckReport, inequality
from .signals import MixtureSpec, random_mixture
from .special import SL2Matrix
from .wavelet import (CoefficientField, MotherWavelet, _wavelet, analyze_spectral,
                      coefficients_at)

DEFAULT_SLACK = 1e-3


@dataclass(frozen=True, eq=False)
class ConcentrationRegion:
    """A union of (scale, position) grid cells."""

    mask: np.ndarray = field(repr=False)
    cell_measure: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.mask.shape != self.cell_measure.shape:
            raise ParameterError("region mask and cell measure differ in shape")
        if np.any(self.cell_measure < 0):
            raise ParameterError("cell measure must be non-negative")

    @property
    def measure(self) -> float:
        return float(np.sum(self.cell_measure[self.mask]))

    @property
    def cells(self) -> int:
        return int(np.count_nonzero(self.mask))

    def captured(self, fld: CoefficientField) -> float:
        return float(np.sum((np.abs(fld.values) ** 2 * fld.cell_measure)[self.mask]))

    @classmethod
    def full(cls, fld: CoefficientField) -> "ConcentrationRegion":
        return cls(np.ones(fld.values.shape, dtype=bool), fld.cell_measure)

    @classmethod
    def empty(cls, fld: CoefficientField) -> "ConcentrationRegion":
        return cls(np.zeros(fld.values.shape, dtype=bool), fld.cell_measure)

    @classmethod
    def top_cells(cls, fld: CoefficientField, share: float) -> "ConcentrationRegion":
        """The ``share`` fraction of cells with the largest ``|Phi|``."""
        if not 0 <= share <= 1:
            raise ParameterError("share must lie in [0, 1]")
        flat = np.abs(fld.values).ravel()
        k = int(round(share * flat.size))
        mask = np.zeros(flat.size, dtype=bool)
        mask[np.argsort(-flat, kind="stable")[:k]] = True
        return cls(mask.reshape(fld.values.shape), fld.cell_measure)

    @classmethod
    def energy_fraction(cls, fld: CoefficientField, fraction: float) -> "ConcentrationRegion":
        """Fewest cells, by decreasing ``|Phi|``, holding ``fraction`` of the energy."""
        if not 0 <= fraction <= 1:
            raise ParameterError("fraction must lie in [0, 1]")
        e = (np.abs(fld.values) ** 2 * fld.cell_measure).ravel()
        order = np.argsort(-np.abs(fld.values).ravel(), kind="stable")
        cum = np.cumsum(e[order])
        k = int(np.searchsorted(cum, fraction * cum[-1] * (1 - 1e-15))) + 1 if cum[-1] > 0 else 0
        mask = np.zeros(e.size, dtype=bool)
        mask[order[:min(k, e.size)]] = True
        return cls(mask.reshape(fld.values.shape), fld.cell_measure)


def _psi(psi) -> MotherWavelet:
    return _wavelet(psi)


def coeff_lp_bound_check(M: SL2Matrix, mu: float, f: SampledSignal, psi, t: float, p: float,
                         slack: float = DEFAULT_SLACK) -> CheckReport:
    """``||Phi(t,.)||_p <= t^((mu+1)(2/p-1)) ||psi||_p ||f||_1``."""
    if not (1 <= p < math.inf):
        raise ParameterError(f"p must lie in [1, inf), got {p}")
    psi = _psi(psi)
    lhs = norm_p(coefficients_at(M, mu, f, psi, t), p)
    rhs = t ** ((mu + 1.0) * (2.0 / p - 1.0)) * psi.norm(p) * norm_p(f, 1.0)
    return inequality("coeff_lp_bound", lhs, rhs, slack, mu=mu, t=float(t), p=float(p))


def coeff_sup_bound_check(M: SL2Matrix, mu: float, f: SampledSignal, psi, t: float, p: float,
                          q: float, slack: float = DEFAULT_SLACK) -> CheckReport:
    """``sup|Phi(t,.)| <= t^((mu+1)(2/q-1)) ||psi||_q ||f||_p`` for conjugate ``p, q``."""
    for e in (p, q):
        if not (1 <= e < math.inf):
            raise ParameterError(f"exponents must lie in [1, inf), got {(p, q)}")
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
        raise ParameterError(f"exponents are not conjugate: {(p, q)}")
    psi = _psi(psi)
    lhs = norm_p(coefficients_at(M, mu, f, psi, t), math.inf)
    rhs = t ** ((mu + 1.0) * (2.0 / q - 1.0)) * psi.norm(q) * norm_p(f, p)
    return inequality("coeff_sup_bound", lhs, rhs, slack, mu=mu, t=float(t), p=float(p),
                      q=float(q))


def _require_normalized(*signals, tol: float = 1e-9):
    for s in signals:
        n = s.norm(2)
        if abs(n - 1.0) > tol:
            raise ParameterError(f"concentration checks need unit-norm inputs, got norm {n}")


def concentration_check_1(M: SL2Matrix, mu: float, f: SampledSignal, psi,
                          region: ConcentrationRegion, fld: CoefficientField | None = None,
                          slack: float = DEFAULT_SLACK):
    """Captured energy ``1 - eps`` over ``region`` against ``|region| >= 1 - eps``.

    Returns ``(captured, report)``.
    """
    psi = _psi(psi)
    _require_normalized(f, psi.signal)
    fld = field_for(M, mu, f, psi) if fld is None else fld
    captured = region.captured(fld)
    rep = inequality("concentration_1", captured, region.measure, slack, mu=mu,
                     cells=region.cells)
    return captured, rep


def concentration_check_2(M: SL2Matrix, mu: float, f: SampledSignal, psi,
                          region: ConcentrationRegion, p: float,
                          fld: CoefficientField | None = None,
                          slack: float = DEFAULT_SLACK) -> CheckReport:
    """``|region| >= (1-eps)^(p/(p-2)) K^(2/(2-p))``, checked in the form
    ``(1-eps)^(p/(p-2)) K^(2/(2-p)) <= |region|``."""
    if not (2 < p < math.inf):
        raise ParameterError(f"p must lie in (2, inf), got {p}")
    psi = _psi(psi)
    _require_normalized(f, psi.signal)
    K = psi.plancherel_constant(M)
    fld = field_for(M, mu, f, psi) if fld is None else fld
    captured = region.captured(fld)
    lhs = captured ** (p / (p - 2.0)) * K ** (2.0 / (2.0 - p))
    return inequality("concentration_2", lhs, region.measure, slack, mu=mu, p=float(p),
                      cells=region.cells)


def lieb_check(M: SL2Matrix, mu: float, f: SampledSignal, g: SampledSignal, psi, phi,
               p: float, fld_f: CoefficientField | None = None,
               fld_g: CoefficientField | None = None,
               slack: float = DEFAULT_SLACK) -> CheckReport:
    """``||Phi_psi f Phi_phi g||_p <= (K_psi K_phi)^(1/2p) (||psi|| ||phi||)^((p-1)/p) ||f|| ||g||``."""
    if not (1 <= p < math.inf):
        raise ParameterError(f"p must lie in [1, inf), got {p}")
    psi, phi = _psi(psi), _psi(phi)
    fld_f = field_for(M, mu, f, psi) if fld_f is None else fld_f
    fld_g = field_for(M, mu, g, phi) if fld_g is None else fld_g
    prod = fld_f.with_values(fld_f.values * fld_g.values)
    lhs = prod.lp_norm(p)
    rhs = ((psi.plancherel_constant(M) * phi.plancherel_constant(M)) ** (0.5 / p)
           * (psi.norm(2) * phi.norm(2)) ** ((p - 1.0) / p) * f.norm(2) * g.norm(2))
    return inequality("lieb", lhs, rhs, slack, mu=mu, p=float(p))


def lp_field_bound_check(M: SL2Matrix, mu: float, f: SampledSignal, psi, p: float,
                         fld: CoefficientField | None = None,
                         slack: float = DEFAULT_SLACK) -> CheckReport:
    """``||Phi f||_p <= K^(1/p) ||psi||^((p-2)/p) ||f||`` for ``p >= 2``."""
    if not (2 <= p < math.inf):
        raise ParameterError(f"p must lie in [2, inf), got {p}")
    psi = _psi(psi)
    fld = field_for(M, mu, f, psi) if fld is None else fld
    lhs = fld.lp_norm(p)
    rhs = psi.plancherel_constant(M) ** (1.0 / p) * psi.norm(2) ** ((p - 2.0) / p) * f.norm(2)
    return inequality("lp_field_bound", lhs, rhs, slack, mu=mu, p=float(p))


def field_for(M, mu, f, psi, scales=None) -> CoefficientField:
    return analyze_spectral(M, mu, f, _psi(psi), scales)


# -- randomized draws ------------------------------------------------------------------

@dataclass(frozen=True)
class UncertaintyDraw:
    """Grid-independent description of one randomized check bundle."""

    mu: float
    matrix: SL2Matrix
    f: MixtureSpec
    g: MixtureSpec
    psi: str
    phi: str
    t: float
    p_lp: float
    p_sup: float
    p_lieb: float
    p_field: float
    p_conc: float
    top_share: float = 0.05
    energy_share: float = 0.9


WAVELET_NAMES = ("dunkl-hermite", "mexican-hat")


def random_draw(rng: np.random.Generator, mu: float, M: SL2Matrix) -> UncertaintyDraw:
    psi = WAVELET_NAMES[int(rng.integers(2))]
    phi = WAVELET_NAMES[int(rng.integers(2))]
    return UncertaintyDraw(
        mu=mu, matrix=M, f=random_mixture(rng), g=random_mixture(rng), psi=psi, phi=phi,
        t=float(rng.choice([0.5, 1.0, 2.0])),
        p_lp=float(rng.choice([1.0, 1.5, 2.0, 4.0])),
        p_sup=float(rng.choice([1.5, 2.0, 4.0])),
        p_lieb=float(rng.choice([1.0, 2.0, 3.0])),
        p_field=float(rng.choice([2.0, 3.0, 4.0])),
        p_conc=float(rng.choice([3.0, 4.0, 10.0])),
    )


def run_draw(draw: UncertaintyDraw, measure, scales, slack: float = DEFAULT_SLACK) -> list:
    """All inequality checks for one draw on the given grids."""
    from .wavelet import preset_wavelet
    mu, M = draw.mu, draw.matrix
    f = draw.f.sample(measure).normalized()
    g = draw.g.sample(measure).normalized()
    psi = preset_wavelet(draw.psi, measure, normalize=True)
    phi = preset_wavelet(draw.phi, measure, normalize=True)
    ff = analyze_spectral(M, mu, f, psi, scales)
    fg = ff if (draw.phi == draw.psi and draw.g == draw.f) else analyze_spectral(M, mu, g, phi, scales)
    q_sup = draw.p_sup / (draw.p_sup - 1.0)
    reports = [
        coeff_lp_bound_check(M, mu, f, psi, draw.t, draw.p_lp, slack),
        coeff_sup_bound_check(M, mu, f, psi, draw.t, draw.p_sup, q_sup, slack),
        concentration_check_1(M, mu, f, psi, ConcentrationRegion.top_cells(ff, draw.top_share),
                              ff, slack)[1],
        concentration_check_2(M, mu, f, psi,
                              ConcentrationRegion.energy_fraction(ff, draw.energy_share),
                              draw.p_conc, ff, slack),
        lieb_check(M, mu, f, g, psi, phi, draw.p_lieb, ff, fg, slack),
        lp_field_bound_check(M, mu, f, psi, draw.p_field, ff, slack),
    ]
    return reports
