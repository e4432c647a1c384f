"""Continuous linear canonical Dunkl wavelet transform.

Family members are ``psi^M_{t,x}(y) = exp(-ia(y^2 - x^2)/2b) T_x(delta_t psi)(y)``
with the L^2-normalized dilation ``delta_t psi(y) = t^-(mu+1) psi(y/t)``, and the
coefficients are ``Phi(t, x) = <f, psi^M_{t,x}>_mu``.

Because the dilation is L^2-normalized, the isometric scale measure is
``dt / t^(2mu+3)`` and the Plancherel constant is
``(2^(mu+1) Gamma(mu+1))^2 * C_psi^M``; every identity here uses that pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import lcdt
from .errors import AdmissibilityError, ParameterError
from .quadrature import (LogScaleGrid, SampledSignal, SymmetricGrid, WeightedMeasure,
                         build_log_grid, inner_product, interpolate)
from .special import DUNKL, SL2Matrix, check_mu, complex_power_principal, dunkl_kernel_outer, gamma
from .translation import dunkl_translate_table

DEFAULT_SCALES = (1.0 / 16.0, 16.0, 64)
#: log-grid for the admissibility integral, in units of |b|
ADMISSIBILITY_RANGE = (1e-6, 10.0, 801)
DIVERGENCE_TOL = 0.01


def default_scale_grid() -> LogScaleGrid:
    return build_log_grid(*DEFAULT_SCALES)


# -- mother wavelets -----------------------------------------------------------

def _dunkl_hermite(mu):
    return lambda y: y * np.exp(-0.5 * y * y)


def _mexican_hat(mu):
    return lambda y: (1.0 - y * y / (2.0 * mu + 2.0)) * np.exp(-0.5 * y * y)


def _gaussian(mu):
    return lambda y: np.exp(-0.5 * y * y)


PRESETS = {
    "dunkl-hermite": _dunkl_hermite,
    "mexican-hat": _mexican_hat,
    # not admissible; kept for the divergence test
    "gaussian": _gaussian,
}


@dataclass(eq=False)
class MotherWavelet:
    signal: SampledSignal
    name: str = "custom"
    _constants: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = self.signal.norm(2)
        if not (math.isfinite(n) and n > 0):
            raise ParameterError("mother wavelet must have finite positive L^2 norm")

    @property
    def mu(self) -> float:
        return self.signal.mu

    @property
    def measure(self) -> WeightedMeasure:
        return self.signal.measure

    def norm(self, p: float = 2.0) -> float:
        return self.signal.norm(p)

    def admissibility(self, M: SL2Matrix) -> float:
        """Cached :func:`admissibility_constant`; raises if not admissible."""
        if M not in self._constants:
            self._constants[M] = admissibility_constant(M, self.mu, self)
        return self._constants[M]

    def plancherel_constant(self, M: SL2Matrix) -> float:
        return plancherel_factor(self.mu) * self.admissibility(M)

    def is_admissible(self, M: SL2Matrix) -> bool:
        try:
            self.admissibility(M)
        except AdmissibilityError:
            return False
        return True

    def normalized(self) -> "MotherWavelet":
        return MotherWavelet(self.signal.normalized(), self.name)


def preset_wavelet(name: str, measure: WeightedMeasure, normalize: bool = False) -> MotherWavelet:
    try:
        fn = PRESETS[name](measure.mu)
    except KeyError:
        raise ParameterError(f"unknown wavelet preset {name!r}; known: {sorted(PRESETS)}") from None
    psi = MotherWavelet(SampledSignal.from_function(measure, fn), name)
    return psi.normalized() if normalize else psi


def _signal(psi) -> SampledSignal:
    return psi.signal if isinstance(psi, MotherWavelet) else psi


def _wavelet(psi) -> MotherWavelet:
    return psi if isinstance(psi, MotherWavelet) else MotherWavelet(psi)


def plancherel_factor(mu: float) -> float:
    """``(2^(mu+1) Gamma(mu+1))^2``, the inverse squared modulus of the Dunkl prefactor."""
    return (2.0 ** (mu + 1.0) * gamma(mu + 1.0)) ** 2


def scale_weights(scales: LogScaleGrid, mu: float) -> np.ndarray:
    """Quadrature weights for ``dt / t^(2mu+3)`` on a log grid."""
    return scales.log_weights * scales.nodes ** (-(2.0 * mu + 2.0))


# -- dilation and family ------------------------------------------------------------

def dilate(t: float, psi) -> SampledSignal:
    """``delta_t psi(y) = t^-(mu+1) psi(y/t)``, zero outside the sampled range."""
    if not (math.isfinite(t) and t > 0):
        raise ParameterError(f"dilation needs t > 0, got {t}")
    psi = _signal(psi)
    if t == 1:
        return psi
    vals = interpolate(psi, psi.nodes / t, outside="zero")
    return psi.with_values(vals * t ** (-(psi.mu + 1.0)))


@dataclass(frozen=True)
class FamilyMember:
    t: float
    x: float
    matrix: SL2Matrix
    mu: float
    values: SampledSignal


def _member_chirp(M: SL2Matrix, xs, ys) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    return np.exp(-0.5j * (M.a / M.b) * (ys[None, :] ** 2 - xs[:, None] ** 2))


MAX_SPECTRAL_WIDENING = 4.0


def dilated_spectral_grid(psi, t: float) -> SymmetricGrid:
    """Spectral grid holding ``D[delta_t psi]``, whose support is that of
    ``D psi`` stretched by ``1/t``.

    The widening is capped at ``MAX_SPECTRAL_WIDENING`` grid half-widths;
    smaller scales stay truncated.
    """
    psi = _signal(psi)
    grid = psi.measure.grid
    need = min(lcdt.effective_support(dunkl_spectrum(psi)) / t,
               MAX_SPECTRAL_WIDENING * grid.half_width)
    if need <= grid.half_width:
        return grid
    width = grid.panel_width
    return grid.widened(width * math.ceil(need / width))


def family_table(M: SL2Matrix, mu: float, t: float, xs, psi) -> np.ndarray:
    """Rows ``psi^M_{t, x_i}`` on the wavelet's grid, built by translating the
    dilated wavelet."""
    if M.b == 0:
        raise ParameterError("wavelet family needs b != 0")
    psi = _signal(psi)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    table = dunkl_translate_table(mu, xs, dilate(t, psi), spectral=dilated_spectral_grid(psi, t))
    return _member_chirp(M, xs, psi.nodes) * table


def family_member(M: SL2Matrix, mu: float, t: float, x: float, psi) -> FamilyMember:
    psi = _signal(psi)
    row = family_table(M, mu, t, [x], psi)[0]
    return FamilyMember(float(t), float(x), M, mu, psi.with_values(row))


# -- spectra of the wavelet -----------------------------------------------------

def window_prefactor(M: SL2Matrix, mu: float) -> complex:
    """Ratio of the LCDT prefactor for ``M`` to the Dunkl one."""
    return lcdt.prefactor(M, mu) / lcdt.prefactor(DUNKL, mu)


@lru_cache(maxsize=32)
def _dunkl_spectrum(psi_measure: WeightedMeasure, values: bytes, mu: float) -> SampledSignal:
    sig = SampledSignal(psi_measure, np.frombuffer(values, dtype=complex))
    return lcdt.forward(DUNKL, mu, sig, psi_measure.grid)


def dunkl_spectrum(psi) -> SampledSignal:
    """``D psi`` on the wavelet's own grid (cached by content)."""
    psi = _signal(psi)
    return _dunkl_spectrum(psi.measure, psi.values.tobytes(), psi.mu)


def window_spectrum(M: SL2Matrix, mu: float, psi, s) -> np.ndarray:
    """``D^M[exp(-ia z^2/2b) psi](s)`` via ``exp(id s^2/2b) k_b D psi(s/b)``.

    ``D psi`` is interpolated from the wavelet grid; it is taken as zero
    beyond the grid, which assumes a spectrum decaying inside it.
    """
    s = np.asarray(s, dtype=float)
    spec = dunkl_spectrum(psi)
    vals = interpolate(spec, s / M.b, outside="zero")
    return np.exp(0.5j * (M.d / M.b) * s * s) * window_prefactor(M, mu) * vals


def window_spectrum_direct(M: SL2Matrix, mu: float, psi, s) -> np.ndarray:
    """Same quantity by direct quadrature of the LCDT."""
    psi = _signal(psi)
    chirped = psi.with_values(np.exp(-0.5j * (M.a / M.b) * psi.nodes ** 2) * psi.values)
    return lcdt.forward_at(M, mu, chirped, s)


def admissibility_integral(M: SL2Matrix, mu: float, psi, lam: float = 1.0,
                           xi_min: float | None = None, side: int = 1) -> float:
    """``|b|^(2mu+2) int_0^inf |D^M(exp(-ia z^2/2b) psi)(lam xi)|^2 dxi/xi`` on
    a fixed log grid (``side=-1`` integrates the negative half-line)."""
    if M.b == 0:
        raise ParameterError("admissibility needs b != 0")
    lo, hi, n = ADMISSIBILITY_RANGE
    lo = lo if xi_min is None else xi_min
    grid = build_log_grid(lo * abs(M.b), hi * abs(M.b), n)
    vals = window_spectrum_direct(M, mu, psi, side * lam * grid.nodes)
    return abs(M.b) ** (2.0 * mu + 2.0) * float(np.sum(np.abs(vals) ** 2 * grid.log_weights))


def admissibility_constant(M: SL2Matrix, mu: float, psi) -> float:
    """``C_psi^M``, after checking convergence at the origin and equality of
    the two half-line integrals (both are needed for Plancherel)."""
    mu = check_mu(mu)
    c = admissibility_integral(M, mu, psi)
    c_half = admissibility_integral(M, mu, psi, xi_min=0.5 * ADMISSIBILITY_RANGE[0])
    if not (math.isfinite(c) and c > 0) or abs(c_half - c) > DIVERGENCE_TOL * c:
        raise AdmissibilityError(
            f"non-admissible wavelet: integral {c:.6e} -> {c_half:.6e} when xi_min halves")
    c_neg = admissibility_integral(M, mu, psi, side=-1)
    if abs(c_neg - c) > DIVERGENCE_TOL * c:
        raise AdmissibilityError(
            f"non-admissible wavelet: half-line integrals differ ({c:.6e} vs {c_neg:.6e})")
    return c


# -- coefficient fields ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoefficientField:
    scales: LogScaleGrid
    positions: WeightedMeasure
    values: np.ndarray = field(repr=False)
    matrix: SL2Matrix
    mu: float
    admissible: bool = True
    wavelet: str = "custom"

    def __post_init__(self):
        shape = (self.scales.count, self.positions.nodes.size)
        if self.values.shape != shape:
            raise ParameterError(f"field shape {self.values.shape} != grid shape {shape}")

    @property
    def cell_measure(self) -> np.ndarray:
        return np.outer(scale_weights(self.scales, self.mu), self.positions.weighted_weights)

    def with_values(self, values) -> "CoefficientField":
        return CoefficientField(self.scales, self.positions, np.asarray(values, dtype=complex),
                                self.matrix, self.mu, self.admissible, self.wavelet)

    def inner(self, other: "CoefficientField") -> complex:
        return complex(np.sum(self.values * np.conj(other.values) * self.cell_measure))

    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2 * self.cell_measure))

    def lp_norm(self, p: float) -> float:
        if math.isinf(p):
            return float(np.abs(self.values).max())
        return float(np.sum(np.abs(self.values) ** p * self.cell_measure)) ** (1.0 / p)


def _positions(f: SampledSignal, positions) -> WeightedMeasure:
    if positions is None:
        return f.measure
    if isinstance(positions, SymmetricGrid):
        return WeightedMeasure.build(f.mu, positions)
    return positions


def _flag(M, psi: MotherWavelet) -> bool:
    return psi.is_admissible(M)


def analyze(M: SL2Matrix, mu: float, f: SampledSignal, psi, scales: LogScaleGrid | None = None,
            positions=None) -> CoefficientField:
    """Coefficients by explicit quadrature against each family member.

    Accurate only for scales whose dilated wavelet is resolved by, and fits
    inside, the wavelet grid.
    """
    mu = check_mu(mu)
    psi = _wavelet(psi)
    scales = default_scale_grid() if scales is None else scales
    pos = _positions(f, positions)
    if psi.measure != f.measure:
        raise ParameterError("signal and wavelet must share a grid")
    fw = f.values * f.measure.weighted_weights
    out = np.empty((scales.count, pos.nodes.size), dtype=complex)
    for i, t in enumerate(scales.nodes):
        out[i] = np.conj(family_table(M, mu, t, pos.nodes, psi)) @ fw
    return CoefficientField(scales, pos, out, M, mu, _flag(M, psi), psi.name)


def coefficient_spectrum(M: SL2Matrix, mu: float, F: np.ndarray, lam: np.ndarray, psi,
                         t: float) -> np.ndarray:
    """``D^M[Phi(t, .)](lam)`` from the signal spectrum ``F`` on a symmetric grid.

    ``Gamma(mu+1) (-2itb)^(mu+1) exp(id(t lam)^2/2b) D^M f(-lam)
    conj(D^M[exp(-ia z^2/2b) psi](-t lam))``.
    """
    pref = gamma(mu + 1.0) * complex_power_principal(-2j * t * M.b, mu + 1.0)
    W = window_spectrum(M, mu, psi, -t * lam)
    return pref * np.exp(0.5j * (M.d / M.b) * (t * lam) ** 2) * F[::-1] * np.conj(W)


def analyze_spectral(M: SL2Matrix, mu: float, f: SampledSignal, psi,
                     scales: LogScaleGrid | None = None, positions=None,
                     spectral: SymmetricGrid | None = None) -> CoefficientField:
    """Coefficients by multiplying spectra and inverting the LCDT per scale."""
    mu = check_mu(mu)
    if M.b == 0:
        raise ParameterError("wavelet transform needs b != 0")
    psi = _wavelet(psi)
    scales = default_scale_grid() if scales is None else scales
    pos = _positions(f, positions)
    spec_grid = lcdt.spectral_grid_for(f.measure.grid, M) if spectral is None else spectral
    F = lcdt.forward(M, mu, f, spec_grid)
    lam = F.nodes
    G = np.stack([coefficient_spectrum(M, mu, F.values, lam, psi, t) for t in scales.nodes])
    Kinv = lcdt.cached_kernel_matrix(M.inverse(), mu, pos.grid, F.measure)
    return CoefficientField(scales, pos, G @ Kinv.T, M, mu, _flag(M, psi), psi.name)


def coefficients_at(M: SL2Matrix, mu: float, f: SampledSignal, psi, t: float) -> SampledSignal:
    """``Phi(t, .)`` at one scale on the signal grid (spectral route)."""
    mu = check_mu(mu)
    if M.b == 0:
        raise ParameterError("wavelet transform needs b != 0")
    if not (math.isfinite(t) and t > 0):
        raise ParameterError(f"scale must be positive, got {t}")
    F = lcdt.forward(M, mu, f, lcdt.spectral_grid_for(f.measure.grid, M))
    G = coefficient_spectrum(M, mu, F.values, F.nodes, psi, t)
    Kinv = lcdt.cached_kernel_matrix(M.inverse(), mu, f.measure.grid, F.measure)
    return f.with_values(Kinv @ G)


def analyze_dunkl(mu: float, f: SampledSignal, psi, scales=None, positions=None) -> CoefficientField:
    """Classical Dunkl wavelet coefficients ``<f, T_x delta_t psi>``."""
    return analyze(DUNKL, mu, f, psi, scales, positions)


def lc_chirp_signal(M: SL2Matrix, f: SampledSignal) -> SampledSignal:
    """``f_{a,b}(y) = exp(ia y^2/2b) f(y)``."""
    return f.with_values(np.exp(0.5j * (M.a / M.b) * f.nodes ** 2) * f.values)


# -- synthesis, orthogonality, reproducing kernel ----------------------------------------

def synthesize(M: SL2Matrix, mu: float, field: CoefficientField, psi,
               output: SymmetricGrid | None = None, route: str = "spectral",
               spectral: SymmetricGrid | None = None) -> SampledSignal:
    """``f(y) = 1/K int int Phi(t,x) psi^M_{t,x}(y) |x|^(2mu+1) dx dt/t^(2mu+3)``."""
    psi = _wavelet(psi)
    if not field.admissible:
        raise ParameterError("field was analyzed with a non-admissible wavelet")
    if field.matrix != M or field.mu != mu:
        raise ParameterError("field was produced with a different (M, mu)")
    K = psi.plancherel_constant(M)
    out_grid = psi.measure.grid if output is None else output
    out_measure = WeightedMeasure.build(mu, out_grid)
    sw = scale_weights(field.scales, mu)
    pos = field.positions
    if route == "direct":
        if out_measure != psi.measure:
            raise ParameterError("direct synthesis evaluates on the wavelet grid")
        acc = np.zeros(out_grid.nodes.size, dtype=complex)
        for i, t in enumerate(field.scales.nodes):
            table = family_table(M, mu, t, pos.nodes, psi)
            acc += sw[i] * ((field.values[i] * pos.weighted_weights) @ table)
        return SampledSignal(out_measure, acc / K)
    if route != "spectral":
        raise ParameterError(f"unknown synthesis route {route!r}")
    spec_grid = lcdt.spectral_grid_for(out_grid, M) if spectral is None else spectral
    lam = spec_grid.nodes
    E = dunkl_kernel_outer(mu, lam / M.b, pos.nodes)
    E = E * (np.exp(0.5j * (M.a / M.b) * pos.nodes ** 2) * pos.weighted_weights)[None, :]
    A = field.values @ E.T
    total = np.zeros(lam.size, dtype=complex)
    for i, t in enumerate(field.scales.nodes):
        W = window_spectrum(M, mu, psi, t * lam)
        phase = np.exp(0.5j * (M.d / M.b) * (lam ** 2 - (t * lam) ** 2))
        total += sw[i] * t ** (mu + 1.0) * phase * W * A[i]
    spec = lcdt.Spectrum(WeightedMeasure.build(mu, spec_grid), total / K, M, out_grid)
    return lcdt.inverse(M, mu, spec, out_grid)


def plancherel_residual(M, mu, f, psi, scales=None, route="spectral") -> float:
    psi = _wavelet(psi)
    fld = (analyze_spectral if route == "spectral" else analyze)(M, mu, f, psi, scales)
    rhs = psi.plancherel_constant(M) * f.norm(2) ** 2
    return abs(fld.energy() - rhs) / rhs


def orthogonality_check(M: SL2Matrix, mu: float, f: SampledSignal, g: SampledSignal, psi,
                        scales: LogScaleGrid | None = None, route: str = "spectral"):
    """``(lhs, rhs, residual)`` for ``<<Phi f, Phi g>> = K <f, g>``."""
    psi = _wavelet(psi)
    run = analyze_spectral if route == "spectral" else analyze
    Ff = run(M, mu, f, psi, scales)
    Fg = run(M, mu, g, psi, scales)
    lhs = Ff.inner(Fg)
    rhs = psi.plancherel_constant(M) * inner_product(f, g)
    residual = abs(lhs - rhs) / (abs(rhs) + 1e-300)
    return lhs, rhs, float(residual)


@dataclass(frozen=True, eq=False)
class ReproducingKernelTable:
    """Entries ``R[i, j, k, l] = R_psi(t_i, x_j, t'_k, x'_l)``."""

    entries: np.ndarray = field(repr=False)
    scales: np.ndarray
    positions: np.ndarray
    scales2: np.ndarray
    positions2: np.ndarray
    matrix: SL2Matrix
    matrix2: SL2Matrix
    bound: float

    def violations(self, rel: float = 1e-9) -> int:
        return int(np.count_nonzero(np.abs(self.entries) > self.bound * (1.0 + rel)))


def _member_block(M, mu, ts, xs, psi) -> np.ndarray:
    return np.stack([family_table(M, mu, t, xs, psi) for t in ts])


def reproducing_kernel(M: SL2Matrix, M2: SL2Matrix, mu: float, psi, scales, positions,
                       scales2=None, positions2=None) -> ReproducingKernelTable:
    """``R_psi(t,x,t',x') = 1/K <psi^M_{t,x}, psi^M'_{t',x'}>_mu`` on sample points."""
    psi = _wavelet(psi)
    ts = np.asarray(getattr(scales, "nodes", scales), dtype=float)
    xs = np.asarray(positions, dtype=float)
    ts2 = ts if scales2 is None else np.asarray(getattr(scales2, "nodes", scales2), dtype=float)
    xs2 = xs if positions2 is None else np.asarray(positions2, dtype=float)
    K = psi.plancherel_constant(M)
    A = _member_block(M, mu, ts, xs, psi).reshape(ts.size * xs.size, -1)
    B = _member_block(M2, mu, ts2, xs2, psi).reshape(ts2.size * xs2.size, -1)
    gram = (A * psi.measure.weighted_weights[None, :]) @ np.conj(B).T
    entries = (gram / K).reshape(ts.size, xs.size, ts2.size, xs2.size)
    return ReproducingKernelTable(entries, ts, xs, ts2, xs2, M, M2, psi.norm(2) ** 2 / K)


def reproduction_check(M: SL2Matrix, M2: SL2Matrix, mu: float, f: SampledSignal, psi,
                       t2: float, x2: float, scales: LogScaleGrid | None = None):
    """Compare ``Phi^M' f(t', x')`` with the kernel integral of ``Phi^M f``.

    Returns ``(direct, reproduced, relative_error)``.
    """
    psi = _wavelet(psi)
    member = family_member(M2, mu, t2, x2, psi).values
    direct = inner_product(f, member)
    Ff = analyze_spectral(M, mu, f, psi, scales)
    Fm = analyze_spectral(M, mu, member, psi, scales)
    kernel = np.conj(Fm.values) / psi.plancherel_constant(M)
    reproduced = complex(np.sum(Ff.values * kernel * Ff.cell_measure))
    return direct, reproduced, abs(reproduced - direct) / (abs(direct) + 1e-300)
