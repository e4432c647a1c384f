"""Weighted quadrature on truncated symmetric domains.

A :class:`SymmetricGrid` is a composite Gauss-Legendre rule on ``[-R, R]``;
attaching a Dunkl order gives a :class:`WeightedMeasure` realizing
``|y|^(2mu+1) dy``.  Signals live on a measure as :class:`SampledSignal`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import NumericalError, ParameterError, RangeError
from .special import check_mu

#: above this many terms sums are accumulated with math.fsum
COMPENSATED_THRESHOLD = 10_000


@dataclass(frozen=True, eq=False)
class SymmetricGrid:
    half_width: float
    panels: int
    order: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def key(self):
        return (self.half_width, self.panels, self.order)

    @property
    def size(self) -> int:
        return self.nodes.size

    @property
    def panel_width(self) -> float:
        return 2.0 * self.half_width / self.panels

    def __eq__(self, other):
        return isinstance(other, SymmetricGrid) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def refined(self, factor: int = 2) -> "SymmetricGrid":
        return build_grid(self.half_width, self.panels * factor, self.order)

    def widened(self, half_width: float) -> "SymmetricGrid":
        """Grid on ``[-half_width, half_width]`` with the same panel width."""
        panels = max(self.panels, int(math.ceil(self.panels * half_width / self.half_width)))
        if self.panels % 2 == 0 and panels % 2:
            panels += 1
        return build_grid(half_width, panels, self.order)


def build_grid(half_width: float, panels: int, order: int) -> SymmetricGrid:
    """Composite Gauss-Legendre rule with ``panels`` equal panels on ``[-R, R]``.

    With an even panel count the origin is a panel edge, so no node sits on
    the kink of ``|y|^(2mu+1)``.
    """
    if not (math.isfinite(half_width) and half_width > 0):
        raise ParameterError(f"half_width must be > 0, got {half_width}")
    if int(panels) != panels or panels < 1:
        raise ParameterError(f"panels must be an integer >= 1, got {panels}")
    if int(order) != order or order < 2:
        raise ParameterError(f"order must be an integer >= 2, got {order}")
    panels, order = int(panels), int(order)
    ref_x, ref_w = np.polynomial.legendre.leggauss(order)
    ref_x = 0.5 * (ref_x - ref_x[::-1])
    ref_w = 0.5 * (ref_w + ref_w[::-1])
    edges = np.linspace(-half_width, half_width, panels + 1)
    edges = 0.5 * (edges - edges[::-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * ref_x[None, :]).ravel()
    weights = (half[:, None] * ref_w[None, :]).ravel()
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return SymmetricGrid(float(half_width), panels, order, nodes, weights)


@dataclass(frozen=True, eq=False)
class WeightedMeasure:
    mu: float
    grid: SymmetricGrid
    weighted_weights: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, mu: float, grid: SymmetricGrid) -> "WeightedMeasure":
        mu = check_mu(mu)
        ww = grid.weights * np.abs(grid.nodes) ** (2.0 * mu + 1.0)
        ww.setflags(write=False)
        return cls(mu, grid, ww)

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def key(self):
        return (self.mu, self.grid.key)

    def __eq__(self, other):
        return isinstance(other, WeightedMeasure) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def weighted_measure(mu: float, half_width: float = 12.0, panels: int = 48, order: int = 16):
    return WeightedMeasure.build(mu, build_grid(half_width, panels, order))


def _sum(values: np.ndarray):
    if values.size > COMPENSATED_THRESHOLD:
        if np.iscomplexobj(values):
            return complex(math.fsum(values.real), math.fsum(values.imag))
        return math.fsum(values)
    return values.sum()


Evaluator = Union[Callable[[np.ndarray], np.ndarray], np.ndarray]


def integrate_weighted(f: Evaluator, measure: WeightedMeasure):
    """``sum_i f(node_i) * weighted_weight_i``; ``f`` is a callable or node values."""
    vals = np.asarray(f(measure.nodes) if callable(f) else f)
    if vals.shape != measure.nodes.shape:
        raise ParameterError(f"expected {measure.nodes.size} node values, got shape {vals.shape}")
    bad = ~np.isfinite(vals)
    if np.any(bad):
        node = float(measure.nodes[np.argmax(bad)])
        raise NumericalError(f"non-finite integrand at node {node}", node=node)
    return _sum(vals * measure.weighted_weights)


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Complex samples of a function on the nodes of a weighted measure."""

    measure: WeightedMeasure
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.measure.nodes.shape:
            raise ParameterError(
                f"signal has {vals.size} values but the grid has {self.measure.nodes.size} nodes")
        if not np.all(np.isfinite(vals)):
            raise NumericalError("signal values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, measure: WeightedMeasure, fn) -> "SampledSignal":
        return cls(measure, fn(measure.nodes))

    @classmethod
    def zeros(cls, measure: WeightedMeasure) -> "SampledSignal":
        return cls(measure, np.zeros(measure.nodes.size, dtype=complex))

    @property
    def nodes(self) -> np.ndarray:
        return self.measure.nodes

    @property
    def mu(self) -> float:
        return self.measure.mu

    def with_values(self, values) -> "SampledSignal":
        return SampledSignal(self.measure, values)

    def norm(self, p: float = 2.0) -> float:
        return norm_p(self, p)

    def normalized(self) -> "SampledSignal":
        n = self.norm(2)
        if n == 0:
            raise ParameterError("cannot normalize a zero signal")
        return self.with_values(self.values / n)

    def conj(self) -> "SampledSignal":
        return self.with_values(np.conj(self.values))

    def reflected(self) -> "SampledSignal":
        """``f(-y)``; exact because the grid is symmetric."""
        return self.with_values(self.values[::-1])

    def at(self, points, outside: str = "raise") -> np.ndarray:
        return interpolate(self, points, outside=outside)

    def _check_same(self, other: "SampledSignal"):
        if self.measure != other.measure:
            raise ParameterError("signals live on different grids/measures")

    def __add__(self, other):
        if isinstance(other, SampledSignal):
            self._check_same(other)
            return self.with_values(self.values + other.values)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, SampledSignal):
            self._check_same(other)
            return self.with_values(self.values - other.values)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, SampledSignal):
            self._check_same(other)
            other = other.values
        return self.with_values(self.values * other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_values(-self.values)


def norm_p(f: SampledSignal, p: float = 2.0) -> float:
    """Weighted L^p norm; ``p = inf`` is the max over grid nodes."""
    p = float(p)
    if not p >= 1:
        raise ParameterError(f"norm exponent must be >= 1, got {p}")
    mag = np.abs(f.values)
    if math.isinf(p):
        return float(mag.max()) if mag.size else 0.0
    total = float(integrate_weighted(mag ** p, f.measure))
    return total ** (1.0 / p)


def inner_product(f: SampledSignal, g: SampledSignal) -> complex:
    """``<f, g>_mu = int f conj(g) |y|^(2mu+1) dy``."""
    f._check_same(g)
    return complex(integrate_weighted(f.values * np.conj(g.values), f.measure))


# -- interpolation -----------------------------------------------------------

def _barycentric_weights(x: np.ndarray) -> np.ndarray:
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    w = 1.0 / diff.prod(axis=1)
    return w / np.abs(w).max()


def interpolate(f: SampledSignal, points, outside: str = "raise") -> np.ndarray:
    """Evaluate ``f`` at arbitrary points by Lagrange interpolation through the
    Gauss nodes of the containing panel.

    ``outside`` is ``"raise"`` (RangeError) or ``"zero"`` for points beyond
    ``[-R, R]``.
    """
    grid = f.measure.grid
    pts = np.asarray(points, dtype=float)
    flat = pts.ravel()
    R = grid.half_width
    tol = 1e-12 * R
    out_of_range = np.abs(flat) > R + tol
    if np.any(out_of_range) and outside == "raise":
        bad = float(flat[np.argmax(out_of_range)])
        raise RangeError(f"point {bad} lies outside the sampled range [-{R}, {R}]")
    n = grid.order
    result = np.zeros(flat.shape, dtype=f.values.dtype)
    inside = ~out_of_range
    q = flat[inside]
    idx = np.clip(np.floor((q + R) / grid.panel_width).astype(int), 0, grid.panels - 1)
    xs = grid.nodes.reshape(grid.panels, n)[idx]
    ys = f.values.reshape(grid.panels, n)[idx]
    bw = _barycentric_weights(grid.nodes[:n])
    diff = q[:, None] - xs
    hit = diff == 0
    diff[hit] = 1.0
    c = bw[None, :] / diff
    vals = (c * ys).sum(axis=1) / c.sum(axis=1)
    rows = hit.any(axis=1)
    if np.any(rows):
        vals[rows] = ys[rows][hit[rows]]
    result[inside] = vals
    return result.reshape(pts.shape)


# -- scale grids --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LogScaleGrid:
    """Geometric scale nodes with trapezoid weights for ``dt/t``."""

    t_min: float
    t_max: float
    count: int
    nodes: np.ndarray = field(repr=False)
    log_weights: np.ndarray = field(repr=False)

    @property
    def key(self):
        return (self.t_min, self.t_max, self.count)

    def __eq__(self, other):
        return isinstance(other, LogScaleGrid) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def refined(self, factor: int = 2) -> "LogScaleGrid":
        return build_log_grid(self.t_min, self.t_max, (self.count - 1) * factor + 1)


def build_log_grid(t_min: float, t_max: float, count: int) -> LogScaleGrid:
    if not (math.isfinite(t_min) and math.isfinite(t_max) and 0 < t_min < t_max):
        raise ParameterError(f"need 0 < t_min < t_max, got ({t_min}, {t_max})")
    if int(count) != count or count < 2:
        raise ParameterError(f"scale count must be an integer >= 2, got {count}")
    count = int(count)
    nodes = np.geomspace(t_min, t_max, count)
    nodes[0], nodes[-1] = t_min, t_max
    h = math.log(t_max / t_min) / (count - 1)
    lw = np.full(count, h)
    lw[0] = lw[-1] = 0.5 * h
    nodes.setflags(write=False)
    lw.setflags(write=False)
    return LogScaleGrid(float(t_min), float(t_max), count, nodes, lw)
