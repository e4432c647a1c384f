"""Run configuration and the preset taxonomy of (mu, M) pairs."""
from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field

from .errors import LCDWTError, ParameterError
from .quadrature import LogScaleGrid, SymmetricGrid, build_grid, build_log_grid
from .special import DUNKL, SL2Matrix, check_mu


class ConfigError(LCDWTError, ValueError):
    """Invalid or unknown configuration entries (CLI exit code 2)."""


# -- presets ------------------------------------------------------------------------

@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    # None leaves mu to the caller
    mu: float | None
    parameter: str | None

    def matrix(self, theta: float = math.pi / 4, b: float = 1.0) -> SL2Matrix:
        if self.name == "dunkl":
            return DUNKL
        if self.name in ("fractional", "classical-fourier"):
            return SL2Matrix.rotation(theta)
        if self.name == "fresnel-class":
            if b == 0:
                raise ConfigError("fresnel-class needs b != 0")
            return SL2Matrix(1.0, float(b), 0.0, 1.0)
        raise ConfigError(f"unknown preset {self.name!r}")


class PresetCatalog:
    """Named members of the transform family."""

    _entries = (
        Preset("dunkl", "Dunkl transform, M = (0, 1, -1, 0)", None, None),
        Preset("fractional", "fractional Dunkl, M = (cos t, sin t, -sin t, cos t)", None, "theta"),
        Preset("classical-fourier", "mu = -1/2 with a rotation: fractional Fourier", -0.5, "theta"),
        Preset("fresnel-class", "chirp/Fresnel type, M = (1, b, 0, 1)", None, "b"),
    )

    @classmethod
    def names(cls) -> list[str]:
        return [p.name for p in cls._entries]

    @classmethod
    def get(cls, name: str) -> Preset:
        for p in cls._entries:
            if p.name == name:
                return p
        raise ConfigError(f"unknown preset {name!r}; known: {cls.names()}")

    @classmethod
    def listing(cls, theta: float = math.pi / 4, b: float = 1.0) -> list[str]:
        lines = []
        for p in cls._entries:
            M = p.matrix(theta, b)
            mu = "any" if p.mu is None else f"{p.mu:g}"
            lines.append(f"{p.name}\tmu={mu}\tM=({M.a:.6g},{M.b:.6g},{M.c:.6g},{M.d:.6g})"
                         f"\t{p.description}")
        return lines


# -- run configuration ---------------------------------------------------------------

@dataclass
class GridConfig:
    half_width: float = 12.0
    panels: int = 48
    order: int = 16

    def build(self) -> SymmetricGrid:
        return build_grid(self.half_width, self.panels, self.order)


@dataclass
class ScaleConfig:
    t_min: float = 1.0 / 16.0
    t_max: float = 16.0
    count: int = 64

    def build(self) -> LogScaleGrid:
        return build_log_grid(self.t_min, self.t_max, self.count)


@dataclass
class Tolerances:
    unitarity: float = 1e-5
    inversion: float = 1e-6
    product_formula: float = 1e-6
    slack: float = 1e-3
    orthogonality: float = 1e-2
    reconstruction: float = 1e-2
    reproduction: float = 1e-2


@dataclass
class SuiteConfig:
    signals: int = 4
    pairs: int = 20
    young_triples: list = field(default_factory=lambda: [[1, 1, 1], [2, 1, 2], [1, 2, 2]])
    cases: int = 3
    kernel_points: int = 8
    draws: int = 10
    # "config": the configured (mu, M) only; "pool": the preset pool below
    pool: str = "config"


@dataclass
class RunConfig:
    mu: float = 0.0
    matrix: list | None = None
    preset: str = "dunkl"
    theta: float = math.pi / 4
    b: float = 1.0
    grid: GridConfig = field(default_factory=GridConfig)
    scales: ScaleConfig = field(default_factory=ScaleConfig)
    wavelet: str = "mexican-hat"
    tolerances: Tolerances = field(default_factory=Tolerances)
    suite: SuiteConfig = field(default_factory=SuiteConfig)
    seed: int = 0

    def resolved_matrix(self) -> SL2Matrix:
        if self.matrix is not None:
            try:
                return SL2Matrix(*[float(v) for v in self.matrix])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"invalid matrix {self.matrix}: {exc}") from None
        return PresetCatalog.get(self.preset).matrix(self.theta, self.b)

    def validate(self) -> "RunConfig":
        try:
            check_mu(self.mu)
            PresetCatalog.get(self.preset)
            fixed = PresetCatalog.get(self.preset).mu
            if self.matrix is None and fixed is not None and self.mu != fixed:
                raise ConfigError(f"preset {self.preset!r} fixes mu = {fixed}, got {self.mu}")
            self.resolved_matrix()
            self.grid.build()
            self.scales.build()
            for name, v in dataclasses.asdict(self.tolerances).items():
                if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v)):
                    raise ConfigError(f"tolerance {name} must be positive, got {v}")
            s = self.suite
            for name in ("signals", "pairs", "cases", "kernel_points", "draws"):
                v = getattr(s, name)
                if not (isinstance(v, int) and v >= 1):
                    raise ConfigError(f"suite.{name} must be a positive integer, got {v}")
            if s.pool not in ("config", "pool"):
                raise ConfigError(f"suite.pool must be 'config' or 'pool', got {s.pool!r}")
            from .translation import check_young_exponents
            for triple in s.young_triples:
                if not (isinstance(triple, (list, tuple)) and len(triple) == 3):
                    raise ConfigError(f"Young triple must have three entries, got {triple}")
                check_young_exponents(*[float(e) for e in triple])
            if not (isinstance(self.seed, int) and self.seed >= 0):
                raise ConfigError(f"seed must be a non-negative integer, got {self.seed}")
        except ConfigError:
            raise
        except (ParameterError, ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from None
        return self

    # -- strict JSON --------------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        return _build(cls, data, "").validate()

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.from_json(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _build(cls, data, prefix: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{prefix or 'config'} must be an object")
    fields = {f.name: f for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - set(fields))
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(prefix + k for k in unknown)}")
    kwargs = {}
    for name, value in data.items():
        sub = _NESTED.get((cls, name))
        kwargs[name] = _build(sub, value, f"{prefix}{name}.") if sub else value
    try:
        obj = cls(**kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    _check_types(obj, prefix)
    return obj


def _check_types(obj, prefix):
    for f in dataclasses.fields(obj):
        v = getattr(obj, f.name)
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        if isinstance(default, bool) or default is None or dataclasses.is_dataclass(default):
            continue
        if isinstance(default, float):
            ok = isinstance(v, (int, float)) and not isinstance(v, bool)
        elif isinstance(default, int):
            ok = isinstance(v, int) and not isinstance(v, bool)
        else:
            ok = isinstance(v, type(default))
        if not ok:
            raise ConfigError(f"{prefix}{f.name} has the wrong type: {v!r}")
    if isinstance(obj, RunConfig) and obj.matrix is not None:
        m = obj.matrix
        if isinstance(m, str):
            try:
                obj.matrix = list(SL2Matrix.from_string(m).as_tuple())
            except (ParameterError, ValueError) as exc:
                raise ConfigError(str(exc)) from None
        elif not (isinstance(m, list) and len(m) == 4):
            raise ConfigError(f"matrix must be [a, b, c, d] or 'a,b,c,d', got {m!r}")


_NESTED = {(RunConfig, "grid"): GridConfig, (RunConfig, "scales"): ScaleConfig,
           (RunConfig, "tolerances"): Tolerances, (RunConfig, "suite"): SuiteConfig}
