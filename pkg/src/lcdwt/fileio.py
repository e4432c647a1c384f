"""CSV signal and coefficient files.

Signals: header ``x,re,im``, one grid node per row. Coefficients: header
``t,x,re,im``, row-major over scales then positions.
"""
from __future__ import annotations

import csv
import math

import numpy as np
from scipy.interpolate import CubicSpline

from .config import ConfigError
from .errors import LCDWTError
from .quadrature import SampledSignal, WeightedMeasure

SIGNAL_HEADER = ["x", "re", "im"]
COEFF_HEADER = ["t", "x", "re", "im"]
NODE_TOL = 1e-9


class ParseError(LCDWTError, ValueError):
    """Malformed input file (CLI exit code 1)."""


def read_table(path, header: list[str]) -> np.ndarray:
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot open: {exc.strerror}") from None
    with fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ParseError(f"{path}: line 1: empty file")
    got = [c.strip() for c in rows[0]]
    if got != header:
        raise ParseError(f"{path}: line 1: header must be {','.join(header)}, got {','.join(got)}")
    data = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}")
        try:
            vals = [float(c) for c in row]
        except ValueError:
            raise ParseError(f"{path}: line {lineno}: non-numeric field in {row}") from None
        if not all(math.isfinite(v) for v in vals):
            raise ParseError(f"{path}: line {lineno}: non-finite value")
        data.append(vals)
    if not data:
        raise ParseError(f"{path}: line 2: no data rows")
    return np.array(data)


def peek_header(path) -> list[str]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            first = next(csv.reader(fh), [])
    except OSError as exc:
        raise ParseError(f"{path}: cannot open: {exc.strerror}") from None
    return [c.strip() for c in first]


def read_signal(path, measure: WeightedMeasure, resample: bool = False) -> SampledSignal:
    """Signal on ``measure``'s grid; nodes must match unless ``resample``."""
    table = read_table(path, SIGNAL_HEADER)
    x, values = table[:, 0], table[:, 1] + 1j * table[:, 2]
    nodes = measure.nodes
    if x.size == nodes.size and np.all(np.abs(x - nodes) <= NODE_TOL * measure.grid.half_width):
        return SampledSignal(measure, values)
    if not resample:
        raise ConfigError(f"{path}: {x.size} nodes do not match the configured grid "
                          f"({nodes.size} nodes); pass --resample to interpolate")
    if np.any(np.diff(x) <= 0):
        raise ParseError(f"{path}: x column must be strictly increasing to resample")
    inside = (nodes >= x[0]) & (nodes <= x[-1])
    out = np.zeros(nodes.size, dtype=complex)
    out[inside] = CubicSpline(x, values.real)(nodes[inside]) + 1j * CubicSpline(x, values.imag)(nodes[inside])
    return SampledSignal(measure, out)


def _fmt(v: float) -> str:
    return repr(float(v))


def write_signal(path, f: SampledSignal):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SIGNAL_HEADER)
        for x, v in zip(f.nodes, f.values):
            w.writerow([_fmt(x), _fmt(v.real), _fmt(v.imag)])


def write_coefficients(path, scales, positions, values):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COEFF_HEADER)
        for t, row in zip(scales, values):
            for x, v in zip(positions, row):
                w.writerow([_fmt(t), _fmt(x), _fmt(v.real), _fmt(v.imag)])


def read_coefficients(path, scales, positions) -> np.ndarray:
    table = read_table(path, COEFF_HEADER)
    nt, nx = len(scales), len(positions)
    if table.shape[0] != nt * nx:
        raise ConfigError(f"{path}: {table.shape[0]} rows, expected {nt} x {nx} = {nt * nx}")
    t = table[:, 0].reshape(nt, nx)
    x = table[:, 1].reshape(nt, nx)
    scale_tol = NODE_TOL * max(scales)
    if (np.abs(t - np.asarray(scales)[:, None]).max() > scale_tol
            or np.abs(x - np.asarray(positions)[None, :]).max() > NODE_TOL * max(abs(positions))):
        raise ConfigError(f"{path}: coefficient grid does not match the configured grids")
    return (table[:, 2] + 1j * table[:, 3]).reshape(nt, nx)


def write_magnitude_matrix(path, scales, positions, values):
    """``|values|`` as a CSV matrix: first row positions, first column scales."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t\\x"] + [_fmt(x) for x in positions])
        for t, row in zip(scales, values):
            w.writerow([_fmt(t)] + [_fmt(abs(v)) for v in row])
