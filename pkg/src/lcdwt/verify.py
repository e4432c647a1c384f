"""Verification suites behind ``lcdwt verify``.

Each suite draws its random inputs from a generator seeded by
``(seed, suite index)``, so suites are reproducible on their own and in
any combination.
"""
from __future__ import annotations

import math
from itertools import groupby

import numpy as np

from . import lcdt, wavelet as wv
from .config import RunConfig
from .quadrature import WeightedMeasure, build_log_grid, norm_p
from .report import CheckReport, closeness, inequality
from .signals import random_signal
from .special import DUNKL, SL2Matrix
from .translation import (convolve_lc, dunkl_translate, lc_translate_table,
                          product_formula_residual)
from .uncertainty import random_draw, run_draw

POOL_MUS = (-0.5, 0.0, 0.5, 1.0)
POOL_MATRICES = (
    DUNKL,
    SL2Matrix.rotation(math.pi / 4),
    SL2Matrix.rotation(math.pi / 3),
    SL2Matrix(1.0, 1.0, 0.0, 1.0),
    SL2Matrix(1.0, -0.5, 0.0, 1.0),
)
SUITES = ("plancherel", "inversion", "translation", "young", "orthogonality", "reproducing",
          "uncertainty")


def matrix_label(M: SL2Matrix) -> str:
    return ",".join(f"{v:.6g}" for v in M.as_tuple())


class _Context:
    def __init__(self, cfg: RunConfig, suite: str):
        self.cfg = cfg
        self.rng = np.random.default_rng([cfg.seed, SUITES.index(suite)])
        self.grid = cfg.grid.build()
        self.scales = cfg.scales.build()
        self.M = cfg.resolved_matrix()

    def pick(self):
        """``(mu, M)`` for the next case."""
        if self.cfg.suite.pool == "config":
            return self.cfg.mu, self.M
        mu = POOL_MUS[int(self.rng.integers(len(POOL_MUS)))]
        return mu, POOL_MATRICES[int(self.rng.integers(len(POOL_MATRICES)))]

    def measure(self, mu):
        return WeightedMeasure.build(mu, self.grid)


def _tag(rep: CheckReport, i, mu, M) -> CheckReport:
    rep.params = {"case": i, "mu": float(mu), "M": matrix_label(M), **rep.params}
    return rep


def suite_plancherel(cfg: RunConfig) -> list[CheckReport]:
    ctx = _Context(cfg, "plancherel")
    out = []
    for i in range(cfg.suite.signals):
        mu, M = ctx.pick()
        f = random_signal(ctx.measure(mu), ctx.rng)
        dev = abs(lcdt.forward(M, mu, f).norm(2) - f.norm(2)) / f.norm(2)
        out.append(_tag(closeness("lcdt_norm", dev, cfg.tolerances.unitarity), i, mu, M))
    return out


def suite_inversion(cfg: RunConfig) -> list[CheckReport]:
    ctx = _Context(cfg, "inversion")
    out = []
    for i in range(cfg.suite.signals):
        mu, M = ctx.pick()
        f = random_signal(ctx.measure(mu), ctx.rng)
        back = lcdt.inverse(M, mu, lcdt.forward(M, mu, f))
        res = (back - f).norm(2) / f.norm(2)
        out.append(_tag(closeness("lcdt_inversion", res, cfg.tolerances.inversion), i, mu, M))
    return out


def suite_translation(cfg: RunConfig) -> list[CheckReport]:
    ctx = _Context(cfg, "translation")
    tol = cfg.tolerances
    out = []
    xs = np.linspace(-2.0, 2.0, 5)
    for i in range(cfg.suite.signals):
        mu, M = ctx.pick()
        m = ctx.measure(mu)
        if M.b == 0:
            continue
        out.append(_tag(closeness("product_formula", product_formula_residual(M, mu, m, xs, xs),
                                  tol.product_formula), i, mu, M))
        f = random_signal(m, ctx.rng)
        ident = (f.with_values(lc_translate_table(M, mu, [0.0], f)[0]) - f).norm(2) / f.norm(2)
        out.append(_tag(closeness("translation_identity", ident, tol.inversion), i, mu, M))
        x = float(ctx.rng.uniform(-2.0, 2.0))
        moved = f.with_values(lc_translate_table(M, mu, [x], f)[0])
        out.append(_tag(inequality("translation_l2", moved.norm(2), f.norm(2), tol.slack, x=x),
                        i, mu, M))
    return out


def young_reports(M, mu, f, g, triples, slack) -> list[CheckReport]:
    h = convolve_lc(M, mu, f, g)
    reps = []
    for p, q, r in triples:
        p, q, r = float(p), float(q), float(r)
        reps.append(inequality("young", norm_p(h, r), norm_p(f, p) * norm_p(g, q), slack,
                               p=p, q=q, r=r))
    return reps


def suite_young(cfg: RunConfig) -> list[CheckReport]:
    ctx = _Context(cfg, "young")
    out = []
    for i in range(cfg.suite.pairs):
        mu, M = ctx.pick()
        m = ctx.measure(mu)
        f, g = random_signal(m, ctx.rng), random_signal(m, ctx.rng)
        for rep in young_reports(M, mu, f, g, cfg.suite.young_triples, cfg.tolerances.slack):
            out.append(_tag(rep, i, mu, M))
    return out


def suite_orthogonality(cfg: RunConfig) -> list[CheckReport]:
    ctx = _Context(cfg, "orthogonality")
    tol = cfg.tolerances
    out = []
    for i in range(cfg.suite.cases):
        mu, M = ctx.pick()
        m = ctx.measure(mu)
        psi = wv.preset_wavelet(cfg.wavelet, m)
        f = random_signal(m, ctx.rng, centered=True, matrix=M, order=2)
        g = random_signal(m, ctx.rng, centered=True, matrix=M, order=2)
        res = wv.orthogonality_check(M, mu, f, g, psi, ctx.scales)[2]
        out.append(_tag(closeness("orthogonality", res, tol.orthogonality), i, mu, M))
        fld = wv.analyze_spectral(M, mu, f, psi, ctx.scales)
        K = psi.plancherel_constant(M)
        planch = abs(fld.energy() - K * f.norm(2) ** 2) / (K * f.norm(2) ** 2)
        out.append(_tag(closeness("wavelet_plancherel", planch, tol.orthogonality), i, mu, M))
        rec = (wv.synthesize(M, mu, fld, psi) - f).norm(2) / f.norm(2)
        out.append(_tag(closeness("reconstruction", rec, tol.reconstruction), i, mu, M))
    return out


def suite_reproducing(cfg: RunConfig) -> list[CheckReport]:
    ctx = _Context(cfg, "reproducing")
    n = cfg.suite.kernel_points
    ts = np.geomspace(0.25, 4.0, n)
    xs = np.linspace(-4.0, 4.0, n)
    out = []
    for i in range(cfg.suite.cases):
        mu, M = ctx.pick()
        M2 = POOL_MATRICES[int(ctx.rng.integers(len(POOL_MATRICES)))]
        m = ctx.measure(mu)
        psi = wv.preset_wavelet(cfg.wavelet, m)
        tab = wv.reproducing_kernel(M, M2, mu, psi, ts, xs)
        rep = inequality("kernel_bound", float(np.abs(tab.entries).max()), tab.bound, 1e-9,
                         M2=matrix_label(M2), violations=tab.violations())
        out.append(_tag(rep, i, mu, M))
        f = random_signal(m, ctx.rng, centered=True, matrix=M, order=2)
        t2, x2 = float(ctx.rng.choice([0.5, 1.0, 2.0])), float(ctx.rng.uniform(-2.0, 2.0))
        err = wv.reproduction_check(M, M, mu, f, psi, t2, x2, ctx.scales)[2]
        out.append(_tag(closeness("reproduction", err, cfg.tolerances.reproduction,
                                  t=t2, x=x2), i, mu, M))
    return out


def uncertainty_draws(cfg: RunConfig, count: int | None = None):
    ctx = _Context(cfg, "uncertainty")
    draws = []
    for _ in range(cfg.suite.draws if count is None else count):
        mu, M = ctx.pick()
        draws.append(random_draw(ctx.rng, mu, M))
    return draws


def run_draws(draws, grid, scales, slack) -> list[CheckReport]:
    """Run draws grouped by ``(mu, M)`` for kernel-cache reuse, reported in draw order."""
    results = {}
    key = lambda item: (item[1].mu, item[1].matrix.as_tuple())
    for _, group in groupby(sorted(enumerate(draws), key=key), key=key):
        for i, d in group:
            m = WeightedMeasure.build(d.mu, grid)
            results[i] = [_tag(r, i, d.mu, d.matrix) for r in run_draw(d, m, scales, slack)]
    return [r for i in range(len(draws)) for r in results[i]]


def suite_uncertainty(cfg: RunConfig) -> list[CheckReport]:
    return run_draws(uncertainty_draws(cfg), cfg.grid.build(), cfg.scales.build(),
                     cfg.tolerances.slack)


_RUNNERS = {
    "plancherel": suite_plancherel, "inversion": suite_inversion,
    "translation": suite_translation, "young": suite_young,
    "orthogonality": suite_orthogonality, "reproducing": suite_reproducing,
    "uncertainty": suite_uncertainty,
}


def run_suite(name: str, cfg: RunConfig) -> list[CheckReport]:
    if name == "all":
        return [r for s in SUITES for r in _RUNNERS[s](cfg)]
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; known: {list(SUITES) + ['all']}")
    return _RUNNERS[name](cfg)
