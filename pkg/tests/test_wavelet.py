import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lcdwt import lcdt, wavelet as wv
from lcdwt.errors import AdmissibilityError, ParameterError
from lcdwt.quadrature import (SampledSignal, WeightedMeasure, build_grid, build_log_grid,
                              inner_product, weighted_measure)
from lcdwt.signals import random_mixture, random_signal, zero_mean
from lcdwt.special import DUNKL, SL2Matrix, dunkl_kernel
from lcdwt.translation import dunkl_translate_table
from lcdwt.verify import POOL_MATRICES

from oracles import gauss

MUS = (-0.5, 0.0, 0.5, 1.0)
SMALL_SCALES = build_log_grid(0.5, 2.0, 5)


@pytest.fixture(scope="module")
def ms():
    return {mu: weighted_measure(mu) for mu in MUS}


def centred(m, seed, M=None):
    return random_signal(m, np.random.default_rng(seed), centered=True, matrix=M, order=2)


class TestDilate:
    def test_unit_scale(self, ms):
        psi = wv.preset_wavelet("mexican-hat", ms[0.0])
        assert wv.dilate(1.0, psi) is psi.signal

    @pytest.mark.parametrize("mu", MUS)
    @pytest.mark.parametrize("t", [0.5, 2.0])
    def test_l2_preserved(self, ms, mu, t):
        psi = wv.preset_wavelet("dunkl-hermite", ms[mu]).signal
        assert wv.dilate(t, psi).norm(2) == pytest.approx(psi.norm(2), rel=1e-7)

    def test_l1_scaling(self, ms):
        psi = wv.preset_wavelet("dunkl-hermite", ms[0.5]).signal
        assert wv.dilate(2.0, psi).norm(1) == pytest.approx(2 ** 1.5 * psi.norm(1), rel=1e-6)

    @pytest.mark.parametrize("t", [0.0, -1.0, math.nan])
    def test_invalid(self, ms, t):
        with pytest.raises(ParameterError):
            wv.dilate(t, wv.preset_wavelet("mexican-hat", ms[0.0]))


class TestFamily:
    def test_dunkl_matrix_has_no_chirp(self, ms):
        psi = wv.preset_wavelet("mexican-hat", ms[0.5])
        member = wv.family_member(DUNKL, 0.5, 1.5, 0.7, psi).values
        classical = dunkl_translate_table(0.5, [0.7], wv.dilate(1.5, psi))[0]
        assert np.array_equal(member.values, classical)

    def test_unit_scale_origin(self, ms):
        psi = wv.preset_wavelet("dunkl-hermite", ms[0.0])
        member = wv.family_member(DUNKL, 0.0, 1.0, 0.0, psi).values
        assert (member - psi.signal).norm() / psi.norm() < 1e-9

    @pytest.mark.parametrize("mu", MUS)
    @pytest.mark.parametrize("M", POOL_MATRICES)
    def test_member_spectrum(self, ms, mu, M):
        psi = wv.preset_wavelet("dunkl-hermite", ms[mu])
        lam = np.linspace(-4, 4, 17)
        a, b, d = M.a, M.b, M.d
        for t, x in ((0.5, -1.0), (1.0, 0.8), (2.0, 0.3)):
            member = wv.family_member(M, mu, t, x, psi).values
            lhs = lcdt.forward_at(M, mu, member, lam)
            rhs = (t ** (mu + 1) * np.exp(0.5j * d / b * lam ** 2) * np.exp(0.5j * a / b * x * x)
                   * np.exp(-0.5j * d / b * (t * lam) ** 2) * dunkl_kernel(mu, lam / b, x)
                   * wv.window_spectrum_direct(M, mu, psi, t * lam))
            assert np.abs(lhs - rhs).max() < 1e-5 * np.abs(rhs).max()

    @pytest.mark.parametrize("M", [DUNKL, POOL_MATRICES[2], POOL_MATRICES[4]])
    def test_norm_chain(self, ms, M):
        mu = 0.5
        psi = wv.preset_wavelet("mexican-hat", ms[mu])
        for t in (0.5, 1.0, 2.0):
            for x in (-2.0, 0.0, 1.5):
                lc = wv.family_member(M, mu, t, x, psi).values.norm()
                plain = wv.family_member(DUNKL, mu, t, x, psi).values.norm()
                assert lc == pytest.approx(plain, rel=1e-12)
                assert lc <= psi.norm() * (1 + 1e-6)

    def test_needs_b(self, ms):
        with pytest.raises(ParameterError):
            wv.family_table(SL2Matrix(1, 0, 0, 1), 0.0, 1.0, [0.0],
                            wv.preset_wavelet("mexican-hat", ms[0.0]))

    @pytest.mark.parametrize("M", POOL_MATRICES)
    def test_window_spectrum_routes(self, ms, M):
        psi = wv.preset_wavelet("mexican-hat", ms[1.0])
        s = np.linspace(-5, 5, 41)
        fast = wv.window_spectrum(M, 1.0, psi, s)
        slow = wv.window_spectrum_direct(M, 1.0, psi, s)
        assert np.abs(fast - slow).max() < 1e-10


class TestAdmissibility:
    @pytest.mark.parametrize("mu", MUS)
    @pytest.mark.parametrize("M", POOL_MATRICES)
    def test_dunkl_hermite_constant(self, ms, mu, M):
        # |D psi(s)| = s exp(-s^2/2), so C = int s exp(-s^2) ds = 1/2
        psi = wv.preset_wavelet("dunkl-hermite", ms[mu])
        assert wv.admissibility_constant(M, mu, psi) == pytest.approx(0.5, rel=1e-8)

    @pytest.mark.parametrize("mu", MUS)
    @pytest.mark.parametrize("M", [DUNKL, POOL_MATRICES[4]])
    def test_mexican_hat_constant(self, ms, mu, M):
        # |D psi(s)| = s^2 exp(-s^2/2) / (2mu+2), so C = 1 / (8 (mu+1)^2)
        psi = wv.preset_wavelet("mexican-hat", ms[mu])
        assert wv.admissibility_constant(M, mu, psi) == pytest.approx(1 / (8 * (mu + 1) ** 2),
                                                                      rel=1e-8)

    @pytest.mark.parametrize("lam", [0.5, 2.0])
    def test_lambda_invariance(self, ms, lam):
        psi = wv.preset_wavelet("dunkl-hermite", ms[0.5])
        M = POOL_MATRICES[1]
        c1 = wv.admissibility_integral(M, 0.5, psi)
        assert wv.admissibility_integral(M, 0.5, psi, lam=lam) == pytest.approx(c1, rel=1e-4)

    def test_gaussian_rejected(self, ms):
        psi = wv.preset_wavelet("gaussian", ms[0.0])
        with pytest.raises(AdmissibilityError, match="non-admissible"):
            wv.admissibility_constant(DUNKL, 0.0, psi)
        assert not psi.is_admissible(DUNKL)
        lo = wv.ADMISSIBILITY_RANGE[0]
        c = wv.admissibility_integral(DUNKL, 0.0, psi, xi_min=lo)
        c_half = wv.admissibility_integral(DUNKL, 0.0, psi, xi_min=lo / 2)
        # |D psi(0)| = 1, so halving the cutoff adds log 2
        assert c_half - c == pytest.approx(math.log(2), rel=1e-3)

    def test_plancherel_constant(self, ms):
        psi = wv.preset_wavelet("dunkl-hermite", ms[-0.5])
        assert psi.plancherel_constant(DUNKL) == pytest.approx(2 * math.pi * 0.5, rel=1e-8)
        psi = wv.preset_wavelet("dunkl-hermite", ms[1.0])
        assert psi.plancherel_constant(DUNKL) == pytest.approx(wv.plancherel_factor(1.0) * 0.5,
                                                               rel=1e-8)

    def test_admissibility_needs_b(self, ms):
        with pytest.raises(ParameterError):
            wv.admissibility_integral(SL2Matrix(1, 0, 0, 1), 0.0,
                                      wv.preset_wavelet("mexican-hat", ms[0.0]))

    def test_unknown_preset(self, ms):
        with pytest.raises(ParameterError):
            wv.preset_wavelet("morlet", ms[0.0])


class TestAnalyze:
    def test_zero_signal(self, ms):
        psi = wv.preset_wavelet("mexican-hat", ms[0.0])
        f = SampledSignal.zeros(ms[0.0])
        assert not np.any(wv.analyze(DUNKL, 0.0, f, psi, SMALL_SCALES).values)
        assert not np.any(wv.analyze_spectral(DUNKL, 0.0, f, psi, SMALL_SCALES).values)

    @pytest.mark.parametrize("M", [DUNKL, POOL_MATRICES[1], POOL_MATRICES[3]])
    def test_cauchy_schwarz_bound(self, ms, M):
        mu = 0.5
        psi = wv.preset_wavelet("dunkl-hermite", ms[mu])
        f = random_signal(ms[mu], np.random.default_rng(5))
        fld = wv.analyze_spectral(M, mu, f, psi)
        assert np.abs(fld.values).max() <= f.norm() * psi.norm() * (1 + 1e-6)

    @pytest.mark.parametrize("M", [POOL_MATRICES[2], POOL_MATRICES[3]])
    def test_routes_agree(self, ms, M):
        mu = 0.0
        psi = wv.preset_wavelet("mexican-hat", ms[mu])
        f = random_signal(ms[mu], np.random.default_rng(9))
        a = wv.analyze(M, mu, f, psi, SMALL_SCALES)
        b = wv.analyze_spectral(M, mu, f, psi, SMALL_SCALES)
        assert np.sqrt(a.with_values(a.values - b.values).energy() / b.energy()) < 1e-5

    def test_linear_in_signal_antilinear_in_wavelet(self, ms):
        mu, M = 0.5, POOL_MATRICES[1]
        m = ms[mu]
        rng = np.random.default_rng(3)
        f, g = random_signal(m, rng), random_signal(m, rng)
        psi = wv.preset_wavelet("mexican-hat", m)
        alpha = 1.5 - 0.5j
        lhs = wv.analyze_spectral(M, mu, alpha * f + g, psi, SMALL_SCALES).values
        rhs = (alpha * wv.analyze_spectral(M, mu, f, psi, SMALL_SCALES).values
               + wv.analyze_spectral(M, mu, g, psi, SMALL_SCALES).values)
        assert np.abs(lhs - rhs).max() < 1e-12 * np.abs(rhs).max()
        scaled = wv.MotherWavelet(alpha * psi.signal)
        lhs = wv.analyze(M, mu, f, scaled, SMALL_SCALES).values
        rhs = np.conj(alpha) * wv.analyze(M, mu, f, psi, SMALL_SCALES).values
        assert np.abs(lhs - rhs).max() < 1e-12 * np.abs(rhs).max()

    @pytest.mark.parametrize("M", [POOL_MATRICES[1], POOL_MATRICES[4]])
    def test_chirp_bridge(self, ms, M):
        mu = 0.0
        psi = wv.preset_wavelet("dunkl-hermite", ms[mu])
        f = random_signal(ms[mu], np.random.default_rng(14))
        lc = wv.analyze(M, mu, f, psi, SMALL_SCALES)
        classical = wv.analyze_dunkl(mu, wv.lc_chirp_signal(M, f), psi, SMALL_SCALES)
        x = lc.positions.nodes
        bridged = np.exp(-0.5j * M.a / M.b * x * x)[None, :] * classical.values
        assert np.abs(lc.values - bridged).max() < 1e-6 * np.abs(lc.values).max()

    def test_non_admissible_flag(self, ms):
        psi = wv.preset_wavelet("gaussian", ms[0.0])
        fld = wv.analyze_spectral(DUNKL, 0.0, SampledSignal.from_function(ms[0.0], gauss()), psi,
                                  SMALL_SCALES)
        assert not fld.admissible
        with pytest.raises(ParameterError):
            wv.synthesize(DUNKL, 0.0, fld, psi)

    def test_grid_mismatch(self, ms):
        psi = wv.preset_wavelet("mexican-hat", ms[0.0])
        f = SampledSignal.from_function(weighted_measure(0.0, 10.0), gauss())
        with pytest.raises(ParameterError):
            wv.analyze(DUNKL, 0.0, f, psi, SMALL_SCALES)

    def test_field_shape_checked(self, ms):
        with pytest.raises(ParameterError):
            wv.CoefficientField(SMALL_SCALES, ms[0.0], np.zeros((2, 2)), DUNKL, 0.0)

    def test_coefficients_at_matches_field(self, ms):
        mu, M = 1.0, POOL_MATRICES[3]
        psi = wv.preset_wavelet("mexican-hat", ms[mu])
        f = random_signal(ms[mu], np.random.default_rng(2))
        fld = wv.analyze_spectral(M, mu, f, psi, SMALL_SCALES)
        row = wv.coefficients_at(M, mu, f, psi, SMALL_SCALES.nodes[2])
        assert np.allclose(row.values, fld.values[2], rtol=0, atol=1e-13)


class TestPlancherelOrthogonality:
    @pytest.mark.parametrize("mu", MUS)
    @pytest.mark.parametrize("M", [DUNKL, POOL_MATRICES[2], POOL_MATRICES[4]])
    def test_plancherel_centred(self, ms, mu, M):
        psi = wv.preset_wavelet("mexican-hat", ms[mu])
        f = centred(ms[mu], 21, M)
        assert wv.plancherel_residual(M, mu, f, psi) < 5e-3

    def test_zero_partner(self, ms):
        psi = wv.preset_wavelet("mexican-hat", ms[0.0])
        f = centred(ms[0.0], 1)
        lhs, rhs, _ = wv.orthogonality_check(DUNKL, 0.0, f, SampledSignal.zeros(ms[0.0]), psi)
        assert lhs == 0 and rhs == 0

    @pytest.mark.parametrize("mu", [0.5, 1.0])
    def test_distinct_gaussians(self, mu):
        # plain Gaussians keep a non-zero mean; at mu >= 1/2 the spectral weight
        # near the origin is small enough for the default scale range
        rows = []
        for grid, scales in ((build_grid(12, 48, 16), wv.default_scale_grid()),
                             (build_grid(12, 96, 16), build_log_grid(1 / 32, 32, 127))):
            m = WeightedMeasure.build(mu, grid)
            psi = wv.preset_wavelet("mexican-hat", m)
            f = SampledSignal.from_function(m, gauss(0.5, 0.8))
            g = SampledSignal.from_function(m, gauss(-0.4, 1.0))
            rows.append(wv.orthogonality_check(POOL_MATRICES[1], mu, f, g, psi, scales)[2])
        assert rows[0] < 1e-2
        assert rows[1] < 2e-3

    def test_plain_gaussian_truncation_at_minus_half(self):
        # the band |xi| < 1/t_max, invisible to the scale grid, holds ~10% of
        # the energy of a plain Gaussian at mu = -1/2
        m = weighted_measure(-0.5)
        psi = wv.preset_wavelet("mexican-hat", m)
        f = SampledSignal.from_function(m, gauss(0.5, 0.8))
        assert wv.plancherel_residual(DUNKL, -0.5, f, psi) > 0.05

    def test_dunkl_hermite_small_scale_truncation(self, ms):
        psi = wv.preset_wavelet("dunkl-hermite", ms[0.0])
        f = centred(ms[0.0], 4)
        res = [wv.plancherel_residual(DUNKL, 0.0, f, psi, build_log_grid(lo, 16, 80))
               for lo in (1 / 8, 1 / 16, 1 / 32)]
        assert res[0] > res[1] > res[2]


class TestSynthesize:
    @pytest.mark.parametrize("mu", MUS)
    @pytest.mark.parametrize("M", [DUNKL, POOL_MATRICES[1], POOL_MATRICES[3]])
    def test_round_trip(self, ms, mu, M):
        psi = wv.preset_wavelet("mexican-hat", ms[mu])
        f = centred(ms[mu], 31, M)
        fld = wv.analyze_spectral(M, mu, f, psi)
        assert (wv.synthesize(M, mu, fld, psi) - f).norm() / f.norm() < 1e-2

    def test_zero_field(self, ms):
        psi = wv.preset_wavelet("mexican-hat", ms[0.0])
        fld = wv.analyze_spectral(DUNKL, 0.0, SampledSignal.zeros(ms[0.0]), psi, SMALL_SCALES)
        assert not np.any(wv.synthesize(DUNKL, 0.0, fld, psi).values)

    def test_routes_agree(self, ms):
        mu, M = 0.5, POOL_MATRICES[2]
        psi = wv.preset_wavelet("mexican-hat", ms[mu])
        f = centred(ms[mu], 2, M)
        fld = wv.analyze_spectral(M, mu, f, psi, build_log_grid(0.25, 2.0, 8))
        a = wv.synthesize(M, mu, fld, psi, route="direct")
        b = wv.synthesize(M, mu, fld, psi, route="spectral")
        assert (a - b).norm() / b.norm() < 1e-5

    def test_errors(self, ms):
        psi = wv.preset_wavelet("mexican-hat", ms[0.0])
        fld = wv.analyze_spectral(DUNKL, 0.0, centred(ms[0.0], 1), psi, SMALL_SCALES)
        with pytest.raises(ParameterError):
            wv.synthesize(POOL_MATRICES[1], 0.0, fld, psi)
        with pytest.raises(ParameterError):
            wv.synthesize(DUNKL, 0.0, fld, psi, route="fft")


class TestReproducingKernel:
    def test_bound_and_diagonal(self, ms):
        mu = 0.0
        psi = wv.preset_wavelet("mexican-hat", ms[mu])
        ts, xs = np.array([0.5, 1.0, 2.0]), np.array([-1.0, 0.0, 1.5])
        tab = wv.reproducing_kernel(DUNKL, DUNKL, mu, psi, ts, xs)
        assert tab.entries.shape == (3, 3, 3, 3)
        assert tab.violations() == 0
        K = psi.plancherel_constant(DUNKL)
        for i, t in enumerate(ts):
            for j, x in enumerate(xs):
                diag = tab.entries[i, j, i, j]
                member = wv.family_member(DUNKL, mu, t, x, psi).values
                assert abs(diag.imag) < 1e-14
                assert diag.real == pytest.approx(member.norm() ** 2 / K, rel=1e-12)

    def test_mixed_matrices_bound(self, ms):
        psi = wv.preset_wavelet("dunkl-hermite", ms[1.0])
        tab = wv.reproducing_kernel(POOL_MATRICES[1], POOL_MATRICES[3], 1.0, psi,
                                    np.geomspace(0.25, 4, 5), np.linspace(-3, 3, 5))
        assert tab.violations() == 0
        assert tab.bound == pytest.approx(psi.norm() ** 2 / psi.plancherel_constant(POOL_MATRICES[1]))

    @pytest.mark.parametrize("M, M2", [(DUNKL, DUNKL), (POOL_MATRICES[1], POOL_MATRICES[3])])
    def test_reproduction(self, ms, M, M2):
        mu = 0.5
        psi = wv.preset_wavelet("mexican-hat", ms[mu])
        f = centred(ms[mu], 17, M)
        _, _, err = wv.reproduction_check(M, M2, mu, f, psi, 1.0, 0.6)
        assert err < 1e-2
