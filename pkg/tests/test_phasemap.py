import math
import os

import numpy as np
import pytest

from rtxy import freeferm, oracle, phasemap
from rtxy.model import ModelParams, Sector
from rtxy.phasemap import PhaseClass, classify, critical_lambda, grid_scan, hyperbola_deviation


class TestClassify:
    @pytest.mark.parametrize("n", [4, 8, 30])
    def test_gamma_zero_unbroken(self, n):
        point = classify(ModelParams(1.0, 0.5, 0.0, n))
        assert point.classification is PhaseClass.UNBROKEN

    def test_broken_with_witness(self):
        point = classify(ModelParams(1.0, 0.0, 1.0, 4))
        assert point.classification is PhaseClass.BROKEN
        assert point.witness is not None
        assert point.witness.sector is Sector.ODD
        assert point.witness.value == pytest.approx(np.pi / 2)
        lam, gam, k = point.lam, point.gamma, point.witness.value
        assert abs(lam - np.cos(k)) < abs(gam * np.sin(k))

    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_strong_field_unbroken(self, n):
        assert classify(ModelParams(1.0, 2.0, 0.1, n)).classification is PhaseClass.UNBROKEN

    def test_exceptional_point(self):
        # boundary touch at k = pi/4 for gamma = 1, N = 4
        point = classify(ModelParams(1.0, math.sqrt(2.0), 1.0, 4))
        assert point.classification is PhaseClass.EXCEPTIONAL

    def test_unpaired_momenta_never_certify(self):
        # at lambda = 1 the k = 0 radicand vanishes for every gamma, which
        # must not create exceptional or broken verdicts on its own
        assert classify(ModelParams(1.0, 1.0, 0.0, 8)).classification is PhaseClass.UNBROKEN
        assert classify(ModelParams(1.0, 0.0, 0.0, 4)).classification is PhaseClass.UNBROKEN

    @pytest.mark.parametrize("lam,gamma,n", [(0.7, 0.9, 6), (1.3, 0.4, 8)])
    def test_gamma_sign_symmetry(self, lam, gamma, n):
        a = classify(ModelParams(1.0, lam, gamma, n)).classification
        b = classify(ModelParams(1.0, lam, -gamma, n)).classification
        assert a is b

    @pytest.mark.parametrize("lam,gamma", [(0.7, 0.9), (1.3, 0.4), (0.2, 1.6)])
    @pytest.mark.parametrize("n", [4, 8])
    def test_field_sign_symmetry_n_mod_4(self, lam, gamma, n):
        a = classify(ModelParams(1.0, lam, gamma, n)).classification
        b = classify(ModelParams(1.0, -lam, gamma, n)).classification
        assert a is b

    @pytest.mark.parametrize("lam", [0.3, 0.9, 1.7])
    @pytest.mark.parametrize("gamma", [0.4, 1.1, 1.8])
    @pytest.mark.parametrize("n", [4, 6])
    def test_consistent_with_spectra(self, lam, gamma, n):
        params = ModelParams(1.0, lam, gamma, n)
        broken = classify(params).classification is PhaseClass.BROKEN
        analytic = np.max(np.abs(freeferm.many_body_spectrum(params).imag)) > 1e-8
        ev = np.linalg.eigvals(oracle.build_hamiltonian(params))
        dense = np.max(np.abs(ev.imag)) > 1e-8
        assert broken == analytic == dense


class TestCriticalLambda:
    def test_large_n_hits_hyperbola(self):
        assert critical_lambda(2000, 1.0) == pytest.approx(math.sqrt(2.0), abs=2e-6)

    def test_small_gamma_returns_one(self):
        assert critical_lambda(16, 1e-7) == 1.0

    def test_gamma_zero_rejected(self):
        with pytest.raises(ValueError):
            critical_lambda(8, 0.0)

    def test_regression_fixtures(self):
        # frozen from the first run of this implementation
        assert critical_lambda(4, 1.0) == pytest.approx(1.4142138324, abs=1e-6)
        assert critical_lambda(4, 0.5) == pytest.approx(1.0606605431, abs=1e-6)

    def test_result_is_unbroken_and_close_to_broken(self):
        crit = critical_lambda(8, 0.8)
        assert classify(ModelParams(1.0, crit, 0.8, 8)).classification is PhaseClass.UNBROKEN
        below = classify(ModelParams(1.0, crit - 1e-4, 0.8, 8)).classification
        assert below is not PhaseClass.UNBROKEN

    @pytest.mark.parametrize("n", [4, 8])
    def test_monotone_in_gamma(self, n):
        gammas = np.linspace(0.25, 2.0, 8)
        crits = [critical_lambda(n, g) for g in gammas]
        assert all(crits[i + 1] >= crits[i] - 1e-6 for i in range(len(crits) - 1))


def test_hyperbola_deviation_decreases_with_n():
    gammas = np.linspace(0.25, 2.0, 8)
    d4 = hyperbola_deviation(4, gammas)
    d8 = hyperbola_deviation(8, gammas)
    d30 = hyperbola_deviation(30, gammas)
    assert d30 < d8 < d4


class TestGridScan:
    def test_shape_and_order(self):
        grid = grid_scan(4, (0.0, 2.0), (0.0, 1.0), 5)
        assert len(grid) == 5 and len(grid[0]) == 5
        assert grid[0][0].lam == 0.0 and grid[0][0].gamma == 0.0
        assert grid[0][-1].lam == 2.0
        assert grid[-1][0].gamma == 1.0

    def test_deterministic_under_thread_cap(self):
        before = os.environ.get("RTXY_THREADS")
        try:
            os.environ["RTXY_THREADS"] = "2"
            a = grid_scan(4, (0.0, 2.0), (0.0, 2.0), 7)
            os.environ["RTXY_THREADS"] = "1"
            b = grid_scan(4, (0.0, 2.0), (0.0, 2.0), 7)
        finally:
            if before is None:
                os.environ.pop("RTXY_THREADS", None)
            else:
                os.environ["RTXY_THREADS"] = before
        flat_a = [p.classification for row in a for p in row]
        flat_b = [p.classification for row in b for p in row]
        assert flat_a == flat_b


def test_boundary_curve_invariants():
    gammas = np.linspace(0.25, 2.0, 8)
    curve = phasemap.boundary_curve(8, gammas)
    assert np.all(curve.lambda_c >= 1.0)
    assert np.all(np.diff(curve.lambda_c) >= -1e-6)
