import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rtxy.model import ModelParams, Sector, branch_sqrt, momentum_grid, radicand


class TestModelParams:
    def test_valid(self):
        p = ModelParams(1.0, 2.0, 0.1, 8)
        assert p.dim == 256

    @pytest.mark.parametrize("n", [2, 3, 5, 7, 1_000_002])
    def test_bad_size(self, n):
        with pytest.raises(ValueError):
            ModelParams(1.0, 1.0, 0.0, n)

    def test_zero_coupling(self):
        with pytest.raises(ValueError):
            ModelParams(0.0, 1.0, 0.0, 4)


class TestMomentumGrid:
    def test_n4_even(self):
        ks = momentum_grid(4, Sector.EVEN)
        assert np.allclose(ks, [np.pi / 4, 3 * np.pi / 4, 5 * np.pi / 4, 7 * np.pi / 4])

    def test_n4_odd(self):
        ks = momentum_grid(4, Sector.ODD)
        assert np.allclose(ks, [0.0, np.pi / 2, np.pi, 3 * np.pi / 2])

    def test_n6_special_momenta(self):
        odd = momentum_grid(6, Sector.ODD)
        even = momentum_grid(6, Sector.EVEN)
        assert np.isclose(odd, 0.0).any() and np.isclose(odd, np.pi).any()
        assert not np.isclose(even, 0.0, atol=1e-12).any()
        assert not np.isclose(even, np.pi).any()

    @pytest.mark.parametrize("n", [4, 6, 8, 12, 30])
    @pytest.mark.parametrize("sector", [Sector.EVEN, Sector.ODD])
    def test_sorted_and_paired(self, n, sector):
        ks = momentum_grid(n, sector)
        assert len(ks) == n
        assert np.all(np.diff(ks) > 0)
        partners = np.mod(2 * np.pi - ks, 2 * np.pi)
        for p in partners:
            assert np.min(np.abs(ks - p)) < 1e-12

    @pytest.mark.parametrize("n", [4, 8, 30])
    def test_sectors_disjoint(self, n):
        both = np.concatenate([momentum_grid(n, s) for s in (Sector.EVEN, Sector.ODD)])
        assert len(np.unique(np.round(both, 12))) == 2 * n

    @pytest.mark.parametrize("n", [3, 2])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            momentum_grid(n, Sector.EVEN)


class TestBranchSqrt:
    def test_examples(self):
        assert branch_sqrt(2.0, np.pi / 2, 0.0) == pytest.approx(2.0)
        assert branch_sqrt(0.5, 0.0, 0.3) == pytest.approx(-0.5)
        assert branch_sqrt(0.0, np.pi / 2, 1.0) == pytest.approx(1.0j)

    def test_gamma_zero_signed(self):
        # below the band minimum the gamma = 0 branch keeps the sign
        for lam in (-0.5, 0.3, 0.99):
            k = np.pi / 3
            assert branch_sqrt(lam, k, 0.0) == pytest.approx(lam - np.cos(k))

    def test_vectorized(self):
        ks = momentum_grid(8, Sector.EVEN)
        d = branch_sqrt(1.2, ks, 0.7)
        assert d.shape == ks.shape

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(-3, 3, allow_nan=False),
        st.floats(0, 2 * np.pi, allow_nan=False),
        st.floats(-3, 3, allow_nan=False),
    )
    def test_square_recovers_radicand(self, lam, k, gamma):
        d = branch_sqrt(lam, k, gamma)
        r = radicand(lam, k, gamma)
        assert abs(d * d - r) <= 1e-14 * max(abs(r), 1.0)

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(-3, 3, allow_nan=False),
        st.floats(0, np.pi, allow_nan=False),
        st.floats(-3, 3, allow_nan=False),
    )
    def test_imaginary_branch_nonnegative(self, lam, k, gamma):
        d = complex(branch_sqrt(lam, k, gamma))
        if radicand(lam, k, gamma) < 0:
            assert d.real == 0.0 and d.imag >= 0.0
        else:
            assert d.imag == 0.0

    @pytest.mark.parametrize("lam,gamma", [(0.7, 0.4), (1.5, 1.1), (-0.2, 2.0)])
    def test_even_about_pi(self, lam, gamma):
        for k in np.linspace(0.1, np.pi - 0.1, 7):
            a = complex(branch_sqrt(lam, k, gamma))
            b = complex(branch_sqrt(lam, 2 * np.pi - k, gamma))
            assert a == pytest.approx(b, abs=1e-12)
