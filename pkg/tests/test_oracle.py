import numpy as np
import pytest

from rtxy import oracle
from rtxy.matching import greedy_match_distance
from rtxy.model import ModelParams, Sector


def test_gamma_zero_hermitian_real_spectrum():
    h = oracle.build_hamiltonian(ModelParams(1.0, 2.0, 0.0, 4))
    assert np.max(np.abs(h - h.conj().T)) < 1e-14
    ev = oracle.dense_eigenvalues(h)
    assert ev.max_abs_imag < 1e-12
    assert np.min(ev.eigenvalues.real) == pytest.approx(-8.0, abs=1e-12)


def test_traceless():
    h = oracle.build_hamiltonian(ModelParams(1.0, 2.0, 0.1, 4))
    assert abs(np.trace(h)) < 1e-12


@pytest.mark.parametrize("lam,gamma,n", [(0.5, 0.5, 4), (2.0, 0.1, 6), (0.0, 2.0, 4)])
def test_complex_symmetric(lam, gamma, n):
    h = oracle.build_hamiltonian(ModelParams(1.0, lam, gamma, n))
    assert np.max(np.abs(h - h.T)) == 0.0


def test_nonhermitian_when_gamma_nonzero():
    h = oracle.build_hamiltonian(ModelParams(1.0, 0.5, 0.5, 4))
    assert np.max(np.abs(h - h.conj().T)) > 0.1


def test_identity_eigenvalues():
    ev = oracle.dense_eigenvalues(np.eye(16, dtype=complex))
    assert np.allclose(ev.eigenvalues, 1.0)


def test_conjugate_paired_multiset_and_charpoly():
    # broken point away from exceptional momenta, where the solver's
    # eigenvalues are well conditioned
    h = oracle.build_hamiltonian(ModelParams(1.0, 0.4, 0.6, 4))
    ev = oracle.dense_eigenvalues(h).eigenvalues
    assert greedy_match_distance(ev, np.conj(ev)) < 1e-10
    # cross-check the solver against direct determinant evaluation
    for z in (3.0 + 1.0j, -2.5 + 0.4j, 0.1 - 5.0j):
        det = np.linalg.det(z * np.eye(h.shape[0]) - h)
        prod = np.prod(z - ev)
        assert abs(det - prod) <= 1e-8 * abs(det)


def test_h_infinity_antihermitian_imaginary():
    h = oracle.build_h_infinity(ModelParams(1.0, 0.7, 1.3, 6))
    assert np.max(np.abs(h.conj().T + h)) == 0.0
    ev = oracle.dense_eigenvalues(h).eigenvalues
    assert np.max(np.abs(ev.real)) < 1e-10
    assert greedy_match_distance(ev, -ev) < 1e-10


class TestRotation:
    def test_two_site_entries(self):
        d = oracle.rotation_diagonal(2)
        assert d[0b00] == pytest.approx(-1.0j)   # both spins up
        assert d[0b01] == pytest.approx(1.0)     # one up one down
        assert d[0b11] == pytest.approx(1.0j)    # both down

    def test_unitary(self):
        d = oracle.rotation_diagonal(6)
        assert np.allclose(np.abs(d), 1.0)

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_fourth_power(self, n):
        d = oracle.rotation_diagonal(n)
        s = n - 2 * oracle.popcounts(n)
        assert np.allclose(d**4, np.exp(-1.0j * np.pi * s))

    def test_matrix_shape(self):
        r = oracle.build_rotation(4)
        assert r.shape == (16, 16)
        assert np.allclose(r, np.diag(np.diag(r)))


class TestParityStructure:
    @pytest.mark.parametrize("lam,gamma", [(2.0, 0.1), (0.5, 0.5), (0.0, 2.0)])
    def test_off_parity_blocks_vanish(self, lam, gamma):
        params = ModelParams(1.0, lam, gamma, 6)
        h = oracle.build_hamiltonian(params)
        even, odd = oracle.parity_indices(params.n)
        assert np.max(np.abs(h[np.ix_(even, odd)])) == 0.0
        assert np.max(np.abs(h[np.ix_(odd, even)])) == 0.0

    def test_blocks_reassemble(self):
        params = ModelParams(1.0, 1.3, 0.4, 4)
        h = oracle.build_hamiltonian(params)
        he, ho = oracle.parity_filter(h)
        even, odd = oracle.parity_indices(params.n)
        rebuilt = np.zeros_like(h)
        rebuilt[np.ix_(even, even)] = he
        rebuilt[np.ix_(odd, odd)] = ho
        assert np.array_equal(rebuilt, h)
        assert he.shape == (8, 8) and ho.shape == (8, 8)

    @pytest.mark.parametrize("sector", [Sector.EVEN, Sector.ODD])
    @pytest.mark.parametrize("lam,gamma", [(2.0, 0.1), (0.5, 0.5), (0.0, 2.0)])
    def test_sector_hamiltonian_matches_spin_blocks(self, sector, lam, gamma):
        # the spin matrix restricted to parity eta equals the fermion
        # Hamiltonian with the corresponding boundary twist
        params = ModelParams(1.0, lam, gamma, 6)
        h = oracle.build_hamiltonian(params)
        hs = oracle.build_sector_hamiltonian(params, sector)
        even, odd = oracle.parity_indices(params.n)
        sel = even if sector is Sector.EVEN else odd
        assert np.max(np.abs(h[np.ix_(sel, sel)] - hs[np.ix_(sel, sel)])) == 0.0


def test_apply_and_residual():
    h = oracle.build_hamiltonian(ModelParams(1.0, 2.0, 0.0, 4))
    w, v = np.linalg.eigh(h)
    assert np.allclose(oracle.apply(h, v[:, 0]), w[0] * v[:, 0], atol=1e-10)
    assert oracle.residual(h, v[:, 0], w[0]) < 1e-12
    assert oracle.residual(h, v[:, 0], w[0] + 1.0) > 0.5


def test_size_guard():
    with pytest.raises(ValueError):
        oracle.build_hamiltonian(ModelParams(1.0, 1.0, 0.0, 18))
