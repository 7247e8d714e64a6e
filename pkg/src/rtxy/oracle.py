"""Brute-force ground truth on the full 2^N Fock space.

Dense complex matrices are assembled directly from Pauli / fermion actions
on bit-indexed basis states: bit j of a basis index is the fermion
occupation of site j (spin-down), little endian, site 0 in the least
significant bit.  Sign bookkeeping of fermion operators reduces to
popcounts of lower bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams, Sector

N_MAX_DENSE = 16
DIM_MAX_EIG = 1 << 14


def popcounts(n: int) -> np.ndarray:
    """Table of popcount(b) for b = 0 .. 2^n - 1."""
    p = np.zeros(1 << n, dtype=np.int64)
    idx = np.arange(1 << n)
    for j in range(n):
        p += (idx >> j) & 1
    return p


def parity_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis indices with even / odd fermion number."""
    p = popcounts(n)
    idx = np.arange(1 << n)
    even = idx[p % 2 == 0]
    odd = idx[p % 2 == 1]
    return even, odd


def _check_size(n: int):
    if n > N_MAX_DENSE:
        raise ValueError(f"dense operators limited to n <= {N_MAX_DENSE}, got {n}")


def build_hamiltonian(params: ModelParams) -> np.ndarray:
    """Spin matrix J sum_j [(1+ig)/2 XX + (1-ig)/2 YY + lam Z], periodic ring.

    Complex symmetric for all parameters; Hermitian iff gamma = 0.
    """
    _check_size(params.n)
    n, dim = params.n, params.dim
    j, lam, gamma = params.j, params.lam, params.gamma
    idx = np.arange(dim)
    h = np.zeros((dim, dim), dtype=complex)

    cxx = j * (1.0 + 1.0j * gamma) / 2.0
    cyy = j * (1.0 - 1.0j * gamma) / 2.0
    for site in range(n):
        site2 = (site + 1) % n
        mask = (1 << site) | (1 << site2)
        flipped = idx ^ mask
        # X_s X_s2 flips both bits with no sign; Y_s Y_s2 adds i^2 and the
        # two (1 - 2 b) factors of sigma^y.
        zz = (1.0 - 2.0 * ((idx >> site) & 1)) * (1.0 - 2.0 * ((idx >> site2) & 1))
        h[flipped, idx] += cxx - cyy * zz

    p = popcounts(n)
    h[idx, idx] += j * lam * (n - 2.0 * p)
    return h


def build_h_infinity(params: ModelParams) -> np.ndarray:
    """Large-anisotropy limit i J gamma / 2 sum_j (XX - YY); anti-Hermitian."""
    _check_size(params.n)
    n, dim = params.n, params.dim
    idx = np.arange(dim)
    h = np.zeros((dim, dim), dtype=complex)
    c = 1.0j * params.j * params.gamma / 2.0
    for site in range(n):
        site2 = (site + 1) % n
        mask = (1 << site) | (1 << site2)
        flipped = idx ^ mask
        zz = (1.0 - 2.0 * ((idx >> site) & 1)) * (1.0 - 2.0 * ((idx >> site2) & 1))
        h[flipped, idx] += c * (1.0 + zz)
    return h


def rotation_diagonal(n: int) -> np.ndarray:
    """Diagonal of the global pi/2 spin rotation about z.

    Entry for configuration b is exp(-i pi/4 sum_j s_j) with s_j = +1 on
    spin-up (empty) and -1 on spin-down (occupied) sites.
    """
    _check_size(n)
    s_total = n - 2 * popcounts(n)
    return np.exp(-0.25j * np.pi * s_total)


def build_rotation(n: int) -> np.ndarray:
    """rotation_diagonal as a dense matrix."""
    return np.diag(rotation_diagonal(n))


def build_sector_hamiltonian(params: ModelParams, sector: Sector) -> np.ndarray:
    """Quadratic fermion Hamiltonian of one parity sector, on the full Fock space.

    Bulk bonds carry hopping J and pairing i gamma J; the wrap bond carries
    the extra factor -eta.  Restricted to states of parity eta this equals
    the spin matrix of build_hamiltonian; on the full space it is the
    operator diagonalized by the sector's momentum grid.
    """
    _check_size(params.n)
    n, dim = params.n, params.dim
    j, lam, gamma = params.j, params.lam, params.gamma
    idx = np.arange(dim)
    p = popcounts(n)
    h = np.zeros((dim, dim), dtype=complex)

    for site in range(n):
        site2 = (site + 1) % n
        b1 = (idx >> site) & 1
        b2 = (idx >> site2) & 1
        mask = (1 << site) | (1 << site2)
        flipped = idx ^ mask
        if site2 == 0:
            # wrap bond: coefficient -eta, and the Jordan-Wigner string of
            # c_{n-1}(dagger), c_0(dagger) spans the whole chain interior
            coeff = -sector.eta * j * np.where(p % 2 == 1, 1.0, -1.0)
        else:
            coeff = j * np.ones(dim)
        hop = b1 != b2
        h[flipped[hop], idx[hop]] += coeff[hop]
        pair = b1 == b2
        h[flipped[pair], idx[pair]] += 1.0j * gamma * coeff[pair]

    h[idx, idx] += -2.0 * j * lam * p + n * j * lam
    return h


@dataclass
class SpectrumReport:
    """All eigenvalues of a dense matrix plus solver error summaries."""

    eigenvalues: np.ndarray
    max_residual: float
    max_abs_imag: float


def dense_eigenvalues(m: np.ndarray) -> SpectrumReport:
    """Full eigenvalue multiset of a dense complex matrix (LAPACK zgeev).

    max_residual is the solver's backward-error bound dim * eps * ||M||_F.
    Non-convergence raises with diagnostics instead of dropping eigenvalues.
    """
    dim = m.shape[0]
    if dim > DIM_MAX_EIG:
        raise ValueError(f"dense eigensolver limited to dim <= {DIM_MAX_EIG}, got {dim}")
    try:
        ev = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as err:
        raise RuntimeError(f"eigensolver failed to converge on dim={dim}: {err}") from err
    if ev.shape[0] != dim:
        raise RuntimeError(f"eigensolver returned {ev.shape[0]} of {dim} eigenvalues")
    bound = dim * np.finfo(float).eps * float(np.linalg.norm(m))
    return SpectrumReport(ev, bound, float(np.max(np.abs(ev.imag))))


def apply(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    return m @ v


def residual(m: np.ndarray, v: np.ndarray, energy: complex) -> float:
    """Relative eigenpair defect ||M v - E v|| / ||v||."""
    return float(np.linalg.norm(m @ v - energy * v) / np.linalg.norm(v))


def parity_filter(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Even- and odd-parity diagonal blocks of m (each 2^(n-1) square)."""
    n = int(round(np.log2(m.shape[0])))
    even, odd = parity_indices(n)
    return m[np.ix_(even, even)], m[np.ix_(odd, odd)]
