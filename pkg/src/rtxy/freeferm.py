"""Analytic free-fermion solution: modes, sector spectra, ground data.

Each parity sector is diagonalized by a complex Bogoliubov rotation of its
momentum modes.  A mode at momentum k carries energy

    eps(k) = -2 J D(lambda, k, gamma)

with D from model.branch_sqrt, except at the unpaired momenta k = 0, pi of
the odd sector where the pairing term is absent and the contribution is
-2 J (lambda - cos k) (n_k - 1/2) with no radical.  Many-body levels are
occupation sums over a sector's grid minus half the mode-energy sum; the
retained levels of a sector are those whose fermion parity matches it
(the Bogoliubov vacuum has even parity in both sectors, fixed once against
the dense oracle at the Hermitian point lambda = 2, gamma = 0).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import (
    EPS_EXCEPTIONAL,
    BOTH_SECTORS,
    ModelParams,
    Momentum,
    Sector,
    branch_sqrt,
    momentum_grid,
)
from .oracle import popcounts

N_MAX_SPECTRUM = 20
N_MAX_VECTOR = 16


class ModeKind(enum.Enum):
    PAIRED_REAL = "paired_real"
    PAIRED_IMAGINARY = "paired_imaginary"
    UNPAIRED = "unpaired"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class SingleParticleMode:
    """Bogoliubov data of one momentum: energy and half-angle coefficients.

    cos_half**2 + sin_half**2 = 1 holds as a complex identity for paired
    modes.  At an exceptional mode the rotation is defective; cos_half is
    normalized to 1 and sin_half holds the finite limit of tan(theta/2).
    Unpaired modes need no rotation (cos_half 1, sin_half 0).
    """

    momentum: Momentum
    epsilon: complex
    cos_half: complex
    sin_half: complex
    kind: ModeKind


def _is_unpaired(sector: Sector, index: int, n: int) -> bool:
    return sector is Sector.ODD and index in (0, n // 2)


def single_mode(params: ModelParams, k: Momentum) -> SingleParticleMode:
    """Solve one momentum of one sector."""
    j, lam, gamma = params.j, params.lam, params.gamma
    c = np.cos(k.value)
    if _is_unpaired(k.sector, k.index, params.n):
        eps = -2.0 * j * (lam - c)
        return SingleParticleMode(k, complex(eps), 1.0 + 0.0j, 0.0j, ModeKind.UNPAIRED)

    s = np.sin(k.value)
    rad = (lam - c) ** 2 - (gamma * s) ** 2
    d = branch_sqrt(lam, k.value, gamma)
    eps = -2.0 * j * d
    if abs(rad) <= EPS_EXCEPTIONAL:
        # defective rotation: keep the finite limit of tan(theta/2)
        tan_half = 1.0j * gamma * s / (d + (lam - c))
        return SingleParticleMode(k, complex(eps), 1.0 + 0.0j, tan_half, ModeKind.EXCEPTIONAL)

    cos_theta = (lam - c) / d
    sin_theta = 1.0j * gamma * s / d
    cos_half = np.sqrt((1.0 + cos_theta) / 2.0 + 0.0j)
    sin_half = sin_theta / (2.0 * cos_half)
    kind = ModeKind.PAIRED_REAL if rad > 0 else ModeKind.PAIRED_IMAGINARY
    return SingleParticleMode(k, complex(eps), complex(cos_half), complex(sin_half), kind)


def sector_modes(params: ModelParams, sector: Sector) -> list[SingleParticleMode]:
    ks = momentum_grid(params.n, sector)
    return [single_mode(params, Momentum(sector, m, float(k))) for m, k in enumerate(ks)]


def mode_energies(params: ModelParams, sector: Sector) -> np.ndarray:
    """eps(k) over the sector grid, pairing partners sharing one radical.

    Partner momenta k and 2 pi - k are evaluated from the same representative
    so their energies agree to the bit.
    """
    n = params.n
    j, lam, gamma = params.j, params.lam, params.gamma
    ks = momentum_grid(n, sector)
    eps = np.empty(n, dtype=complex)
    if sector is Sector.ODD:
        eps[0] = -2.0 * j * (lam - 1.0)
        eps[n // 2] = -2.0 * j * (lam + 1.0)
        reps = range(1, n // 2)
        partner = lambda m: n - m
    else:
        reps = range(0, n // 2)
        partner = lambda m: n - 1 - m
    for m in reps:
        e = -2.0 * j * branch_sqrt(lam, ks[m], gamma)
        eps[m] = e
        eps[partner(m)] = e
    return eps


@dataclass
class SectorLevels:
    """Retained many-body levels of one sector.

    occupations are bitmasks over the sector's momentum grid (bit m set means
    mode m occupied); exactly 2^(n-1) levels, those of fermion parity eta.
    """

    sector: Sector
    occupations: np.ndarray
    energies: np.ndarray


def sector_spectrum(params: ModelParams, sector: Sector) -> SectorLevels:
    n = params.n
    if n > N_MAX_SPECTRUM:
        raise ValueError(f"spectrum assembly limited to n <= {N_MAX_SPECTRUM}")
    eps = mode_energies(params, sector)
    dim = 1 << n
    idx = np.arange(dim)
    energies = np.full(dim, -0.5 * eps.sum(), dtype=complex)
    for m in range(n):
        energies[(idx >> m) & 1 == 1] += eps[m]
    keep = popcounts(n) % 2 == (0 if sector is Sector.EVEN else 1)
    return SectorLevels(sector, idx[keep], energies[keep])


def many_body_spectrum(params: ModelParams) -> np.ndarray:
    """All 2^n complex energies, both sectors' retained levels combined."""
    return np.concatenate(
        [sector_spectrum(params, s).energies for s in BOTH_SECTORS]
    )


@dataclass
class GroundLevel:
    energy: complex
    sector: Sector
    occupation: int
    is_complex: bool


def ground_state_level(params: ModelParams, im_tol: float = 1e-12) -> GroundLevel:
    """Level minimizing the real part; among ties, real energies first,
    then nonnegative imaginary part."""
    best = None
    for sector in BOTH_SECTORS:
        lv = sector_spectrum(params, sector)
        order = np.lexsort(
            (lv.energies.imag < 0, np.abs(lv.energies.imag), lv.energies.real)
        )
        i = order[0]
        cand = (lv.energies[i], sector, int(lv.occupations[i]))
        key = (cand[0].real, abs(cand[0].imag), cand[0].imag < 0)
        if best is None or key < best[1]:
            best = (cand, key)
    (energy, sector, occ), _ = best
    return GroundLevel(complex(energy), sector, occ, bool(abs(energy.imag) > im_tol))


def ground_state_energy(params: ModelParams) -> complex:
    return ground_state_level(params).energy


def real_gap(params: ModelParams) -> float:
    """Diagnostic: real-part gap between the two lowest levels."""
    re = np.sort(many_body_spectrum(params).real)
    return float(re[1] - re[0])


def vacuum_energy(params: ModelParams, sector: Sector) -> complex:
    """Energy -sum_k eps(k) / 2 of the Bogoliubov vacuum of one sector."""
    return complex(-0.5 * mode_energies(params, sector).sum())


def _apply_create_site(v: np.ndarray, site: int, pc: np.ndarray) -> np.ndarray:
    """w = c_site^dagger v with Jordan-Wigner sign from lower occupied bits."""
    idx = np.arange(v.shape[0])
    src = idx[(idx >> site) & 1 == 0]
    sign = 1.0 - 2.0 * (pc[src & ((1 << site) - 1)] % 2)
    w = np.zeros_like(v)
    w[src | (1 << site)] = sign * v[src]
    return w


def _apply_create_momentum(v: np.ndarray, k: float, n: int, pc: np.ndarray) -> np.ndarray:
    """w = c_k^dagger v = N^(-1/2) sum_j e^(ikj) c_j^dagger v."""
    w = np.zeros_like(v)
    for site in range(n):
        w += np.exp(1.0j * k * site) * _apply_create_site(v, site, pc)
    return w / np.sqrt(n)


def ground_state_vector(params: ModelParams, sector: Sector) -> np.ndarray:
    """Bogoliubov vacuum of one sector in the 2^n site-occupation basis.

    Product over momentum pairs 0 < k < pi of
    [cos(theta/2) + i sin(theta/2) c_k^dag c_{-k}^dag] on the fermion vacuum;
    unpaired momenta of the odd sector stay empty.  The result is an exact
    eigenvector of the sector Hamiltonian with eigenvalue
    vacuum_energy(params, sector); it is not normalized.
    """
    n = params.n
    if n > N_MAX_VECTOR:
        raise ValueError(f"state vectors limited to n <= {N_MAX_VECTOR}")
    pc = popcounts(n)
    ks = momentum_grid(n, sector)
    modes = {
        m: single_mode(params, Momentum(sector, m, float(ks[m]))) for m in range(n)
    }
    v = np.zeros(1 << n, dtype=complex)
    v[0] = 1.0
    reps = range(1, n // 2) if sector is Sector.ODD else range(0, n // 2)
    for m in reps:
        mode = modes[m]
        k = ks[m]
        paired = _apply_create_momentum(
            _apply_create_momentum(v, -k, n, pc), k, n, pc
        )
        v = mode.cos_half * v + 1.0j * mode.sin_half * paired
    return v
