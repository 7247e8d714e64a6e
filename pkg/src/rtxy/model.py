"""Model parameters, parity sectors, momentum grids and shared numeric conventions.

The chain couples N spins on a ring through an anisotropic XY exchange with
an imaginary anisotropy gamma and a transverse field lambda (both in units
of the overall coupling J).  Everything downstream (free-fermion solution,
phase map, Hermitian counterpart) is built on the two momentum grids of the
fermion-parity sectors and on one fixed branch of the square root

    D(lambda, k, gamma) = sqrt((lambda - cos k)^2 - gamma^2 sin^2 k)

chosen so that D is the plain signed value lambda - cos k at gamma = 0 and
continuous in gamma until the radicand changes sign.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

# Width of the exceptional band, applied to the radicand of D.  Double
# precision leaves ~1e-16 of rounding in cos/sin; 1e-10 is comfortably above.
EPS_EXCEPTIONAL = 1e-10

N_MAX_ANALYTIC = 1_000_000


class Sector(enum.IntEnum):
    """Fermion-parity sector; the integer value is the sign eta."""

    EVEN = +1
    ODD = -1

    @property
    def eta(self) -> int:
        return int(self)

    @property
    def label(self) -> str:
        return "+" if self is Sector.EVEN else "-"


BOTH_SECTORS = (Sector.EVEN, Sector.ODD)


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the chain: energy scale j, field lam, anisotropy gamma, size n.

    n must be even and at least 4 (n = 2 would double-count the single bond
    of the periodic ring).  Matrix-based paths restrict n further; purely
    analytic paths accept n up to N_MAX_ANALYTIC.
    """

    j: float
    lam: float
    gamma: float
    n: int

    def __post_init__(self):
        if self.n % 2 != 0:
            raise ValueError(f"site count must be even, got n={self.n}")
        if self.n < 4:
            raise ValueError(f"site count must be at least 4, got n={self.n}")
        if self.n > N_MAX_ANALYTIC:
            raise ValueError(f"site count {self.n} exceeds {N_MAX_ANALYTIC}")
        if self.j == 0:
            raise ValueError("coupling j must be nonzero")

    @property
    def dim(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class Momentum:
    """One grid momentum: sector, integer index m, and value k in [0, 2pi)."""

    sector: Sector
    index: int
    value: float


def momentum_grid(n: int, sector: Sector) -> np.ndarray:
    """Momenta of one parity sector, ascending in [0, 2pi).

    Even sector: k = 2 pi (m + 1/2) / n (half-integer grid, no k = 0 or pi).
    Odd sector:  k = 2 pi m / n         (integer grid, contains 0 and pi).
    """
    if n % 2 != 0 or n < 4:
        raise ValueError(f"need even n >= 4, got n={n}")
    m = np.arange(n)
    if sector is Sector.EVEN:
        return 2.0 * np.pi * (m + 0.5) / n
    return 2.0 * np.pi * m / n


def momenta(n: int, sector: Sector) -> list[Momentum]:
    """momentum_grid wrapped into Momentum records."""
    ks = momentum_grid(n, sector)
    return [Momentum(sector, m, float(k)) for m, k in enumerate(ks)]


def radicand(lam, k, gamma):
    """(lambda - cos k)^2 - gamma^2 sin^2 k; negative inside the broken region."""
    return (lam - np.cos(k)) ** 2 - (gamma * np.sin(k)) ** 2


def branch_sqrt(lam, k, gamma):
    """Continued square root D of the radicand.  Works elementwise on arrays.

    For nonnegative radicand D is real and carries the sign of lambda - cos k
    (so D(lambda, k, 0) = lambda - cos k exactly); for negative radicand D is
    purely imaginary with nonnegative imaginary part.
    """
    delta = lam - np.cos(k)
    r = delta**2 - (gamma * np.sin(k)) ** 2
    pos = np.sqrt(np.maximum(r, 0.0))
    neg = np.sqrt(np.maximum(-r, 0.0))
    sign = np.where(delta >= 0.0, 1.0, -1.0)
    out = np.where(r >= 0.0, sign * pos + 0.0j, 1.0j * neg)
    if np.ndim(out) == 0:
        return complex(out)
    return out
