"""Hermitian counterpart: coupling tables, spin matrices, spectra, gradients.

In the unbroken region the chain shares its real spectrum with a Hermitian
isotropic XY model whose coupling between sites at separation d is

    kappa_eta(d) = (J/N) sum_k D(lambda, k, gamma) cos(k d)

summed over the momentum grid of sector eta.  Separations are plain site
differences 0 .. N-1; the boundary structure of each sector is carried by
the values themselves (kappa_-(N-d) = kappa_-(d) on the periodic grid,
kappa_+(N-d) = -kappa_+(d) on the antiperiodic one), so the spin assembly
never wraps a string around the ring.  For strong fields the table collapses
to four closed-form couplings kappa(0..3) in nu = gamma^2 / lambda^2, and
the counterpart reduces to a nearest-neighbor XY chain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .freeferm import mode_energies
from .matching import greedy_match_distance
from .model import BOTH_SECTORS, ModelParams, Sector, branch_sqrt, momentum_grid
from .oracle import parity_indices, popcounts
from .phasemap import PhaseClass, classify

N_MAX_COUNTERPART = 14
IMAG_RESIDUE_TOL = 1e-12


@dataclass
class CouplingTable:
    """Real counterpart couplings of one sector, per separation d in [0, N-1]."""

    n: int
    sector: Sector
    kappa: np.ndarray
    valid: bool


def _require_unbroken(params: ModelParams, what: str):
    cls = classify(params).classification
    if cls is not PhaseClass.UNBROKEN:
        raise ValueError(f"{what} needs an unbroken point, got {cls.value} at "
                         f"(lambda={params.lam}, gamma={params.gamma}, n={params.n})")


def kappa_table(params: ModelParams, sector: Sector) -> CouplingTable:
    """All exact couplings of one sector at once."""
    _require_unbroken(params, "kappa_table")
    n = params.n
    ks = momentum_grid(n, sector)
    d_vals = branch_sqrt(params.lam, ks, params.gamma)
    if np.max(np.abs(d_vals.imag)) > IMAG_RESIDUE_TOL:
        raise ValueError("complex single-particle radical on an unbroken point")
    seps = np.arange(n)
    kappa = params.j * (np.cos(np.outer(seps, ks)) @ d_vals.real) / n
    return CouplingTable(n, sector, kappa, True)


def kappa_exact(params: ModelParams, sector: Sector, d: int) -> float:
    """(J/N) sum_k D(lambda, k, gamma) cos(k d) for one separation."""
    _require_unbroken(params, "kappa_exact")
    ks = momentum_grid(params.n, sector)
    d_vals = branch_sqrt(params.lam, ks, params.gamma)
    if np.max(np.abs(np.asarray(d_vals).imag)) > IMAG_RESIDUE_TOL:
        raise ValueError("complex single-particle radical on an unbroken point")
    return float(params.j * np.sum(np.asarray(d_vals).real * np.cos(ks * d)) / params.n)


def kappa_approx(params: ModelParams, order: int) -> float:
    """Strong-field closed forms in nu = gamma^2 / lambda^2, orders 0..3."""
    if params.lam == 0:
        raise ValueError("kappa_approx needs lambda != 0")
    if order not in (0, 1, 2, 3):
        raise ValueError(f"order must be 0..3, got {order}")
    j, lam = params.j, params.lam
    nu = (params.gamma / lam) ** 2
    if order == 0:
        return (1.0 - nu / 4.0) * lam * j
    if order == 1:
        return -0.5 * j * (1.0 + nu / 8.0)
    if order == 2:
        return nu * lam * j / 8.0
    return nu * j / 16.0


def build_counterpart_spin(params: ModelParams, table: CouplingTable) -> np.ndarray:
    """Spin matrix of one sector's counterpart on the full 2^n space.

    Long-range flip-flop terms dressed by z-strings between the endpoints,
    amplitude -2 kappa(m - l) per ordered pair, plus the field kappa(0) on
    each tau^z.  Hermitian whenever the table is real.
    """
    if params.n > N_MAX_COUNTERPART:
        raise ValueError(f"counterpart matrices limited to n <= {N_MAX_COUNTERPART}")
    if not table.valid or table.n != params.n:
        raise ValueError("invalid coupling table")
    n = params.n
    dim = 1 << n
    idx = np.arange(dim)
    pc = popcounts(n)
    h = np.zeros((dim, dim), dtype=complex)
    kappa = table.kappa

    for l in range(n):
        for m in range(l + 1, n):
            t = -2.0 * kappa[m - l]
            if t == 0.0:
                continue
            mask = (1 << l) | (1 << m)
            between = ((1 << m) - 1) ^ ((1 << (l + 1)) - 1)
            sel = ((idx >> l) & 1) != ((idx >> m) & 1)
            src = idx[sel]
            sign = 1.0 - 2.0 * (pc[src & between] % 2)
            h[src ^ mask, src] += t * sign
    h[idx, idx] += kappa[0] * (n - 2.0 * pc)
    return h


def counterpart_hamiltonian(params: ModelParams) -> np.ndarray:
    """Both sector counterparts glued along fermion parity.

    Even-parity block from the even sector's matrix, odd block from the odd
    one; the assembled Hermitian matrix carries the counterpart spectrum.
    """
    h = np.zeros((params.dim, params.dim), dtype=complex)
    even, odd = parity_indices(params.n)
    for sector, sel in ((Sector.EVEN, even), (Sector.ODD, odd)):
        block = build_counterpart_spin(params, kappa_table(params, sector))
        h[np.ix_(sel, sel)] = block[np.ix_(sel, sel)]
    return h


def build_reduced_xy(params: ModelParams) -> np.ndarray:
    """Nearest-neighbor XY ring from the order-0/1 closed-form couplings."""
    if params.n > N_MAX_COUNTERPART:
        raise ValueError(f"counterpart matrices limited to n <= {N_MAX_COUNTERPART}")
    k0 = kappa_approx(params, 0)
    k1 = kappa_approx(params, 1)
    n = params.n
    dim = 1 << n
    idx = np.arange(dim)
    pc = popcounts(n)
    h = np.zeros((dim, dim), dtype=complex)
    for site in range(n):
        site2 = (site + 1) % n
        mask = (1 << site) | (1 << site2)
        sel = ((idx >> site) & 1) != ((idx >> site2) & 1)
        h[idx[sel] ^ mask, idx[sel]] += -2.0 * k1
    h[idx, idx] += k0 * (n - 2.0 * pc)
    return h


def counterpart_spectrum(params: ModelParams) -> np.ndarray:
    """All 2^n real counterpart levels, assembled from the mode energies.

    Occupation sums minus half the mode sum, keeping the levels whose
    d-fermion parity matches the sector.
    """
    _require_unbroken(params, "counterpart_spectrum")
    n = params.n
    dim = 1 << n
    idx = np.arange(dim)
    parity = popcounts(n) % 2
    out = []
    for sector in BOTH_SECTORS:
        eps = mode_energies(params, sector)
        if np.max(np.abs(eps.imag)) > IMAG_RESIDUE_TOL:
            raise ValueError("complex mode energy on an unbroken point")
        energies = np.full(dim, -0.5 * eps.real.sum())
        for m in range(n):
            energies[(idx >> m) & 1 == 1] += eps.real[m]
        out.append(energies[parity == (0 if sector is Sector.EVEN else 1)])
    return np.concatenate(out)


def compare_spectra(a, b) -> float:
    """Greedy matched distance between two spectra, symmetrized over argument
    order (see matching)."""
    return max(greedy_match_distance(a, b), greedy_match_distance(b, a))


@dataclass(frozen=True)
class KappaGradient:
    d: int
    d_lambda: float
    d_gamma: float

    @property
    def magnitude(self) -> float:
        return float(np.hypot(self.d_lambda, self.d_gamma))


def kappa_gradient(params: ModelParams, sector: Sector, d: int) -> KappaGradient:
    """(lambda, gamma) gradient of kappa_eta(d).

    (J/N) sum_k cos(k d) [(lambda - cos k) e1 - gamma sin^2 k e2] / D; the
    unpaired momenta differentiate the signed linear branch directly
    (contribution e1 alone).
    """
    _require_unbroken(params, "kappa_gradient")
    n = params.n
    j, lam, gamma = params.j, params.lam, params.gamma
    ks = momentum_grid(n, sector)
    c, s = np.cos(ks), np.sin(ks)
    unpaired = np.zeros(n, dtype=bool)
    if sector is Sector.ODD:
        unpaired[0] = unpaired[n // 2] = True
    dd = np.asarray(branch_sqrt(lam, ks, gamma))
    if np.max(np.abs(dd.imag[~unpaired])) > IMAG_RESIDUE_TOL:
        raise ValueError("complex single-particle radical on an unbroken point")
    w = np.cos(ks * d)
    g1 = np.where(unpaired, 1.0, (lam - c) / np.where(unpaired, 1.0, dd.real))
    g2 = np.where(unpaired, 0.0, -gamma * s**2 / np.where(unpaired, 1.0, dd.real))
    return KappaGradient(d, float(j * np.sum(w * g1) / n), float(j * np.sum(w * g2) / n))


@dataclass(frozen=True)
class DivergenceSample:
    delta: float
    magnitude: float
    sector: Sector
    dominant_k: float
    dominant_term: float
    k_c_distance: float


def divergence_probe(n: int, gamma: float, deltas, j: float = 1.0) -> list[DivergenceSample]:
    """|grad kappa(0)| along lambda = sqrt(1 + gamma^2) + delta.

    For each delta the stronger sector's gradient magnitude is reported
    together with the momentum dominating the sum and its distance to
    k_c = arccos(1 / lambda_c), where the boundary touches the hyperbola.
    """
    lam_c = float(np.sqrt(1.0 + gamma * gamma))
    k_c = float(np.arccos(1.0 / lam_c))
    samples = []
    for delta in deltas:
        lam = lam_c + float(delta)
        params = ModelParams(j, lam, gamma, n)
        best = None
        for sector in BOTH_SECTORS:
            grad = kappa_gradient(params, sector, 0)
            if best is None or grad.magnitude > best[0].magnitude:
                best = (grad, sector)
        grad, sector = best
        ks = momentum_grid(n, sector)
        c, s = np.cos(ks), np.sin(ks)
        dd = np.asarray(branch_sqrt(lam, ks, gamma))
        term = np.hypot(lam - c, gamma * s**2) / np.maximum(np.abs(dd), 1e-300) / n
        if sector is Sector.ODD:
            term[0] = term[n // 2] = 1.0 / n
        m = int(np.argmax(term))
        k_dom = float(ks[m])
        dist = min(abs(k_dom - k_c), abs(2.0 * np.pi - k_dom - k_c))
        samples.append(
            DivergenceSample(float(delta), grad.magnitude, sector, k_dom,
                             float(j * term[m]), dist)
        )
    return samples
