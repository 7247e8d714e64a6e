"""RT phase classification, finite-size phase boundary, hyperbola convergence.

A parameter point is broken when some grid momentum k satisfies
|lambda - cos k| < |gamma sin k| strictly; equality (within the exceptional
band on the radicand) marks an exceptional point.  Momenta with
gamma sin k = 0 carry no pairing and can certify neither: the line
gamma = 0 and the unpaired momenta k = 0, pi are always outside the broken
region, even where the radicand happens to vanish.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import (
    EPS_EXCEPTIONAL,
    BOTH_SECTORS,
    ModelParams,
    Momentum,
    Sector,
    momentum_grid,
)


class PhaseClass(enum.Enum):
    UNBROKEN = "unbroken"
    BROKEN = "broken"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class PhasePoint:
    lam: float
    gamma: float
    n: int
    classification: PhaseClass
    witness: Momentum | None = None


def classify(params: ModelParams) -> PhasePoint:
    """Classify one parameter point by scanning both momentum grids."""
    lam, gamma, n = params.lam, params.gamma, params.n
    exceptional_witness = None
    for sector in BOTH_SECTORS:
        ks = momentum_grid(n, sector)
        pairing = (gamma * np.sin(ks)) ** 2
        rad = (lam - np.cos(ks)) ** 2 - pairing
        active = pairing > EPS_EXCEPTIONAL
        broken = active & (rad < -EPS_EXCEPTIONAL)
        if broken.any():
            m = int(np.argmax(broken))
            return PhasePoint(
                lam, gamma, n, PhaseClass.BROKEN, Momentum(sector, m, float(ks[m]))
            )
        exact = active & (np.abs(rad) <= EPS_EXCEPTIONAL)
        if exceptional_witness is None and exact.any():
            m = int(np.argmax(exact))
            exceptional_witness = Momentum(sector, m, float(ks[m]))
    if exceptional_witness is not None:
        return PhasePoint(lam, gamma, n, PhaseClass.EXCEPTIONAL, exceptional_witness)
    return PhasePoint(lam, gamma, n, PhaseClass.UNBROKEN, None)


def critical_lambda(n: int, gamma: float, tol: float = 1e-6, j: float = 1.0) -> float:
    """Smallest unbroken lambda at fixed gamma, by bisection on classify.

    Bisection runs on [1, sqrt(1 + gamma^2) + 1] to absolute tolerance tol;
    the returned value is always classified unbroken.
    """
    if gamma == 0:
        raise ValueError("critical_lambda needs gamma != 0")

    def unbroken(lam: float) -> bool:
        point = classify(ModelParams(j, lam, gamma, n))
        return point.classification is PhaseClass.UNBROKEN

    lo = 1.0
    hi = float(np.sqrt(1.0 + gamma * gamma) + 1.0)
    if unbroken(lo):
        return lo
    if not unbroken(hi):
        raise RuntimeError(f"no unbroken bracket endpoint at lambda={hi}, gamma={gamma}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if unbroken(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _max_workers() -> int:
    cap = os.environ.get("RTXY_THREADS")
    workers = os.cpu_count() or 1
    if cap:
        workers = max(1, min(workers, int(cap)))
    return workers


def grid_scan(
    n: int,
    lambda_range: tuple[float, float],
    gamma_range: tuple[float, float],
    resolution: int,
    j: float = 1.0,
) -> list[list[PhasePoint]]:
    """Row-major classification grid: rows over gamma, columns over lambda.

    Rows are classified in a worker pool (RTXY_THREADS caps its size) and
    collected in deterministic order.
    """
    lams = np.linspace(lambda_range[0], lambda_range[1], resolution)
    gams = np.linspace(gamma_range[0], gamma_range[1], resolution)

    def row(gamma: float) -> list[PhasePoint]:
        return [classify(ModelParams(j, float(lam), float(gamma), n)) for lam in lams]

    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        return list(pool.map(row, gams))


@dataclass
class BoundaryCurve:
    """Finite-size phase boundary lambda_c(gamma) on a gamma grid."""

    n: int
    gamma_grid: np.ndarray
    lambda_c: np.ndarray


def boundary_curve(n: int, gamma_grid) -> BoundaryCurve:
    gammas = np.asarray(gamma_grid, dtype=float)
    crit = np.array([critical_lambda(n, float(g)) for g in gammas])
    return BoundaryCurve(n, gammas, crit)


def hyperbola_deviation(n: int, gamma_grid) -> float:
    """Max distance of the finite-size boundary from sqrt(1 + gamma^2)."""
    curve = boundary_curve(n, gamma_grid)
    return float(np.max(np.abs(curve.lambda_c - np.sqrt(1.0 + curve.gamma_grid**2))))
