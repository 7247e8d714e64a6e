"""Exact solver for the non-Hermitian anisotropic XY chain with RT symmetry."""

from .counterpart import (
    compare_spectra,
    counterpart_spectrum,
    kappa_approx,
    kappa_exact,
    kappa_gradient,
)
from .freeferm import (
    ground_state_energy,
    ground_state_vector,
    many_body_spectrum,
    sector_spectrum,
    single_mode,
)
from .model import (
    EPS_EXCEPTIONAL,
    BOTH_SECTORS,
    ModelParams,
    Momentum,
    Sector,
    branch_sqrt,
    momentum_grid,
)
from .phasemap import PhaseClass, classify, critical_lambda
from .symmetry import ground_state_rt_verdict, rt_apply

__all__ = [
    "EPS_EXCEPTIONAL",
    "BOTH_SECTORS",
    "ModelParams",
    "Momentum",
    "Sector",
    "PhaseClass",
    "branch_sqrt",
    "momentum_grid",
    "single_mode",
    "sector_spectrum",
    "many_body_spectrum",
    "ground_state_energy",
    "ground_state_vector",
    "classify",
    "critical_lambda",
    "ground_state_rt_verdict",
    "rt_apply",
    "kappa_exact",
    "kappa_approx",
    "kappa_gradient",
    "counterpart_spectrum",
    "compare_spectra",
]

__version__ = "0.1.0"
