"""Acceptance suite: ten numbered criteria, each returning a pass/fail record.

Every criterion runs at its stated tolerance; nothing is calibrated at run
time.  Three checks are expected to fail for documented numerical reasons
(see notes in the individual functions): dense eigensolvers split defective
eigenvalues at exceptional points by roughly the square root of machine
epsilon (criterion 1), momentum grids with N divisible by 8 hit the
gamma = 1 boundary momentum exactly (criterion 4's monotonicity), and the
gradient magnitude near the boundary grows logarithmically plus a
1/N-suppressed inverse square root rather than doubling per decade
(criterion 9's ratio clause).  The failures are reported, not masked.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import counterpart, freeferm, oracle, phasemap, symmetry
from .matching import greedy_match_distance
from .model import BOTH_SECTORS, ModelParams, Sector
from .phasemap import PhaseClass

GRID_SIZES = (4, 6, 8)
GRID_VALUES = np.linspace(0.0, 2.0, 5)
SEED = 20240811


@dataclass
class CriterionResult:
    index: int
    name: str
    passed: bool
    details: str
    elapsed: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.index}: {self.name} -- {self.details}"


def _grid_points():
    for n in GRID_SIZES:
        for lam in GRID_VALUES:
            for gam in GRID_VALUES:
                yield ModelParams(1.0, float(lam), float(gam), n)


def criterion_1_oracle_equivalence() -> CriterionResult:
    """Analytic spectra match dense oracle eigenvalues to 1e-8 on the grid.

    Expected red: the points with gamma = lambda (and (0, 1) for N = 4, 8)
    are exact exceptional points where the matrix is defective; any
    backward-stable solver's eigenvalues there carry O(sqrt(eps)) forward
    error.  Non-defective points match to ~1e-13.
    """
    tol = 1e-8
    worst = 0.0
    worst_at = None
    clean_worst = 0.0
    offenders = []
    for params in _grid_points():
        ev = oracle.dense_eigenvalues(oracle.build_hamiltonian(params)).eigenvalues
        d = counterpart.compare_spectra(freeferm.many_body_spectrum(params), ev)
        cls = phasemap.classify(params).classification
        if d > worst:
            worst, worst_at = d, (params.n, params.lam, params.gamma)
        if cls is PhaseClass.EXCEPTIONAL or _has_exact_exceptional_mode(params):
            if d > tol:
                offenders.append((params.n, params.lam, params.gamma, d))
        else:
            clean_worst = max(clean_worst, d)
    passed = worst <= tol
    details = (f"max matched distance {worst:.3e} at n={worst_at[0]} "
               f"(lambda={worst_at[1]}, gamma={worst_at[2]}); tolerance {tol:.0e}; "
               f"max over non-defective points {clean_worst:.3e}; "
               f"{len(offenders)} defective points over tolerance")
    return CriterionResult(1, "oracle equivalence", passed, details,
                           data={"worst": worst, "clean_worst": clean_worst,
                                 "defective_offenders": offenders})


def _has_exact_exceptional_mode(params: ModelParams) -> bool:
    from .model import EPS_EXCEPTIONAL, momentum_grid

    for sector in BOTH_SECTORS:
        ks = momentum_grid(params.n, sector)
        pairing = (params.gamma * np.sin(ks)) ** 2
        rad = (params.lam - np.cos(ks)) ** 2 - pairing
        if np.any((pairing > EPS_EXCEPTIONAL) & (np.abs(rad) <= EPS_EXCEPTIONAL)):
            return True
    return False


def criterion_2_rt_symmetry() -> CriterionResult:
    """RT commutation on random draws; sign-flip relations and imaginary
    spectrum of the large-anisotropy limit."""
    tol_defect = 1e-12
    tol_re = 1e-10
    rng = np.random.default_rng(SEED)
    worst_comm = 0.0
    worst_anti = 0.0
    for _ in range(20):
        n = int(rng.choice([4, 6, 8, 10]))
        params = ModelParams(float(rng.uniform(0.5, 2.0)),
                             float(rng.uniform(0.0, 3.0)),
                             float(rng.uniform(0.0, 3.0)), n)
        worst_comm = max(worst_comm, symmetry.rt_commutation_defect(
            oracle.build_hamiltonian(params)))
        hinf = oracle.build_h_infinity(
            ModelParams(params.j, params.lam, max(params.gamma, 0.1), n))
        worst_anti = max(worst_anti, symmetry.antisymmetry_defect(hinf))
        worst_comm = max(worst_comm, symmetry.rt_commutation_defect(hinf))
    worst_re = 0.0
    worst_pair = 0.0
    for n in (4, 6, 8, 10):
        hinf = oracle.build_h_infinity(ModelParams(1.0, 1.0, 1.3, n))
        ev = oracle.dense_eigenvalues(hinf).eigenvalues
        worst_re = max(worst_re, float(np.max(np.abs(ev.real))))
        worst_pair = max(worst_pair, greedy_match_distance(ev, -ev))
    passed = (worst_comm <= tol_defect and worst_anti <= tol_defect
              and worst_re <= tol_re and worst_pair <= tol_re)
    details = (f"commutation defect {worst_comm:.2e}, sign-flip defect "
               f"{worst_anti:.2e} (tol {tol_defect:.0e}); max|Re E| {worst_re:.2e}, "
               f"E<->-E pairing {worst_pair:.2e} (tol {tol_re:.0e})")
    return CriterionResult(2, "RT symmetry and imaginary limit", passed, details,
                           data={"commutation": worst_comm, "antisym": worst_anti,
                                 "max_re": worst_re, "pairing": worst_pair})


def criterion_3_reality_unbroken() -> CriterionResult:
    """Unbroken grid points have real spectra (1e-8), gamma = 0 points 1e-12."""
    worst_unbroken = 0.0
    worst_gamma0 = 0.0
    for params in _grid_points():
        cls = phasemap.classify(params).classification
        analytic_im = float(np.max(np.abs(freeferm.many_body_spectrum(params).imag)))
        if params.gamma == 0.0 or cls is PhaseClass.UNBROKEN:
            ev = oracle.dense_eigenvalues(oracle.build_hamiltonian(params)).eigenvalues
            im = max(analytic_im, float(np.max(np.abs(ev.imag))))
            if params.gamma == 0.0:
                worst_gamma0 = max(worst_gamma0, im)
            if cls is PhaseClass.UNBROKEN:
                worst_unbroken = max(worst_unbroken, im)
    passed = worst_unbroken <= 1e-8 and worst_gamma0 <= 1e-12
    details = (f"max|Im E| on unbroken points {worst_unbroken:.2e} (tol 1e-08), "
               f"on gamma=0 points {worst_gamma0:.2e} (tol 1e-12)")
    return CriterionResult(3, "real spectrum in unbroken region", passed, details,
                           data={"unbroken": worst_unbroken, "gamma0": worst_gamma0})


def criterion_4_hyperbola_convergence() -> CriterionResult:
    """Boundary at gamma = 1 approaches sqrt(2) as N grows.

    Expected red on monotonicity: the grids of N = 8, 16, 64 contain the
    touching momentum pi/4 exactly, so their deviations sit at the bisection
    tolerance while N = 30 (which misses pi/4 by 3 degrees) is ~2e-3.
    """
    sizes = (8, 16, 30, 64)
    target = float(np.sqrt(2.0))
    devs = [abs(phasemap.critical_lambda(n, 1.0) - target) for n in sizes]
    monotone = all(devs[i] >= devs[i + 1] for i in range(len(devs) - 1))
    final_ok = devs[-1] <= 0.05
    passed = monotone and final_ok
    details = ("deviations " + ", ".join(f"N={n}: {d:.3e}" for n, d in zip(sizes, devs))
               + f"; monotone={monotone}, N=64 under 0.05: {final_ok}")
    return CriterionResult(4, "hyperbola convergence", passed, details,
                           data={"sizes": list(sizes), "deviations": devs})


def criterion_5_gamma_zero_exclusion() -> CriterionResult:
    """The line gamma = 0 is never broken (100 lambdas, N in {4, 8, 30})."""
    bad = []
    for n in (4, 8, 30):
        for lam in np.linspace(0.0, 3.0, 100):
            cls = phasemap.classify(ModelParams(1.0, float(lam), 0.0, n)).classification
            if cls is not PhaseClass.UNBROKEN:
                bad.append((n, float(lam), cls.value))
    passed = not bad
    details = f"{300 - len(bad)}/300 points unbroken" + (f"; offenders {bad[:5]}" if bad else "")
    return CriterionResult(5, "gamma = 0 exclusion", passed, details, data={"bad": bad})


def criterion_6_counterpart_identity() -> CriterionResult:
    """Counterpart spectrum equals the chain spectrum at (2, 0.1); the
    assembled spin matrix reproduces the analytic counterpart levels."""
    tol = 1e-8
    worst_vs_h = 0.0
    worst_vs_matrix = 0.0
    for n in GRID_SIZES:
        params = ModelParams(1.0, 2.0, 0.1, n)
        ev_h = oracle.dense_eigenvalues(oracle.build_hamiltonian(params)).eigenvalues
        cs = counterpart.counterpart_spectrum(params)
        worst_vs_h = max(worst_vs_h, counterpart.compare_spectra(cs, ev_h))
        ev_c = np.linalg.eigvalsh(counterpart.counterpart_hamiltonian(params))
        worst_vs_matrix = max(worst_vs_matrix, counterpart.compare_spectra(ev_c, cs))
    passed = worst_vs_h <= tol and worst_vs_matrix <= tol
    details = (f"counterpart vs chain {worst_vs_h:.3e}, spin matrix vs analytic "
               f"{worst_vs_matrix:.3e} (tol {tol:.0e})")
    return CriterionResult(6, "counterpart identity", passed, details,
                           data={"vs_h": worst_vs_h, "vs_matrix": worst_vs_matrix})


def truncation_bound(params: ModelParams) -> float:
    """Operator-norm bound on the reduced-model truncation error.

    The reduced ring's parity sectors carry the alias-consistent
    nearest-neighbor couplings (the wrap separation N-1 aliases to -kappa(1)
    on the antiperiodic grid, +kappa(1) on the periodic one).  Each coupling
    difference dk(d) contributes at most 2 |dk(d)| per site pair, the field
    difference N |dk(0)|; eigenvalue shifts are bounded by the total.
    """
    n = params.n
    k0, k1 = counterpart.kappa_approx(params, 0), counterpart.kappa_approx(params, 1)
    bound = 0.0
    for sector in BOTH_SECTORS:
        exact = counterpart.kappa_table(params, sector).kappa
        trunc = np.zeros(n)
        trunc[0], trunc[1] = k0, k1
        trunc[n - 1] = -k1 if sector is Sector.EVEN else k1
        dk = np.abs(exact - trunc)
        b = n * dk[0] + sum(2.0 * (n - d) * dk[d] for d in range(1, n))
        bound = max(bound, float(b))
    return bound


def criterion_7_reduced_agreement() -> CriterionResult:
    """Reduced XY spectrum within the derived truncation bound of the chain,
    and the bound itself below 2 percent of the largest matrix entry."""
    results = []
    passed = True
    for n in GRID_SIZES:
        params = ModelParams(1.0, 2.0, 0.1, n)
        h = oracle.build_hamiltonian(params)
        ev_h = oracle.dense_eigenvalues(h).eigenvalues
        ev_r = np.linalg.eigvalsh(counterpart.build_reduced_xy(params))
        observed = counterpart.compare_spectra(ev_r, ev_h)
        bound = truncation_bound(params) + 1e-8
        hmax = float(np.max(np.abs(h)))
        ok = observed <= bound and bound / hmax <= 0.02
        passed = passed and ok
        results.append((n, observed, bound, bound / hmax))
    details = "; ".join(
        f"n={n}: observed {o:.3e} <= B {b:.3e}, B/||H||max {r:.2e}"
        for n, o, b, r in results)
    return CriterionResult(7, "reduced-model agreement", passed, details,
                           data={"rows": results})


def criterion_8_kappa_closed_forms() -> CriterionResult:
    """gamma = 0 couplings are lambda J and -J/2; closed forms match their
    defining arithmetic."""
    tol = 1e-12
    worst = 0.0
    for lam in (1.5, 2.0, 5.0):
        for n in (10, 100):
            params = ModelParams(1.0, lam, 0.0, n)
            for sector in BOTH_SECTORS:
                worst = max(worst, abs(counterpart.kappa_exact(params, sector, 0) - lam))
                worst = max(worst, abs(counterpart.kappa_exact(params, sector, 1) + 0.5))
    params = ModelParams(1.0, 2.0, 0.2, 10)
    nu = (params.gamma / params.lam) ** 2
    exact_forms = ((1.0 - nu / 4.0) * params.lam, -0.5 * (1.0 + nu / 8.0),
                   nu * params.lam / 8.0, nu / 16.0)
    form_err = max(abs(counterpart.kappa_approx(params, i) - exact_forms[i])
                   for i in range(4))
    passed = worst <= tol and form_err == 0.0
    details = f"gamma=0 coupling error {worst:.2e} (tol {tol:.0e}); closed-form mismatch {form_err:.1e}"
    return CriterionResult(8, "coupling closed forms", passed, details,
                           data={"worst": worst, "form_err": form_err})


def criterion_9_gradient_divergence() -> CriterionResult:
    """Gradient magnitude grows toward the boundary; finite differences agree.

    Expected red on the ratio clause: the full |grad kappa(0)| at N = 200 is
    dominated by a logarithmically divergent background plus a
    1/N-suppressed delta^(-1/2) term, so consecutive-decade ratios are ~1.3.
    The dominant single-momentum term does scale as delta^(-1/2)
    (ratios ~3.1), which is reported alongside.
    """
    deltas = [1e-1, 1e-2, 1e-3, 1e-4]
    samples = counterpart.divergence_probe(200, 1.0, deltas)
    mags = [s.magnitude for s in samples]
    doms = [s.dominant_term for s in samples]
    increasing = all(mags[i] < mags[i + 1] for i in range(len(mags) - 1))
    ratios = [mags[i + 1] / mags[i] for i in range(len(mags) - 1)]
    ratio_ok = all(r >= 2.0 for r in ratios)

    fd_params = ModelParams(1.0, 3.0, 0.5, 30)
    step = 1e-6
    worst_fd = 0.0
    for sector in BOTH_SECTORS:
        for d in (0, 1, 2):
            grad = counterpart.kappa_gradient(fd_params, sector, d)
            for comp, lo, hi in (
                ("lam", ModelParams(1.0, 3.0 - step, 0.5, 30), ModelParams(1.0, 3.0 + step, 0.5, 30)),
                ("gam", ModelParams(1.0, 3.0, 0.5 - step, 30), ModelParams(1.0, 3.0, 0.5 + step, 30)),
            ):
                fd = (counterpart.kappa_exact(hi, sector, d)
                      - counterpart.kappa_exact(lo, sector, d)) / (2 * step)
                val = grad.d_lambda if comp == "lam" else grad.d_gamma
                worst_fd = max(worst_fd, abs(val - fd) / max(abs(fd), 1e-12))
    fd_ok = worst_fd <= 1e-4
    passed = increasing and ratio_ok and fd_ok
    details = (f"magnitudes {', '.join(f'{m:.3f}' for m in mags)} "
               f"(ratios {', '.join(f'{r:.2f}' for r in ratios)}, need >= 2); "
               f"dominant-term ratios {', '.join(f'{doms[i+1]/doms[i]:.2f}' for i in range(3))}; "
               f"finite-difference rel err {worst_fd:.2e} (tol 1e-04)")
    return CriterionResult(9, "gradient divergence", passed, details,
                           data={"magnitudes": mags, "dominant_terms": doms,
                                 "fd_err": worst_fd})


def criterion_10_ground_state_verdicts() -> CriterionResult:
    """Verdicts agree with the phase map across the grid: unbroken points
    with real ground energy are symmetric, points with genuinely complex
    ground energy are not."""
    bad = []
    checked = 0
    for params in _grid_points():
        cls = phasemap.classify(params).classification
        e0 = freeferm.ground_state_energy(params)
        verdict = symmetry.ground_state_rt_verdict(params)
        if abs(e0.imag) <= 1e-6 and cls is PhaseClass.UNBROKEN:
            checked += 1
            if not verdict.is_symmetric:
                bad.append((params.n, params.lam, params.gamma, "expected symmetric",
                            verdict.overlap_defect))
        elif abs(e0.imag) > 1e-6:
            checked += 1
            if verdict.is_symmetric:
                bad.append((params.n, params.lam, params.gamma, "expected broken",
                            verdict.overlap_defect))
    passed = not bad
    details = f"{checked} grid points constrained, {len(bad)} disagreements"
    if bad:
        details += f"; first offenders {bad[:3]}"
    return CriterionResult(10, "ground-state symmetry verdicts", passed, details,
                           data={"bad": bad, "checked": checked})


ALL_CRITERIA = (
    criterion_1_oracle_equivalence,
    criterion_2_rt_symmetry,
    criterion_3_reality_unbroken,
    criterion_4_hyperbola_convergence,
    criterion_5_gamma_zero_exclusion,
    criterion_6_counterpart_identity,
    criterion_7_reduced_agreement,
    criterion_8_kappa_closed_forms,
    criterion_9_gradient_divergence,
    criterion_10_ground_state_verdicts,
)


def run_all(verbose: bool = True) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        t0 = time.time()
        result = fn()
        result.elapsed = time.time() - t0
        results.append(result)
        if verbose:
            print(result.line())
    return results
