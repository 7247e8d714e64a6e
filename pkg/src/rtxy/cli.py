"""Command-line surface: spectra, phase maps, couplings, comparisons, validation.

Every command writes delimited data (CSV or JSON) under --out; --format svg
additionally renders a matplotlib figure next to the data.  Output files are
written atomically and are byte-identical for identical configurations.
Exit codes: 0 ok, 1 validation failure, 2 bad configuration.  The RTXY_THREADS
environment variable caps the worker pool used by grid scans.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import counterpart, freeferm, oracle, phasemap, report, symmetry, validation
from .model import BOTH_SECTORS, ModelParams, Sector
from .phasemap import PhaseClass

N_MAX_CLI_ORACLE = 12

PHASE_CODES = {PhaseClass.UNBROKEN: 0, PhaseClass.BROKEN: 1, PhaseClass.EXCEPTIONAL: 2}


def _sector_arg(value: str) -> str:
    if value not in ("+", "-", "both"):
        raise argparse.ArgumentTypeError("sector must be one of +, -, both")
    return value


def _sectors(arg: str):
    if arg == "+":
        return (Sector.EVEN,)
    if arg == "-":
        return (Sector.ODD,)
    return BOTH_SECTORS


def _out_path(args, name: str) -> str:
    return os.path.join(args.out, name)


def cmd_spectrum(args) -> int:
    params = ModelParams(args.j, args.lam, args.gamma, args.n)
    sectors = _sectors(args.sector)
    levels = []
    analytic = []
    for sector in sectors:
        sl = freeferm.sector_spectrum(params, sector)
        analytic.append(sl.energies)
        for occ, e in zip(sl.occupations, sl.energies):
            levels.append((sector.label, int(occ), float(e.real), float(e.imag)))
    combined = np.concatenate(analytic)

    oracle_levels = None
    match = None
    if params.n <= N_MAX_CLI_ORACLE:
        h = oracle.build_hamiltonian(params)
        if args.sector == "both":
            oracle_levels = oracle.dense_eigenvalues(h).eigenvalues
        else:
            even, odd = oracle.parity_filter(h)
            block = even if args.sector == "+" else odd
            oracle_levels = oracle.dense_eigenvalues(block).eigenvalues
        match = counterpart.compare_spectra(combined, oracle_levels)

    doc = {
        "schema_version": report.SCHEMA_VERSION,
        "params": {"n": params.n, "j": params.j, "lambda": params.lam,
                   "gamma": params.gamma},
        "sector": args.sector,
        "levels": [{"sector": s, "occupation": occ, "re": re, "im": im}
                   for s, occ, re, im in levels],
        "max_match_distance": match,
        "ground_energy": {"re": freeferm.ground_state_energy(params).real,
                          "im": freeferm.ground_state_energy(params).imag},
        "rt_pairing_defect": symmetry.conjugate_pairing_report(combined),
    }
    if args.format == "json":
        path = report.write_json(_out_path(args, "spectrum.json"), doc)
    else:
        path = report.write_csv(
            _out_path(args, "spectrum.csv"),
            ["sector", "occupation", "re", "im"], levels)
    print(f"wrote {path}")
    if match is not None:
        print(f"max match distance vs dense oracle: {match:.3e}")
    if args.format == "svg":
        fig = report.spectrum_figure(
            _out_path(args, "spectrum.svg"), combined, oracle_levels,
            title=rf"N={params.n}, $\lambda$={params.lam}, $\gamma$={params.gamma}")
        print(f"wrote {fig}")
    return 0


def cmd_phase(args) -> int:
    sizes = [args.n] if args.n is not None else [4, 8, 30]
    lams = np.linspace(args.lmin, args.lmax, args.res)
    gams = np.linspace(args.gmin, args.gmax, args.res)
    panels = []
    for n in sizes:
        grid = phasemap.grid_scan(n, (args.lmin, args.lmax), (args.gmin, args.gmax),
                                  args.res, j=args.j)
        rows = [(p.lam, p.gamma, p.classification.value)
                for row in grid for p in row]
        path = report.write_csv(_out_path(args, f"phase_n{n}.csv"),
                                ["lambda", "gamma", "class"], rows)
        print(f"wrote {path}")
        boundary_gams = gams[np.abs(gams) > 1e-9]
        curve = phasemap.boundary_curve(n, boundary_gams)
        bpath = report.write_csv(_out_path(args, f"phase_boundary_n{n}.csv"),
                                 ["gamma", "lambda_c"],
                                 zip(curve.gamma_grid, curve.lambda_c))
        print(f"wrote {bpath}")
        if args.format == "json":
            doc = {"schema_version": report.SCHEMA_VERSION, "n": n, "j": args.j,
                   "lambda_grid": list(lams), "gamma_grid": list(gams),
                   "classes": [[p.classification.value for p in row] for row in grid],
                   "boundary": {"gamma": list(curve.gamma_grid),
                                "lambda_c": list(curve.lambda_c)}}
            jpath = report.write_json(_out_path(args, f"phase_n{n}.json"), doc)
            print(f"wrote {jpath}")
        codes = np.array([[PHASE_CODES[p.classification] for p in row] for row in grid])
        panels.append({"n": n, "lams": lams, "gams": gams, "codes": codes,
                       "boundary": curve})
    if args.format == "svg":
        fig = report.phase_figure(_out_path(args, "phase.svg"), panels)
        print(f"wrote {fig}")
    return 0


def cmd_kappa(args) -> int:
    gammas = [args.gamma] if args.gamma is not None else [0.2, 0.5, 2.0]
    lams = np.linspace(args.lmin, args.lmax, args.res)
    rows = []
    sweeps = []
    for gamma in gammas:
        exact = {d: [] for d in range(4)}
        approx = {d: [] for d in range(4)}
        for lam in lams:
            params = ModelParams(args.j, float(lam), float(gamma), args.n)
            unbroken = phasemap.classify(params).classification is PhaseClass.UNBROKEN
            tables = {}
            if unbroken:
                tables = {s: counterpart.kappa_table(params, s).kappa for s in BOTH_SECTORS}
            for d in range(4):
                ka = counterpart.kappa_approx(params, d) if lam != 0 else float("nan")
                approx[d].append(ka)
                if unbroken:
                    kp = float(tables[Sector.EVEN][d])
                    km = float(tables[Sector.ODD][d])
                    exact[d].append(0.5 * (kp + km))
                    rows.append((gamma, float(lam), d, kp, km, abs(kp - km), ka, True))
                else:
                    exact[d].append(float("nan"))
                    rows.append((gamma, float(lam), d, float("nan"), float("nan"),
                                 float("nan"), ka, False))
        sweeps.append({"gamma": gamma, "lams": lams,
                       "exact": [np.array(exact[d]) for d in range(4)],
                       "approx": [np.array(approx[d]) for d in range(4)]})
    path = report.write_csv(
        _out_path(args, "kappa.csv"),
        ["gamma", "lambda", "d", "kappa_plus", "kappa_minus", "sector_diff",
         "kappa_approx", "valid"], rows)
    print(f"wrote {path}")
    if args.format == "json":
        doc = {"schema_version": report.SCHEMA_VERSION, "n": args.n, "j": args.j,
               "rows": [{"gamma": g, "lambda": l, "d": d, "kappa_plus": kp,
                         "kappa_minus": km, "sector_diff": sd, "kappa_approx": ka,
                         "valid": v}
                        for g, l, d, kp, km, sd, ka, v in rows]}
        jpath = report.write_json(_out_path(args, "kappa.json"), doc)
        print(f"wrote {jpath}")
    if args.format == "svg":
        fig = report.kappa_figure(_out_path(args, "kappa.svg"), sweeps)
        print(f"wrote {fig}")
    return 0


def cmd_compare(args) -> int:
    sizes = [args.n] if args.n is not None else [4, 6, 8]
    groups = []
    summary = []
    for n in sizes:
        params = ModelParams(args.j, args.lam, args.gamma, n)
        ev_h = oracle.dense_eigenvalues(oracle.build_hamiltonian(params)).eigenvalues
        cs = counterpart.counterpart_spectrum(params)
        ev_r = np.linalg.eigvalsh(counterpart.build_reduced_xy(params))
        rows = []
        for name, levels in (("chain", ev_h), ("counterpart", cs), ("reduced", ev_r)):
            levels = np.asarray(levels, dtype=complex)
            order = np.lexsort((levels.imag, levels.real))
            for i, e in enumerate(levels[order]):
                rows.append((name, i, float(e.real), float(e.imag)))
        path = report.write_csv(_out_path(args, f"compare_n{n}.csv"),
                                ["source", "index", "re", "im"], rows)
        print(f"wrote {path}")
        summary.append({
            "n": n,
            "counterpart_vs_chain": counterpart.compare_spectra(cs, ev_h),
            "reduced_vs_chain": counterpart.compare_spectra(ev_r, ev_h),
            "truncation_bound": validation.truncation_bound(params),
        })
        groups.append({"n": n, "spectra": {"chain": ev_h, "counterpart": cs,
                                           "reduced": ev_r}})
    jpath = report.write_json(
        _out_path(args, "compare.json"),
        {"schema_version": report.SCHEMA_VERSION,
         "params": {"j": args.j, "lambda": args.lam, "gamma": args.gamma},
         "results": summary})
    print(f"wrote {jpath}")
    for entry in summary:
        print(f"  n={entry['n']}: counterpart vs chain {entry['counterpart_vs_chain']:.3e}, "
              f"reduced vs chain {entry['reduced_vs_chain']:.3e} "
              f"(bound {entry['truncation_bound']:.3e})")
    if args.format == "svg":
        fig = report.compare_figure(_out_path(args, "compare.svg"), groups)
        print(f"wrote {fig}")
    return 0


def cmd_validate(args) -> int:
    results = validation.run_all(verbose=True)
    doc = {
        "schema_version": report.SCHEMA_VERSION,
        "passed": all(r.passed for r in results),
        "criteria": [{"index": r.index, "name": r.name, "passed": r.passed,
                      "details": r.details, "elapsed_s": r.elapsed}
                     for r in results],
    }
    path = report.write_json(_out_path(args, "validate.json"), doc)
    print(f"wrote {path}")
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} criteria passed")
    return 0 if doc["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rtxy",
        description="Non-Hermitian anisotropic XY chain with RT symmetry: "
                    "spectra, phase maps, Hermitian counterpart, validation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_point: bool):
        p.add_argument("--j", type=float, default=1.0, help="coupling J (default 1)")
        p.add_argument("--out", default="rtxy_out", help="output directory")
        p.add_argument("--format", choices=["csv", "json", "svg"], default="csv",
                       help="data format; svg renders a figure next to the CSV")
        if need_point:
            p.add_argument("--lambda", dest="lam", type=float, required=False,
                           help="transverse field")
            p.add_argument("--gamma", type=float, required=False, help="anisotropy")

    p = sub.add_parser("spectrum", help="free-fermion spectrum with oracle check")
    common(p, need_point=True)
    p.add_argument("--n", type=int, required=True, help="even site count")
    p.add_argument("--sector", type=_sector_arg, default="both")
    p.set_defaults(func=cmd_spectrum, lam=2.0, gamma=0.1)

    p = sub.add_parser("phase", help="phase-diagram grid scan")
    common(p, need_point=False)
    p.add_argument("--n", type=int, default=None,
                   help="site count (default: panels for 4, 8, 30)")
    p.add_argument("--lmin", type=float, default=0.0)
    p.add_argument("--lmax", type=float, default=3.0)
    p.add_argument("--gmin", type=float, default=0.0)
    p.add_argument("--gmax", type=float, default=3.0)
    p.add_argument("--res", type=int, default=101, help="points per axis")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("kappa", help="counterpart couplings over a lambda sweep")
    common(p, need_point=False)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--gamma", type=float, default=None,
                   help="anisotropy (default: sweeps 0.2, 0.5, 2)")
    p.add_argument("--lmin", type=float, default=1.0)
    p.add_argument("--lmax", type=float, default=6.0)
    p.add_argument("--res", type=int, default=26)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("compare", help="chain vs counterpart vs reduced model")
    common(p, need_point=True)
    p.add_argument("--n", type=int, default=None,
                   help="site count (default: 4, 6, 8)")
    p.set_defaults(func=cmd_compare, lam=2.0, gamma=0.1)

    p = sub.add_parser("validate", help="run the acceptance suite")
    p.add_argument("--out", default="rtxy_out", help="output directory")
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
