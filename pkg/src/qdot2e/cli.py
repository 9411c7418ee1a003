"""Command-line driver emitting deterministic CSV artifacts.

Subcommands: ``spectrum``, ``entanglement``, ``asymptotic``, ``convergence``.
Configuration is taken from flags, optionally seeded from a JSON file via
``--config`` (flags override file values).  Data files carry no timestamps;
run metadata goes to a ``<output>.meta.json`` sidecar.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import asymptotic as asym
from .coulomb import DEFAULT_LEGENDRE_ORDER, SectorBasis
from .entanglement import linear_entropy, schmidt_spectrum, single_particle_coefficients, vn_entropy
from .errors import Qdot2eError
from .model import ALL_SECTORS, SectorLabel, TrapParams
from .solver import eigensolve_sector, log_grid

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2

N_REPORTED_OCCUPANCIES = 8

SPECTRUM_HEADER = ["g", "epsilon", "sector", "level", "E_rel", "gap"]
ENTANGLEMENT_HEADER = (
    ["g", "epsilon", "sector"]
    + [f"lambda{i}" for i in range(N_REPORTED_OCCUPANCIES)]
    + ["S_vn", "L_lin", "completeness"]
)
ASYMPTOTIC_HEADER = (
    ["epsilon"]
    + [f"lambda{i}" for i in range(N_REPORTED_OCCUPANCIES)]
    + ["L_closed", "L_spectrum", "S_vn"]
)
CONVERGENCE_HEADER = ["parameter", "value", "E_rel0", "delta_from_previous"]


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.12g}"


def write_csv(path: str, header: list[str], rows: list[tuple]) -> None:
    """Atomically write a CSV file; nothing is left behind on failure."""
    tmp = path + ".tmp"
    try:
        with open(tmp, "w", newline="") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def _write_sidecar(path: str, config: dict) -> None:
    with open(path + ".meta.json", "w") as fh:
        json.dump({"tool": "qdot2e", "config": config}, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _g_values(args) -> list[float]:
    values = []
    if getattr(args, "include_g0", False):
        values.append(0.0)
    if args.g_points > 0:
        values.extend(log_grid(args.g_min, args.g_max, args.g_points).tolist())
    if not values:
        raise Qdot2eError("empty coupling grid; give --g-points >= 1 or --include-g0")
    return values


def _sectors(names: list[str]) -> list[SectorLabel]:
    if not names:
        return list(ALL_SECTORS)
    return [SectorLabel.from_short_name(n) for n in names]


def _spectrum_point(task):
    g, epsilon, sector_name, n_max, k, legendre_order = task
    sector = SectorLabel.from_short_name(sector_name)
    states = eigensolve_sector(
        TrapParams(g, epsilon), sector, n_max=n_max, k=k, legendre_order=legendre_order
    )
    e0 = states[0].rel_energy
    return [
        (g, epsilon, sector_name, i, s.rel_energy, s.rel_energy - e0)
        for i, s in enumerate(states)
    ]


def _entanglement_point(task):
    g, epsilon, sector_name, n_max, sp_cutoff, legendre_order = task
    sector = SectorLabel.from_short_name(sector_name)
    state = eigensolve_sector(
        TrapParams(g, epsilon), sector, n_max=n_max, k=1, legendre_order=legendre_order
    )[0]
    coeffs = single_particle_coefficients(state, sp_cutoff=sp_cutoff)
    spec = schmidt_spectrum(coeffs)
    lam = np.zeros(N_REPORTED_OCCUPANCIES)
    take = min(N_REPORTED_OCCUPANCIES, len(spec.occupancies))
    lam[:take] = spec.occupancies[:take]
    return [
        (g, epsilon, sector_name, *lam.tolist(),
         vn_entropy(spec, sector), linear_entropy(spec, sector), coeffs.completeness)
    ]


def _run_tasks(worker, tasks, jobs: int):
    if jobs <= 1:
        results = [worker(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, tasks))
    return [row for chunk in results for row in chunk]


def cmd_spectrum(args) -> None:
    tasks = [
        (g, eps, sec.short_name(), args.n_max, args.levels, args.legendre_order)
        for eps in args.epsilon
        for g in _g_values(args)
        for sec in _sectors(args.sectors)
    ]
    rows = _run_tasks(_spectrum_point, tasks, args.jobs)
    rows.sort(key=lambda r: (r[1], r[0], r[2], r[3]))
    write_csv(args.output, SPECTRUM_HEADER, rows)


def cmd_entanglement(args) -> None:
    tasks = [
        (g, eps, sec.short_name(), args.n_max, args.sp_cutoff, args.legendre_order)
        for eps in args.epsilon
        for g in _g_values(args)
        for sec in _sectors(args.sectors)
    ]
    rows = _run_tasks(_entanglement_point, tasks, args.jobs)
    rows.sort(key=lambda r: (r[1], r[0], r[2]))
    write_csv(args.output, ENTANGLEMENT_HEADER, rows)


def cmd_asymptotic(args) -> None:
    rows = []
    for eps in sorted(args.epsilon):
        spectrum = asym.asymptotic_occupancies(
            eps, n_cut=args.n_cut, m_cut=args.n_cut, method=args.method,
            points=args.nystrom_points, half_width_x=args.half_width,
            half_width_y=args.half_width,
        )
        lam = np.zeros(N_REPORTED_OCCUPANCIES)
        sorted_lam = spectrum.sorted_occupancies
        take = min(N_REPORTED_OCCUPANCIES, len(sorted_lam))
        lam[:take] = sorted_lam[:take]
        rows.append(
            (eps, *lam.tolist(),
             asym.asymptotic_linear_entropy(eps),
             asym.asymptotic_linear_entropy_from_spectrum(eps),
             asym.asymptotic_vn_entropy(eps, tail_tolerance=args.tail_tolerance))
        )
    write_csv(args.output, ASYMPTOTIC_HEADER, rows)


def cmd_convergence(args) -> None:
    values = list(args.values)
    if values != sorted(values):
        raise Qdot2eError("convergence ladder values must be ascending")
    sector = SectorLabel.from_short_name(args.sector)
    trap = TrapParams(args.g, args.epsilon[0])
    rows = []
    previous = None
    completeness_prev = None
    violation = False
    for value in values:
        n_max = args.n_max
        legendre_order = args.legendre_order
        if args.parameter == "n_max":
            n_max = value
        elif args.parameter == "quad":
            legendre_order = value
        state = eigensolve_sector(
            trap, sector, n_max=n_max, k=1, legendre_order=legendre_order
        )[0]
        e0 = state.rel_energy
        if args.parameter == "sp_cutoff":
            coeffs = single_particle_coefficients(state, sp_cutoff=value)
            if completeness_prev is not None and coeffs.completeness < completeness_prev - 1e-12:
                violation = True
            completeness_prev = coeffs.completeness
        delta = 0.0 if previous is None else e0 - previous
        if args.parameter == "n_max" and previous is not None and delta > 1e-12:
            violation = True
        if args.parameter == "quad" and previous is not None and abs(delta) > 1e-9:
            violation = True
        rows.append((args.parameter, value, e0, delta))
        previous = e0
    write_csv(args.output, CONVERGENCE_HEADER, rows)
    if violation:
        raise Qdot2eError(
            f"convergence ladder violation for parameter {args.parameter}; "
            "this signals an assembly bug"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdot2e",
        description="Spectra and entanglement of two interacting electrons in a 2D trap",
    )
    parser.add_argument("--config", help="JSON file with default values for any flag")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--output", "-o", required=True, help="output CSV path")
        p.add_argument("--epsilon", type=float, nargs="+", default=[1.5],
                       help="anisotropy values (>= 1)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
        p.add_argument("--legendre-order", type=int, default=DEFAULT_LEGENDRE_ORDER)

    def add_grid(p):
        p.add_argument("--g-min", type=float, default=0.1)
        p.add_argument("--g-max", type=float, default=100.0)
        p.add_argument("--g-points", type=int, default=10)
        p.add_argument("--include-g0", action="store_true",
                       help="prepend the noninteracting point g = 0")
        p.add_argument("--sectors", nargs="*", default=[],
                       choices=["ee", "eo", "oe", "oo"],
                       help="parity sectors (default: all four)")
        p.add_argument("--n-max", type=int, default=None,
                       help="total-quanta cutoff (default: per-g heuristic)")

    p = sub.add_parser("spectrum", help="relative energies and excitation gaps")
    add_common(p)
    add_grid(p)
    p.add_argument("--levels", "-k", type=int, default=4)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("entanglement", help="occupancies and entropies of ground states")
    add_common(p)
    add_grid(p)
    p.add_argument("--sp-cutoff", type=int, default=24,
                   help="single-particle quanta per direction")
    p.set_defaults(func=cmd_entanglement)

    p = sub.add_parser("asymptotic", help="g -> infinity occupancies and entropies")
    add_common(p)
    p.add_argument("--method", choices=["nystrom", "mehler"], default="nystrom")
    p.add_argument("--n-cut", type=int, default=48, help="occupancies per direction")
    p.add_argument("--nystrom-points", type=int, default=400)
    p.add_argument("--half-width", type=float, default=None,
                   help="override the auto-sized grid half width")
    p.add_argument("--tail-tolerance", type=float, default=1e-10)
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("convergence", help="parameter-ladder convergence report")
    add_common(p)
    p.add_argument("--parameter", choices=["n_max", "quad", "sp_cutoff"], required=True)
    p.add_argument("--values", type=int, nargs="+", required=True)
    p.add_argument("--g", type=float, default=10.0)
    p.add_argument("--sector", default="ee", choices=["ee", "eo", "oe", "oo"])
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(func=cmd_convergence)

    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    with open(args.config) as fh:
        defaults = json.load(fh)
    if not isinstance(defaults, dict):
        raise Qdot2eError("config file must hold a JSON object of flag defaults")
    # re-parse with file values as defaults so explicit flags win
    sub_parser = {
        "spectrum": 0, "entanglement": 0, "asymptotic": 0, "convergence": 0,
    }
    if args.subcommand not in sub_parser:
        raise Qdot2eError(f"unknown subcommand {args.subcommand!r} in config handling")
    fresh = build_parser()
    for action_parser in fresh._subparsers._group_actions[0].choices.values():  # noqa: SLF001
        known = {a.dest for a in action_parser._actions}  # noqa: SLF001
        action_parser.set_defaults(**{k: v for k, v in defaults.items() if k in known})
    return fresh.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _apply_config_file(parser, argv)
    except SystemExit:
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, Qdot2eError) as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args)
    except Qdot2eError as exc:
        print(f"error: numeric: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    config = {k: v for k, v in vars(args).items() if k not in ("func", "config")}
    _write_sidecar(args.output, config)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
