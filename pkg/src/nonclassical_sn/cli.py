"""Command-line front end: ``solve``, ``scan`` and ``verify``.

Exit codes: 0 success, 1 invalid configuration or usage, 2 solver hit
``max_iterations``, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import experiments
from .config import (
    FIELDS, FLOAT_KEYS, INT_KEYS, ConfigError, ProblemConfig, parse_config, read_config_file,
)
from .source_iteration import Discretization

EXIT_OK, EXIT_CONFIG, EXIT_NOT_CONVERGED, EXIT_IO = 0, 1, 2, 3

FIG1_TOL = 0.01
FIG2_TOL = 0.02
DIFFUSION_TOL = 1e-6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[fmt(v) for v in row] for row in rows])


PRESETS = {"table": experiments.table_config, "figure": experiments.figure_config}


def _add_config_flags(parser):
    parser.add_argument("--config", type=Path, help="flat TOML file with problem keys")
    parser.add_argument("--preset", choices=sorted(PRESETS),
                        help="start from the thick-slab table or thin-slab figure setup")
    for name in FIELDS:
        kind = int if name in INT_KEYS else float if name in FLOAT_KEYS else str
        parser.add_argument(f"--{name}", type=kind, default=None)


def _load(args, defaults: dict | None = None) -> ProblemConfig:
    """Preset, then config file, then flags; ``defaults`` fill absent keys."""
    overrides = {name: getattr(args, name) for name in FIELDS}
    if args.preset:
        base = PRESETS[args.preset]()
    elif defaults:
        values = dict(defaults)
        if args.config is not None:
            values.update(read_config_file(args.config))
        values.update({k: v for k, v in overrides.items() if v is not None})
        return parse_config(None, values)
    else:
        base = None
    return parse_config(args.config, overrides, base)


def _parse_psi(spec: str):
    m, n = (int(part) for part in spec.split(","))
    return m, n


def cmd_solve(args) -> int:
    cfg = _load(args)
    disc = Discretization.from_config(cfg)
    report = experiments.solve(cfg, disc)
    requests = [_parse_psi(s) for s in args.psi or []]
    for m, n in requests:
        if not (0 <= m <= cfg.m and 0 <= n < cfg.n):
            raise ConfigError("psi", f"moment/angle ({m},{n}) out of range")
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    header = ["x", "phi", "f"] + [f"psi_{m}_{n}" for m, n in requests]
    columns = [disc.mesh.nodes.ravel(), report.phi.ravel(), report.f.ravel()]
    columns += [report.psi[m, n].ravel() for m, n in requests]
    _write_csv(out / "solution.csv", header, zip(*columns))
    _write_csv(out / "report.csv", ["iterations", "converged", "rho_estimate", "wall_time"],
               [[report.iterations, int(report.converged), report.spectral_radius,
                 report.wall_time]])
    state = "converged" if report.converged else "NOT converged"
    print(f"{cfg.solver} {cfg.model} c={cfg.c:g}: {state} in {report.iterations} iterations, "
          f"rho={report.spectral_radius:.4f}, {report.wall_time:.2f}s")
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def _split_list(text: str | None, kind):
    if not text:
        return []
    return [kind(item) for item in text.split(",") if item.strip()]


def cmd_scan(args) -> int:
    cfg = _load(args, defaults={"c": 0.0})  # c is set per row
    c_values = _split_list(args.c_list, float)
    solvers = _split_list(args.solvers, str)
    for s in solvers:
        if s not in ("si", "s2sa"):
            raise ConfigError("solvers", f"unknown solver {s!r}")
    rows = experiments.run_scan(cfg, c_values, solvers)
    header = ["c", "solver", "iterations", "rho_estimate", "status"]
    table = [[r.c, r.solver, r.iterations, r.rho_estimate, r.status] for r in rows]
    if args.output:
        _write_csv(Path(args.output), header, table)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[fmt(v) for v in row] for row in table])
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = []
    fig1 = experiments.compare_with_classical()
    checks.append(("classical S16 vs exponential model, max rel dev of phi",
                   fig1.max_relative_error, FIG1_TOL))
    fig2 = experiments.compare_with_diffusion()
    checks.append(("Marshak diffusion vs nonexponential model, max rel dev of f",
                   fig2.max_relative_error, FIG2_TOL))
    checks.append(("diffusion finite differences vs closed form (2000 cells)",
                   experiments.diffusion_closed_form_error(), DIFFUSION_TOL))
    ok = True
    for label, value, tol in checks:
        passed = value <= tol
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {label}: {value:.3e} (tol {tol:g})")
    return EXIT_OK if ok else EXIT_CONFIG


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nonclassical-sn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="single run, writes solution.csv and report.csv")
    _add_config_flags(p)
    p.add_argument("--output-dir", default=".", help="directory for the CSV outputs")
    p.add_argument("--psi", action="append", metavar="M,N",
                   help="add the psi moment M at ordinate N as a column (repeatable)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan", help="iteration counts and spectral radii over c and solvers")
    _add_config_flags(p)
    p.add_argument("--c-list", default=",".join(map(str, experiments.TABLE_C)))
    p.add_argument("--solvers", default="si,s2sa")
    p.add_argument("--output", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="compare against classical S_N and diffusion references")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
