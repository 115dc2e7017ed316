"""Standard problem setups and the comparisons built on them.

``table_config`` is the thick-slab convergence study (X = 200, M = 50);
``figure_config`` the thin-slab comparison against classical transport
and diffusion (X = 20, M = 10). The thin-slab setups use a 64-node
free-path rule because an M-node rule on [0, 30] misnormalizes the
nonexponential distribution badly enough to make the problem
supercritical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ProblemConfig
from .discretization import SpatialMesh
from .reference import classical_sn_solve, diffusion_analytic, diffusion_solve
from .s2sa import s2sa_solve
from .source_iteration import Discretization, SolveReport, si_solve

TABLE_C = (0.8, 0.9, 0.99, 0.999)
FIGURE_FP_NODES = 64


def table_config(model: str = "exponential", c: float = 0.8, solver: str = "si",
                 **changes) -> ProblemConfig:
    cfg = ProblemConfig(x=200.0, cells=200, n=16, m=50, c=c, sigma_t=1.0, model=model,
                        q=1.0, xi=1e-6, solver=solver)
    return cfg.replace(**changes) if changes else cfg


def figure_config(model: str = "exponential", **changes) -> ProblemConfig:
    cfg = ProblemConfig(x=20.0, cells=200, n=16, m=10, c=0.999, sigma_t=1.0, model=model,
                        q=1.0, xi=1e-6, solver="s2sa", fp_nodes=FIGURE_FP_NODES)
    return cfg.replace(**changes) if changes else cfg


def solve(cfg: ProblemConfig, disc: Discretization | None = None) -> SolveReport:
    """Dispatch on ``cfg.solver``."""
    if cfg.solver == "si":
        return si_solve(cfg, disc)
    return s2sa_solve(cfg, disc)


@dataclass
class ScanRow:
    c: float
    solver: str
    iterations: int | None
    rho_estimate: float | None
    status: str


def run_scan(base: ProblemConfig, c_values, solvers=("si", "s2sa")) -> list[ScanRow]:
    """One solve per ``(c, solver)`` pair, in input order.

    A failing row records its error in ``status`` and the scan continues.
    """
    rows = []
    for c in c_values:
        try:
            cfg = base.replace(c=float(c))
            disc = Discretization.from_config(cfg)
        except Exception as exc:
            rows.extend(ScanRow(float(c), s, None, None, f"error: {exc}") for s in solvers)
            continue
        for solver in solvers:
            try:
                report = solve(cfg.replace(solver=solver), disc)
            except Exception as exc:
                rows.append(ScanRow(cfg.c, solver, None, None, f"error: {exc}"))
                continue
            status = "converged" if report.converged else "max_iterations"
            rows.append(ScanRow(cfg.c, solver, report.iterations, report.spectral_radius, status))
    return rows


@dataclass
class Comparison:
    """Nodal profiles of a spectral result against a reference solution."""

    x: np.ndarray
    value: np.ndarray
    reference: np.ndarray

    @property
    def relative_error(self) -> np.ndarray:
        return np.abs(self.value - self.reference) / np.abs(self.reference)

    @property
    def max_relative_error(self) -> float:
        return float(self.relative_error.max())


def compare_with_classical(cfg: ProblemConfig | None = None) -> Comparison:
    """Scalar flux of the exponential model against classical S_N."""
    cfg = cfg or figure_config("exponential")
    disc = Discretization.from_config(cfg)
    report = solve(cfg, disc)
    _, phi_c, _ = classical_sn_solve(cfg.x, cfg.cells, cfg.n, cfg.sigma_t, cfg.c, cfg.q,
                                     cfg.xi, cfg.max_iterations, cfg.stopping_norm)
    return Comparison(disc.mesh.nodes.ravel(), report.phi.ravel(), phi_c.ravel())


def compare_with_diffusion(cfg: ProblemConfig | None = None) -> Comparison:
    """Collision-rate density of the nonexponential model against diffusion."""
    cfg = cfg or figure_config("diffusion_mimic")
    disc = Discretization.from_config(cfg)
    report = solve(cfg, disc)
    phi_d = diffusion_solve(cfg.x, cfg.cells, cfg.sigma_t, cfg.c, cfg.q)
    return Comparison(disc.mesh.nodes.ravel(), report.f.ravel(), cfg.sigma_t * phi_d.ravel())


def diffusion_closed_form_error(X=20.0, cells=2000, sigma_t=1.0, c=0.999, Q=1.0) -> float:
    """Largest relative gap between the finite-difference and closed-form diffusion flux."""
    x = SpatialMesh(X, cells).nodes
    num = diffusion_solve(X, cells, sigma_t, c, Q)
    exact = diffusion_analytic(x, X, sigma_t, c, Q)
    return float(np.max(np.abs(num - exact) / np.abs(exact)))

