"""Stand-alone source iteration for the spectral S_N equations."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .config import ProblemConfig
from .discretization import SpatialMesh, cascade_sweep, scattering_source
from .freepath import FreePathModel, FreePathQuadrature, MomentCoefficients, compute_moments
from .postprocess import classical_scalar_flux, collision_rate_density
from .quadrature import AngularQuadrature

TINY = 1e-300
NORMALIZATION_WARN = 1e-3


@dataclass(frozen=True)
class Discretization:
    """Everything a solver needs that depends only on the configuration."""

    config: ProblemConfig
    mesh: SpatialMesh
    quad: AngularQuadrature
    model: FreePathModel
    coeffs: MomentCoefficients
    source: np.ndarray  # Q/2 on the DG nodes

    @classmethod
    def from_config(cls, cfg: ProblemConfig) -> "Discretization":
        mesh = SpatialMesh(cfg.x, cfg.cells)
        model = FreePathModel(cfg.model, cfg.sigma_t)
        fp_quad = FreePathQuadrature.truncated(cfg.x, cfg.free_path_nodes)
        coeffs = compute_moments(model, cfg.m, fp_quad)
        if abs(coeffs.scattering[0] - 1.0) > NORMALIZATION_WARN:
            warnings.warn(
                f"free-path quadrature with {cfg.free_path_nodes} nodes on [0, {1.5 * cfg.x:g}] "
                f"gives int p ds = {coeffs.scattering[0]:.6f}; raise fp_nodes",
                RuntimeWarning, stacklevel=2,
            )
        return cls(cfg, mesh, AngularQuadrature.gauss_legendre(cfg.n), model, coeffs,
                   mesh.constant(0.5 * cfg.q))


@dataclass
class SolveReport:
    """Outcome of an iterative solve.

    ``deviations[i]`` is the stopping metric after iteration ``i + 1``
    (``inf`` for the first sweep, which has no predecessor) and
    ``difference_norms[i]`` the L2 norm of the scalar-flux change.
    """

    converged: bool
    iterations: int
    spectral_radius: float
    deviations: list = field(default_factory=list)
    difference_norms: list = field(default_factory=list)
    psi: np.ndarray | None = None
    phi: np.ndarray | None = None
    f: np.ndarray | None = None
    wall_time: float = 0.0


def relative_deviation(phi_new: np.ndarray, phi_old: np.ndarray, norm: str = "pointwise") -> float:
    """Relative change between successive scalar fluxes.

    ``pointwise`` takes the largest ``|new - old| / |old|`` over the DG
    nodes; ``l2`` is the ratio of Euclidean norms.
    """
    diff = np.abs(np.asarray(phi_new) - np.asarray(phi_old)).ravel()
    ref = np.abs(np.asarray(phi_old)).ravel()
    if norm == "l2":
        denom = np.linalg.norm(ref)
        num = np.linalg.norm(diff)
        if denom < TINY:
            if num == 0.0:
                return 0.0
            raise ZeroDivisionError("previous scalar flux vanishes")
        return float(num / denom)
    small = ref < TINY
    if np.any(small & (diff > 0.0)):
        raise ZeroDivisionError("previous scalar flux vanishes at a node that changed")
    ratio = np.divide(diff, ref, out=np.zeros_like(diff), where=~small)
    return float(ratio.max(initial=0.0))


def stopping_check(phi_new, phi_old, xi: float, norm: str = "pointwise") -> bool:
    return relative_deviation(phi_new, phi_old, norm) <= xi


def spectral_radius_estimate(history) -> float:
    """Ratio of the last two successive-difference norms; ``nan`` if undefined."""
    history = np.asarray(history, dtype=float)
    if len(history) < 3 or not history[-2] > TINY:
        return float("nan")
    return float(history[-1] / history[-2])


def _make_report(disc, converged, iterations, deviations, norms, psi, phi, start, f=None):
    return SolveReport(
        converged=converged,
        iterations=iterations,
        spectral_radius=spectral_radius_estimate(norms),
        deviations=deviations,
        difference_norms=norms,
        psi=psi,
        phi=phi,
        f=collision_rate_density(psi, disc.quad, disc.coeffs) if f is None else f,
        wall_time=time.perf_counter() - start,
    )


def si_solve(cfg: ProblemConfig, disc: Discretization | None = None) -> SolveReport:
    """Source iteration from a zero initial guess, one sweep per iteration."""
    start = time.perf_counter()
    disc = disc or Discretization.from_config(cfg)
    mesh, quad, coeffs = disc.mesh, disc.quad, disc.coeffs
    psi = np.empty((cfg.m + 1, cfg.n, cfg.cells, 2))
    S = np.zeros((cfg.cells, 2))
    phi_old = np.zeros((cfg.cells, 2))
    deviations, norms = [], []
    converged = False
    iteration = 0
    while iteration < cfg.max_iterations:
        iteration += 1
        cascade_sweep(mesh, quad, cfg.m, S + disc.source, out=psi)
        S = scattering_source(psi, quad, coeffs.scattering, cfg.c)
        phi = classical_scalar_flux(psi, quad, coeffs.recovery)
        norms.append(float(np.linalg.norm(phi - phi_old)))
        if iteration == 1:
            deviations.append(float("inf"))
        else:
            deviations.append(relative_deviation(phi, phi_old, cfg.stopping_norm))
            if deviations[-1] <= cfg.xi:
                converged = True
                break
        phi_old = phi
    return _make_report(disc, converged, iteration, deviations, norms, psi, phi, start)
