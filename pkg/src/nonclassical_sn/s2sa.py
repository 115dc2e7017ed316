"""S2 transport synthetic acceleration of the spectral source iteration.

Each outer iteration does one high-order sweep, then solves the S2
version of the error equation for the scattering-source correction. The
low-order problem is linear in the scalar source field only, so it is
assembled once as a dense ``(2 cells) x (2 cells)`` matrix and LU-factored.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import ProblemConfig
from .discretization import SpatialMesh, cascade_sweep, scattering_source
from .postprocess import classical_scalar_flux
from .quadrature import AngularQuadrature
from .source_iteration import Discretization, SolveReport, _make_report, relative_deviation

LOW_ORDER_N = 2


@dataclass(frozen=True)
class LowOrderOperator:
    """Factored ``I - L`` for the S2 error equation.

    ``L`` maps a nodal source ``g`` to the scattering source of the S2
    cascade sweep driven by ``g``. Vectors are flattened ``(cells, 2)``
    fields.
    """

    mesh: SpatialMesh
    quad: AngularQuadrature
    M: int
    c: float
    scattering: np.ndarray
    recovery: np.ndarray
    matrix: np.ndarray  # L itself
    lu: tuple
    n_sweeps: int

    def apply(self, g: np.ndarray) -> np.ndarray:
        """``L g`` by an actual sweep, without the assembled matrix."""
        psi = cascade_sweep(self.mesh, self.quad, self.M, g)
        return scattering_source(psi, self.quad, self.scattering, self.c)

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """``(I - L)^{-1} rhs`` for a ``(cells, 2)`` field."""
        x = scipy.linalg.lu_solve(self.lu, rhs.ravel())
        return x.reshape(rhs.shape)


def assemble_low_order(cfg: ProblemConfig, disc: Discretization | None = None) -> LowOrderOperator:
    """Build ``L`` column by column from unit nodal impulses and factor ``I - L``."""
    disc = disc or Discretization.from_config(cfg)
    mesh, coeffs = disc.mesh, disc.coeffs
    quad = AngularQuadrature.gauss_legendre(LOW_ORDER_N)
    size = 2 * mesh.cells
    matrix = np.empty((size, size))
    impulse = np.zeros((mesh.cells, 2))
    flat = impulse.reshape(-1)
    psi = np.empty((cfg.m + 1, LOW_ORDER_N, mesh.cells, 2))
    for col in range(size):
        flat[col] = 1.0
        cascade_sweep(mesh, quad, cfg.m, impulse, out=psi)
        matrix[:, col] = scattering_source(psi, quad, coeffs.scattering, cfg.c).ravel()
        flat[col] = 0.0
    lu = scipy.linalg.lu_factor(np.eye(size) - matrix, check_finite=True)
    pivots = np.abs(np.diag(lu[0]))
    if not pivots.min() > 1e-13 * pivots.max():
        raise np.linalg.LinAlgError(
            "low-order operator I - L is singular (is c >= 1?)"
        )
    return LowOrderOperator(mesh, quad, cfg.m, cfg.c, coeffs.scattering, coeffs.recovery,
                            matrix, lu, n_sweeps=size)


def error_solve(op: LowOrderOperator, residual: np.ndarray):
    """Solve the S2 error equation driven by a scattering-source residual.

    Parameters
    ----------
    op : LowOrderOperator
    residual : numpy.ndarray
        ``S^{i+1/2} - S^i`` on the DG nodes.

    Returns
    -------
    S_eps : numpy.ndarray
        Scattering source of the error, ``(I - L) S_eps = L r``.
    eps : numpy.ndarray
        S2 error moments from one sweep with source ``S_eps + r``.
    """
    residual = np.asarray(residual, dtype=float)
    S_eps = op.solve(op.matrix.dot(residual.ravel()).reshape(residual.shape))
    eps = cascade_sweep(op.mesh, op.quad, op.M, S_eps + residual)
    return S_eps, eps


def s2sa_solve(cfg: ProblemConfig, disc: Discretization | None = None,
               op: LowOrderOperator | None = None) -> SolveReport:
    """Source iteration with S2 synthetic acceleration.

    The error is added to the angle-integrated quantities only: the
    scattering source carried to the next sweep and the scalar flux used
    by the stopping test.
    """
    start = time.perf_counter()
    disc = disc or Discretization.from_config(cfg)
    op = op or assemble_low_order(cfg, disc)
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
        S_half = scattering_source(psi, quad, coeffs.scattering, cfg.c)
        S_eps, eps = error_solve(op, S_half - S)
        S = S_half + S_eps
        phi = (classical_scalar_flux(psi, quad, coeffs.recovery)
               + classical_scalar_flux(eps, op.quad, coeffs.recovery))
        norms.append(float(np.linalg.norm(phi - phi_old)))
        if iteration == 1:
            deviations.append(float("inf"))
        else:
            deviations.append(relative_deviation(phi, phi_old, cfg.stopping_norm))
            if deviations[-1] <= cfg.xi:
                converged = True
                break
        phi_old = phi
    f = (classical_scalar_flux(psi, quad, coeffs.scattering)
         + classical_scalar_flux(eps, op.quad, coeffs.scattering))
    return _make_report(disc, converged, iteration, deviations, norms, psi, phi, start, f)
