"""Reference solutions used to validate the spectral solver.

* ``classical_sn_solve``: the classical one-speed S_N slab problem,
  swept with the same DG kernel (single moment, collision coefficient
  ``sigma_t``).
* ``diffusion_solve`` / ``diffusion_analytic``: slab diffusion with
  Marshak boundaries, numerically and in closed form.
"""

from __future__ import annotations

import time

import numpy as np
import scipy.linalg

from .discretization import SpatialMesh, cascade_sweep
from .quadrature import AngularQuadrature
from .source_iteration import SolveReport, relative_deviation, spectral_radius_estimate


def classical_sn_solve(X: float, cells: int, N: int, sigma_t: float, c: float, Q: float,
                       xi: float = 1e-6, max_iter: int = 100_000, stopping_norm: str = "l2"):
    """Source-iterated classical S_N solution with vacuum boundaries.

    Returns
    -------
    angular : numpy.ndarray
        ``Psi_c[n, cell, node]``.
    phi : numpy.ndarray
        Scalar flux ``(cells, 2)``.
    report : SolveReport
    """
    start = time.perf_counter()
    mesh = SpatialMesh(X, cells)
    quad = AngularQuadrature.gauss_legendre(N)
    external = mesh.constant(0.5 * Q)
    psi = np.empty((1, N, cells, 2))
    phi_old = np.zeros((cells, 2))
    deviations, norms = [], []
    converged = False
    it = 0
    while it < max_iter:
        it += 1
        cascade_sweep(mesh, quad, 0, 0.5 * c * sigma_t * phi_old + external, sigma=sigma_t, out=psi)
        phi = np.tensordot(quad.weights, psi[0], axes=(0, 0))
        norms.append(float(np.linalg.norm(phi - phi_old)))
        if it == 1:
            deviations.append(float("inf"))
        else:
            deviations.append(relative_deviation(phi, phi_old, stopping_norm))
            if deviations[-1] <= xi:
                converged = True
                break
        phi_old = phi
    report = SolveReport(converged, it, spectral_radius_estimate(norms), deviations, norms,
                         psi=psi, phi=phi, f=sigma_t * phi,
                         wall_time=time.perf_counter() - start)
    return psi[0], phi, report


def diffusion_solve(X: float, cells: int, sigma_t: float, c: float, Q: float) -> np.ndarray:
    """Finite-difference slab diffusion with Marshak boundary conditions.

    Solves ``-(1/3 sigma_t) phi'' + (1-c) sigma_t phi = Q`` on the
    ``cells + 1`` mesh vertices. The boundary derivative uses the
    second-order one-sided stencil; its third entry is eliminated with the
    adjacent interior row so the system stays tridiagonal.

    Returns
    -------
    numpy.ndarray
        Vertex values laid out as a ``(cells, 2)`` nodal field.
    """
    if not 0.0 <= c < 1.0:
        raise ValueError("c must lie in [0,1)")
    n = cells + 1
    h = X / cells
    D = 1.0 / (3.0 * sigma_t)
    absorb = (1.0 - c) * sigma_t
    extrap = 2.0 / (3.0 * sigma_t)
    off = -D / h**2
    diag = np.full(n, 2.0 * D / h**2 + absorb)
    lower = np.full(n - 1, off)  # entry (i, i-1)
    upper = np.full(n - 1, off)  # entry (i, i+1)
    rhs = np.full(n, float(Q))

    # Left: phi0 - extrap * (-3 phi0 + 4 phi1 - phi2) / (2h) = 0
    a0, a1, a2 = 1.0 + 3.0 * extrap / (2 * h), -4.0 * extrap / (2 * h), extrap / (2 * h)
    k = a2 / off  # row 1 carries phi2 with coefficient `off`
    diag[0] = a0 - k * off
    upper[0] = a1 - k * diag[1]
    rhs[0] = -k * rhs[1]
    # Right: phiN + extrap * (3 phiN - 4 phiN-1 + phiN-2) / (2h) = 0
    b0, b1, b2 = 1.0 + 3.0 * extrap / (2 * h), -4.0 * extrap / (2 * h), extrap / (2 * h)
    k = b2 / off
    diag[-1] = b0 - k * off
    lower[-1] = b1 - k * diag[-2]
    rhs[-1] = -k * rhs[-2]

    banded = np.zeros((3, n))
    banded[0, 1:] = upper
    banded[1] = diag
    banded[2, :-1] = lower
    phi = scipy.linalg.solve_banded((1, 1), banded, rhs)
    return np.stack([phi[:-1], phi[1:]], axis=1)


def diffusion_analytic(x, X: float, sigma_t: float, c: float, Q: float):
    """Closed-form Marshak-slab diffusion flux, symmetric about ``X/2``."""
    if not 0.0 <= c < 1.0:
        raise ValueError("c must lie in [0,1)")
    L = 1.0 / (sigma_t * np.sqrt(3.0 * (1.0 - c)))
    half = X / (2.0 * L)
    # cosh(y/L)/D0 scaled by exp(-half) so thick slabs do not overflow
    y = (np.asarray(x, dtype=float) - 0.5 * X) / L
    num = 0.5 * (np.exp(y - half) + np.exp(-y - half))
    den = 0.5 * (1.0 + np.exp(-2 * half)) + (2.0 / (3.0 * sigma_t * L)) * 0.5 * (1.0 - np.exp(-2 * half))
    return Q / ((1.0 - c) * sigma_t) * (1.0 - num / den)
