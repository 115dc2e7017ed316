"""Slab mesh and the linear discontinuous Galerkin transport sweep.

Field layout used throughout the package:

* scalar fields (sources, scalar flux, collision rate) are arrays of shape
  ``(cells, 2)`` holding the left and right nodal values of each cell;
* moment fields are arrays of shape ``(M + 1, N, cells, 2)`` indexed by
  Laguerre moment, ordinate, cell and local node.

The sweep solves, for every ordinate ``mu_n`` and every moment ``m``,

    mu_n d/dx psi_m + sigma psi_m = q - sum_{j<m} psi_j

with vacuum inflow. For the spectral equations ``sigma = 1`` and the
moment cascade is active; the classical solver reuses the same kernel with
``sigma = sigma_t`` and a single moment.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .quadrature import AngularQuadrature


@dataclass(frozen=True)
class SpatialMesh:
    """Uniform mesh of ``cells`` elements on ``[0, X]``."""

    X: float
    cells: int

    def __post_init__(self):
        if not self.X > 0.0:
            raise ValueError(f"slab length must be positive, got {self.X}")
        if self.cells < 1:
            raise ValueError(f"need at least one cell, got {self.cells}")

    @property
    def h(self) -> float:
        return self.X / self.cells

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(0.0, self.X, self.cells + 1)

    @property
    def nodes(self) -> np.ndarray:
        """DG node coordinates, shape ``(cells, 2)``."""
        e = self.edges
        return np.stack([e[:-1], e[1:]], axis=1)

    def constant(self, value: float) -> np.ndarray:
        return np.full((self.cells, 2), float(value))


@numba.njit(cache=True)
def _sweep_kernel(mu, sigma, h, source, n_moments, psi):
    n_angles = mu.shape[0]
    n_cells = source.shape[0]
    inflow = np.empty(n_moments)
    for n in range(n_angles):
        a = abs(mu[n])
        # local 2x2 system on (upwind node, downwind node)
        m_uu = 0.5 * a + sigma * h / 3.0
        m_ud = 0.5 * a + sigma * h / 6.0
        m_du = -0.5 * a + sigma * h / 6.0
        m_dd = 0.5 * a + sigma * h / 3.0
        det = m_uu * m_dd - m_ud * m_du
        if mu[n] > 0.0:
            up, dn, first, step = 0, 1, 0, 1
        else:
            up, dn, first, step = 1, 0, n_cells - 1, -1
        inflow[:] = 0.0
        for k in range(n_cells):
            j = first + k * step
            q_up = source[j, up]
            q_dn = source[j, dn]
            acc_up = 0.0
            acc_dn = 0.0
            for m in range(n_moments):
                qu = q_up - acc_up
                qd = q_dn - acc_dn
                b_u = h * (2.0 * qu + qd) / 6.0 + a * inflow[m]
                b_d = h * (qu + 2.0 * qd) / 6.0
                p_u = (m_dd * b_u - m_ud * b_d) / det
                p_d = (m_uu * b_d - m_du * b_u) / det
                psi[m, n, j, up] = p_u
                psi[m, n, j, dn] = p_d
                inflow[m] = p_d
                acc_up += p_u
                acc_dn += p_d


def cascade_sweep(mesh: SpatialMesh, quad: AngularQuadrature, M: int, source: np.ndarray,
                  sigma: float = 1.0, out: np.ndarray | None = None) -> np.ndarray:
    """One transport sweep over all ordinates and Laguerre moments.

    Parameters
    ----------
    mesh : SpatialMesh
    quad : AngularQuadrature
    M : int
        Highest Laguerre moment; ``M = 0`` gives a plain S_N sweep.
    source : numpy.ndarray
        Isotropic nodal source of shape ``(cells, 2)``.
    sigma : float
        Collision coefficient, 1 for the spectral equations.
    out : numpy.ndarray, optional
        Preallocated ``(M + 1, N, cells, 2)`` array to fill.

    Returns
    -------
    numpy.ndarray
        Moment field ``psi[m, n, cell, node]`` with vacuum inflow.
    """
    if np.any(quad.mu == 0.0):
        raise ValueError("ordinate mu = 0 cannot be swept")
    source = np.ascontiguousarray(source, dtype=float)
    if source.shape != (mesh.cells, 2):
        raise ValueError(f"source shape {source.shape} does not match mesh ({mesh.cells}, 2)")
    if out is None:
        out = np.empty((M + 1, quad.N, mesh.cells, 2))
    _sweep_kernel(quad.mu, float(sigma), mesh.h, source, M + 1, out)
    return out


def scattering_source(field: np.ndarray, quad: AngularQuadrature, scattering_moments: np.ndarray,
                      c: float) -> np.ndarray:
    """``S = (c/2) sum_n w_n sum_k c_k psi_{k,n}`` on the DG nodes."""
    weighted = scattering_moments[:, None] * quad.weights[None, :]
    return 0.5 * c * np.tensordot(weighted, field, axes=([0, 1], [0, 1]))
