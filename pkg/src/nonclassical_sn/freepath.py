"""Free-path distributions and the Laguerre kernels built on them.

Two models are supported: the classical exponential distribution and the
nonexponential distribution whose collision-rate density reproduces slab
diffusion with Marshak boundaries. For each model this module provides
the free-path density ``p(s)``, the nonclassical cross section
``Sigma_t(s)`` and the survival function ``exp(-int_0^s Sigma_t)``, all in
closed form.

``compute_moments`` reduces those functions to the two families of
integrals against Laguerre polynomials that the spectral equations need:
scattering moments ``int p(s) L_k(s) ds`` and recovery weights
``int L_m(s) survival(s) ds``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .quadrature import gauss_legendre

SQRT3 = np.sqrt(3.0)


class ModelKind(str, enum.Enum):
    EXPONENTIAL = "exponential"
    DIFFUSION_MIMIC = "diffusion_mimic"


@dataclass(frozen=True)
class FreePathModel:
    """Free-path distribution ``p(s)`` with its cross section and survival.

    Parameters
    ----------
    kind : ModelKind or str
        ``"exponential"`` for ``p = sigma_t exp(-sigma_t s)`` or
        ``"diffusion_mimic"`` for ``p = 3 sigma_t^2 s exp(-sqrt(3) sigma_t s)``.
    sigma_t : float
        Classical total cross section (inverse length), must be positive.
    """

    kind: ModelKind
    sigma_t: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if not self.sigma_t > 0.0:
            raise ValueError(f"sigma_t must be positive, got {self.sigma_t}")

    def p(self, s):
        s = _nonnegative(s)
        st = self.sigma_t
        if self.kind is ModelKind.EXPONENTIAL:
            return st * np.exp(-st * s)
        return 3.0 * st**2 * s * np.exp(-SQRT3 * st * s)

    def sigma(self, s):
        """Nonclassical total cross section ``Sigma_t(s)``."""
        s = _nonnegative(s)
        st = self.sigma_t
        if self.kind is ModelKind.EXPONENTIAL:
            return np.full_like(s, st) if np.ndim(s) else st
        return 3.0 * st**2 * s / (1.0 + SQRT3 * st * s)

    def survival(self, s):
        """``exp(-int_0^s Sigma_t(s') ds')``, evaluated in closed form."""
        s = _nonnegative(s)
        st = self.sigma_t
        if self.kind is ModelKind.EXPONENTIAL:
            return np.exp(-st * s)
        return (1.0 + SQRT3 * st * s) * np.exp(-SQRT3 * st * s)

    def mean_free_path(self) -> float:
        if self.kind is ModelKind.EXPONENTIAL:
            return 1.0 / self.sigma_t
        return 2.0 / (SQRT3 * self.sigma_t)


def p_of_s(model: FreePathModel, s):
    return model.p(s)


def sigma_t_of_s(model: FreePathModel, s):
    return model.sigma(s)


def survival(model: FreePathModel, s):
    return model.survival(s)


def _nonnegative(s):
    s = np.asarray(s, dtype=float) if np.ndim(s) else float(s)
    if np.any(np.asarray(s) < 0.0):
        raise ValueError("free path s must be nonnegative")
    return s


def laguerre_eval(m: int, s):
    """Laguerre polynomial ``L_m(s)`` by upward three-term recurrence.

    Parameters
    ----------
    m : int
        Polynomial order, ``m >= 0``.
    s : float or array_like
        Nonnegative evaluation points.

    Returns
    -------
    float or numpy.ndarray
        ``L_m(s)`` with the shape of ``s``.
    """
    if m < 0:
        raise ValueError(f"Laguerre order must be nonnegative, got {m}")
    table = laguerre_table(m, s)
    out = table[m]
    return float(out) if np.ndim(s) == 0 else out


def laguerre_table(M: int, s) -> np.ndarray:
    """All of ``L_0 .. L_M`` at ``s``; returns shape ``(M + 1,) + shape(s)``.

    Uses ``(m+1) L_{m+1} = (2m+1-s) L_m - m L_{m-1}``.
    """
    s = np.asarray(s, dtype=float)
    if np.any(s < 0.0):
        raise ValueError("Laguerre argument s must be nonnegative")
    table = np.empty((M + 1,) + s.shape)
    table[0] = 1.0
    if M >= 1:
        table[1] = 1.0 - s
    for m in range(1, M):
        table[m + 1] = ((2 * m + 1 - s) * table[m] - m * table[m - 1]) / (m + 1)
    return table


@dataclass(frozen=True)
class FreePathQuadrature:
    """Gauss-Legendre rule on the truncated free-path domain ``[0, s_max]``."""

    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def truncated(cls, slab_length: float, n_nodes: int, factor: float = 1.5):
        """Rule on ``[0, factor * slab_length]`` with ``n_nodes`` points."""
        if n_nodes < 1:
            raise ValueError(f"free-path quadrature needs at least one node, got {n_nodes}")
        upper = factor * slab_length
        if not upper > 0.0:
            raise ValueError("free-path integration domain is empty")
        nodes, weights = gauss_legendre(n_nodes, 0.0, upper)
        return cls(nodes, weights)


@dataclass(frozen=True)
class MomentCoefficients:
    """Laguerre integrals shared by the sweep source and the flux recovery.

    Attributes
    ----------
    scattering : numpy.ndarray
        ``c_k = int p(s) L_k(s) ds`` for ``k = 0..M``.
    recovery : numpy.ndarray
        ``r_m = int L_m(s) survival(s) ds`` for ``m = 0..M`` (length units).
    """

    scattering: np.ndarray
    recovery: np.ndarray

    @property
    def order(self) -> int:
        return len(self.scattering) - 1


def compute_moments(model: FreePathModel, M: int, quad: FreePathQuadrature) -> MomentCoefficients:
    if M < 0:
        raise ValueError(f"expansion order must be nonnegative, got {M}")
    lag = laguerre_table(M, quad.nodes)
    scattering = lag @ (quad.weights * model.p(quad.nodes))
    recovery = lag @ (quad.weights * model.survival(quad.nodes))
    return MomentCoefficients(scattering, recovery)
