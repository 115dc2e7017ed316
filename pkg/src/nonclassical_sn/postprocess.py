"""Classical quantities recovered from the Laguerre moment field."""

from __future__ import annotations

import numpy as np

from .freepath import FreePathModel, MomentCoefficients, laguerre_table
from .quadrature import AngularQuadrature


def _check_order(field: np.ndarray, weights: np.ndarray):
    if field.shape[0] != len(weights):
        raise ValueError(
            f"moment field has {field.shape[0]} moments but coefficients have {len(weights)}"
        )


def classical_angular_flux(field: np.ndarray, coeffs: MomentCoefficients) -> np.ndarray:
    """``Psi_c[n] = sum_m r_m psi[m, n]``; returns shape ``(N, cells, 2)``."""
    _check_order(field, coeffs.recovery)
    return np.tensordot(coeffs.recovery, field, axes=(0, 0))


def scalar_flux(angular: np.ndarray, quad: AngularQuadrature) -> np.ndarray:
    return np.tensordot(quad.weights, angular, axes=(0, 0))


def classical_scalar_flux(field: np.ndarray, quad: AngularQuadrature,
                          recovery: np.ndarray) -> np.ndarray:
    """Scalar flux straight from the moments, ``sum_n w_n sum_m r_m psi[m, n]``."""
    _check_order(field, recovery)
    weighted = recovery[:, None] * quad.weights[None, :]
    return np.tensordot(weighted, field, axes=([0, 1], [0, 1]))


def collision_rate_density(field: np.ndarray, quad: AngularQuadrature,
                           coeffs: MomentCoefficients) -> np.ndarray:
    """``f = sum_n w_n sum_m c_m psi[m, n]``."""
    return classical_scalar_flux(field, quad, coeffs.scattering)


def reconstruct_nonclassical_flux(field: np.ndarray, model: FreePathModel, cell: int, node: int,
                                  angle: int, s):
    """Nonclassical angular flux ``Psi(x, mu_n, s)`` at one DG node.

    Sums the Laguerre series at ``s`` and multiplies by the survival
    function of ``model``. ``s`` may be a scalar or an array.
    """
    moments = field[:, angle, cell, node]
    series = np.tensordot(moments, laguerre_table(len(moments) - 1, s), axes=(0, 0))
    return series * model.survival(s)
