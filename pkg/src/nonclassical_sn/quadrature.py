"""Gauss-Legendre rules for the angular and free-path integrals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_ORDER = 512


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0):
    """Gauss-Legendre nodes and weights mapped affinely onto ``[a, b]``.

    Parameters
    ----------
    n : int
        Number of nodes, ``1 <= n <= 512``.
    a, b : float
        Interval end points with ``a < b``.

    Returns
    -------
    nodes, weights : numpy.ndarray
        Ascending nodes and positive weights summing to ``b - a``.
    """
    if n < 1:
        raise ValueError(f"quadrature order must be >= 1, got {n}")
    if n > MAX_ORDER:
        raise ValueError(f"quadrature order {n} exceeds supported maximum {MAX_ORDER}")
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    nodes = half * x + 0.5 * (a + b)
    weights = half * w
    if not (np.all(np.isfinite(nodes)) and np.all(weights > 0.0)):
        raise ArithmeticError(f"Gauss-Legendre construction failed for n={n}")
    return nodes, weights


@dataclass(frozen=True)
class AngularQuadrature:
    """Discrete-ordinates set on ``mu in (-1, 1)``.

    Indices ``0 .. N/2-1`` hold the positive cosines (particles entering
    at ``x = 0``) and ``N/2 .. N-1`` their negatives, in the same order.
    """

    mu: np.ndarray
    weights: np.ndarray

    @classmethod
    def gauss_legendre(cls, N: int) -> "AngularQuadrature":
        if N < 2 or N % 2:
            raise ValueError(f"N must be even, got {N}")
        x, w = gauss_legendre(N)
        pos = x > 0.0
        mu_pos, w_pos = x[pos][::-1], w[pos][::-1]
        return cls(np.concatenate([mu_pos, -mu_pos]), np.concatenate([w_pos, w_pos]))

    @property
    def N(self) -> int:
        return len(self.mu)
