import math

import numpy as np
import pytest

from nonclassical_sn.quadrature import AngularQuadrature, gauss_legendre


def test_two_point_rule():
    nodes, weights = gauss_legendre(2)
    np.testing.assert_allclose(nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-15)
    np.testing.assert_allclose(weights, [1.0, 1.0], rtol=1e-15)


def test_one_point_rule():
    nodes, weights = gauss_legendre(1)
    assert nodes[0] == pytest.approx(0.0, abs=1e-16)
    assert weights[0] == pytest.approx(2.0)


def test_sixteen_points_exact_to_degree_31():
    nodes, weights = gauss_legendre(16)
    assert np.dot(weights, nodes**30) == pytest.approx(2 / 31, rel=1e-12)
    assert abs(np.dot(weights, nodes**31)) < 1e-14


@pytest.mark.parametrize("n", [1, 5, 64, 512])
def test_mapped_weights_sum_to_length(n):
    nodes, weights = gauss_legendre(n, 0.0, 300.0)
    assert weights.sum() == pytest.approx(300.0, rel=1e-13)
    assert nodes.min() > 0.0 and nodes.max() < 300.0


def test_invalid_rules():
    with pytest.raises(ValueError):
        gauss_legendre(0)
    with pytest.raises(ValueError):
        gauss_legendre(4, 1.0, 1.0)
    with pytest.raises(ValueError):
        gauss_legendre(513)


@pytest.mark.parametrize("N", [2, 8, 16, 64])
def test_angular_set(N):
    quad = AngularQuadrature.gauss_legendre(N)
    half = N // 2
    assert quad.weights.sum() == pytest.approx(2.0, abs=1e-13)
    assert np.all(quad.mu[:half] > 0) and np.all(quad.mu[half:] < 0)
    np.testing.assert_allclose(quad.mu[half:], -quad.mu[:half], rtol=1e-15)
    assert abs(np.dot(quad.weights, quad.mu)) < 1e-13
    assert np.dot(quad.weights, quad.mu**2) == pytest.approx(2 / 3, abs=1e-13)


@pytest.mark.parametrize("N", [0, 3, 7])
def test_angular_set_requires_even_order(N):
    with pytest.raises(ValueError, match="even"):
        AngularQuadrature.gauss_legendre(N)
