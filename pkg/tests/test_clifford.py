"""Tests for the Clifford representation"""

import numpy as np
import pytest

from src.clifford.rep import build_clifford_rep, check_rep, clifford_mul, tangential_clifford
from src.core.errors import DimensionMismatchError, InvalidDimensionError, PreconditionError


@pytest.mark.parametrize("n", range(2, 9))
def test_representation_invariants(n):
    rep = build_clifford_rep(n)
    assert rep.spinor_dim == 2 ** (n // 2)
    assert len(rep.gammas) == n
    for key, value in check_rep(rep).items():
        if value is not None:
            assert value < 1e-13, key
    assert rep.has_chirality == (n % 2 == 0)


def test_two_dimensional_convention():
    rep = build_clifford_rep(2)
    X = np.array([[0, 1], [1, 0]])
    Y = np.array([[0, -1j], [1j, 0]])
    Z = np.diag([1, -1])
    np.testing.assert_array_equal(rep.gammas[0], 1j * X)
    np.testing.assert_array_equal(rep.gammas[1], 1j * Y)
    np.testing.assert_array_equal(rep.volume_element, Z)


def test_deterministic_and_read_only():
    a, b = build_clifford_rep(4), build_clifford_rep(4)
    for ga, gb in zip(a.gammas, b.gammas):
        np.testing.assert_array_equal(ga, gb)
    with pytest.raises(ValueError):
        a.gammas[0][0, 0] = 1.0


@pytest.mark.parametrize("n", [0, 1, 17])
def test_invalid_dimension(n):
    with pytest.raises(InvalidDimensionError):
        build_clifford_rep(n)


def test_clifford_multiplication_squares_to_minus_norm():
    rep = build_clifford_rep(3)
    v = np.array([0.3, -1.2, 0.5])
    s = np.array([1.0, 2.0j])
    twice = clifford_mul(rep, v, clifford_mul(rep, v, s))
    np.testing.assert_allclose(twice, -np.dot(v, v) * s, atol=1e-14)


def test_clifford_multiplication_shape_checks():
    rep = build_clifford_rep(3)
    with pytest.raises(DimensionMismatchError):
        clifford_mul(rep, np.ones(2), np.ones(2))
    with pytest.raises(DimensionMismatchError):
        clifford_mul(rep, np.ones(3), np.ones(4))


def test_tangential_clifford():
    rep = build_clifford_rep(3)
    nu = np.array([0.0, 0.0, 1.0])
    x = np.array([1.0, 0.0, 0.0])
    s = np.array([0.6, 0.8j])
    t = tangential_clifford(rep, x, nu, tangential_clifford(rep, x, nu, s))
    np.testing.assert_allclose(t, -s, atol=1e-14)
    # anticommutes with the normal
    left = tangential_clifford(rep, x, nu, clifford_mul(rep, nu, s))
    right = clifford_mul(rep, nu, tangential_clifford(rep, x, nu, s))
    np.testing.assert_allclose(left, -right, atol=1e-14)


def test_tangential_clifford_preconditions():
    rep = build_clifford_rep(2)
    s = np.ones(2)
    with pytest.raises(PreconditionError):
        tangential_clifford(rep, np.array([1.0, 0.0]), np.array([0.0, 2.0]), s)
    with pytest.raises(PreconditionError):
        tangential_clifford(rep, np.array([1.0, 1.0]), np.array([0.0, 1.0]), s)
