import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rotframe.core import SpinOperator, check_pauli_algebra, pauli_exponential, spin_matrices
from rotframe.core.spin import IDENTITY2, SIGMA_Z, levi_civita


def test_pauli_algebra_holds():
    assert check_pauli_algebra() < 1e-15


def test_levi_civita_signs():
    eps = levi_civita()
    assert eps[0, 1, 2] == 1.0
    assert eps[1, 0, 2] == -1.0
    assert eps[0, 0, 1] == 0.0


def test_spin_matrices_scale_with_hbar():
    assert_allclose(spin_matrices(2.0)[2], SIGMA_Z)


def test_zero_angle_is_identity():
    assert_allclose(pauli_exponential([0.0, 0.0, 0.0]), IDENTITY2)


def test_quarter_turn_about_z():
    assert_allclose(pauli_exponential([0.0, 0.0, math.pi / 2]), 1j * SIGMA_Z, atol=1e-15)


def test_batched_exponentials_are_unitary(rng):
    thetas = rng.uniform(-1.0, 1.0, size=(5, 3))
    factors = pauli_exponential(thetas)
    assert factors.shape == (5, 2, 2)
    for theta, factor in zip(thetas, factors):
        operator = SpinOperator(factor)
        assert operator.unitarity_residual() < 1e-14
        assert_allclose(np.linalg.det(factor), 1.0, atol=1e-14)
        assert_allclose(np.abs(operator.eigenphases()), np.linalg.norm(theta), atol=1e-12)


def test_operator_algebra():
    rotation = SpinOperator(pauli_exponential([0.0, 0.0, 0.3]))
    assert rotation.dagger().distance(SpinOperator(pauli_exponential([0.0, 0.0, -0.3]))) < 1e-15
    assert (rotation @ rotation.dagger()).distance(SpinOperator.identity()) < 1e-15
    assert_allclose(rotation.eigenphases(), [-0.3, 0.3], atol=1e-15)


def test_operator_shape_is_checked():
    with pytest.raises(ValueError):
        SpinOperator(np.eye(3))
