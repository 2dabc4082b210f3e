import logging

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rotframe.core import GaugeField, Grid, PreconditionError, RotationSetup
from rotframe.core.operators import hermiticity_residual
from rotframe.dynamics import build_hamiltonian, efield, lowest_eigenvalues


@pytest.fixture
def small_grid() -> Grid:
    return Grid.centered([6, 6], [0.5, 0.5])


@pytest.mark.parametrize(
    "spin, spin_orbit",
    [(False, False), (True, False), (False, True), (True, True)],
)
def test_coupled_and_grouped_forms_agree(small_grid, spin, spin_orbit):
    setup = RotationSetup(mass=1.3, omega=[0.1, -0.2, 0.3], c=2.0)
    hamiltonian = build_hamiltonian(
        setup, include_spin=spin, include_spin_orbit=spin_orbit, grid=small_grid, trap_frequency=0.7
    )
    coupled = hamiltonian.matrix()
    assert coupled.shape == (36 * hamiltonian.components,) * 2
    assert_allclose(coupled, hamiltonian.grouped_matrix(), rtol=0, atol=1e-10)
    assert hermiticity_residual(coupled) < 1e-12


def test_harmonic_trap_levels():
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, 0.0])
    hamiltonian = build_hamiltonian(setup, grid=Grid.centered([64], [0.25]), trap_frequency=1.0)
    assert_allclose(lowest_eigenvalues(hamiltonian.matrix(), 3), [0.5, 1.5, 2.5], atol=1e-8)


def test_rotation_splits_the_trap_doublet():
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, 0.2])
    hamiltonian = build_hamiltonian(setup, grid=Grid.centered([24, 24], [0.5, 0.5]), trap_frequency=1.0)
    assert_allclose(lowest_eigenvalues(hamiltonian.matrix(), 3), [1.0, 1.8, 2.2], atol=1e-6)


def test_spin_rotation_coupling_shifts_levels():
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, 0.2])
    hamiltonian = build_hamiltonian(
        setup, include_spin=True, grid=Grid.centered([64], [0.25]), trap_frequency=1.0
    )
    assert hamiltonian.spinful
    assert_allclose(lowest_eigenvalues(hamiltonian.matrix(), 4), [0.4, 0.6, 1.4, 1.6], atol=1e-8)


def test_spin_orbit_strength():
    setup = RotationSetup(mass=2.0, omega=[0.0, 0.0, 0.5], c=0.5)
    assert build_hamiltonian(setup, include_spin_orbit=True).spin_orbit_strength == pytest.approx(0.5)
    assert build_hamiltonian(setup).spin_orbit_strength == 0.0
    assert_allclose(efield(setup, [1.0, 2.0, 0.0]), [1.0, 2.0, 0.0])


def test_frame_speed_warning(caplog):
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, 1.0])
    with caplog.at_level(logging.WARNING):
        build_hamiltonian(setup, grid=Grid.centered([8, 8], [0.5, 0.5]))
    assert "Frame speed" in caplog.text


def test_spin_orbit_rejects_boost_field():
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, 0.0])
    with pytest.raises(PreconditionError):
        build_hamiltonian(setup, include_spin_orbit=True, field=GaugeField.uniform([0.1, 0.0, 0.0]))


def test_negative_trap_frequency_is_rejected():
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, 1.0])
    with pytest.raises(PreconditionError):
        build_hamiltonian(setup, trap_frequency=-1.0)


def test_matrix_needs_a_grid(z_rotation):
    with pytest.raises(PreconditionError):
        build_hamiltonian(z_rotation).matrix()
