import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rotframe.core import Grid, PreconditionError, RotationSetup, WaveState
from rotframe.dynamics import (
    EhrenfestTrajectory,
    build_hamiltonian,
    classical_trajectory,
    ehrenfest_trajectory,
    mean_velocity,
)


@pytest.fixture
def trapped():
    grid = Grid.centered([64, 64], [0.25, 0.25])
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, 0.3])
    hamiltonian = build_hamiltonian(setup, grid=grid, trap_frequency=1.0)
    state = WaveState.gaussian(grid, [2.0, 0.0], 0.7)
    return hamiltonian, state


def test_mean_follows_the_classical_orbit(trapped):
    hamiltonian, state = trapped
    dt = 0.005
    steps = round(2.0 * math.pi / dt)
    trajectory = ehrenfest_trajectory(state, hamiltonian, dt, steps, sample_every=50)
    assert not trajectory.boundary_hit
    positions, _ = classical_trajectory(
        trajectory.mean_position[0],
        trajectory.mean_velocity[0],
        hamiltonian.field.omega,
        trajectory.times,
        trap_frequency=1.0,
    )
    assert np.max(np.linalg.norm(trajectory.mean_position - positions, axis=1)) < 1e-2


def test_second_difference_obeys_the_force_law(trapped):
    hamiltonian, state = trapped
    trajectory = ehrenfest_trajectory(state, hamiltonian, 0.005, 400, sample_every=10)
    assert len(trajectory.times) == 41
    assert trajectory.ehrenfest_residual() < 5e-3


def test_packet_at_rest_in_the_inertial_frame(trapped):
    hamiltonian, state = trapped
    assert_allclose(mean_velocity(state, hamiltonian), [0.0, -0.6, 0.0], atol=1e-9)


def test_untrapped_packet_at_rest_circles_against_the_rotation():
    grid = Grid.centered([128, 128], [0.2, 0.2])
    omega = 0.5
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, omega])
    hamiltonian = build_hamiltonian(setup, grid=grid)
    radius = 3.0
    state = WaveState.gaussian(grid, [radius, 0.0], 1.0)
    quarter_turn = 0.5 * math.pi / omega
    trajectory = ehrenfest_trajectory(state, hamiltonian, quarter_turn / 300, 300, sample_every=50)
    assert not trajectory.boundary_hit
    angle = -omega * trajectory.times
    expected = radius * np.column_stack([np.cos(angle), np.sin(angle), np.zeros_like(angle)])
    radii = np.linalg.norm(trajectory.mean_position[:, :2], axis=1)
    assert np.max(np.abs(radii - radius)) < 1e-2 * radius
    assert np.max(np.linalg.norm(trajectory.mean_position - expected, axis=1)) < 1e-2 * radius
    assert_allclose(trajectory.mean_position[-1], [0.0, -radius, 0.0], atol=1e-2 * radius)


def test_fictitious_forces():
    trajectory = EhrenfestTrajectory(
        times=[0.0],
        mean_position=np.array([[1.0, 0.0, 0.0]]),
        mean_velocity=np.array([[1.0, 0.0, 0.0]]),
        omega=np.array([0.0, 0.0, 1.0]),
        mass=1.0,
    )
    assert_allclose(trajectory.coriolis_force()[0], [0.0, -2.0, 0.0])
    assert_allclose(trajectory.centrifugal_force()[0], [1.0, 0.0, 0.0])
    assert_allclose(trajectory.predicted_acceleration()[0], [1.0, -2.0, 0.0])


def test_times_must_increase():
    with pytest.raises(PreconditionError):
        EhrenfestTrajectory(
            times=[0.0, 0.0],
            mean_position=np.zeros((2, 3)),
            mean_velocity=np.zeros((2, 3)),
            omega=np.zeros(3),
            mass=1.0,
        )


def test_residual_needs_three_samples():
    trajectory = EhrenfestTrajectory(
        times=[0.0, 1.0],
        mean_position=np.zeros((2, 3)),
        mean_velocity=np.zeros((2, 3)),
        omega=np.zeros(3),
        mass=1.0,
    )
    with pytest.raises(PreconditionError):
        trajectory.ehrenfest_residual()


def test_packet_near_the_edge_is_flagged():
    grid = Grid.centered([32, 32], [0.25, 0.25])
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, 0.3])
    hamiltonian = build_hamiltonian(setup, grid=grid, trap_frequency=1.0)
    state = WaveState.gaussian(grid, [3.0, 0.0], 0.7)
    assert ehrenfest_trajectory(state, hamiltonian, 0.01, 2).boundary_hit


def test_sample_every_must_be_positive(trapped):
    hamiltonian, state = trapped
    with pytest.raises(PreconditionError):
        ehrenfest_trajectory(state, hamiltonian, 0.01, 10, sample_every=0)


@pytest.mark.slow
@pytest.mark.parametrize(
    "center, momentum",
    [([2.0, 0.0], [0.0, 0.0]), ([0.0, 1.5], [0.5, 0.0]), ([-1.0, -1.0], [0.3, -0.3])],
)
def test_one_rotation_period_on_a_fine_grid(center, momentum):
    grid = Grid.centered([128, 128], [0.2, 0.2])
    omega = 0.3
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, omega])
    hamiltonian = build_hamiltonian(setup, grid=grid, trap_frequency=1.0)
    state = WaveState.gaussian(grid, center, 0.7, momentum=momentum)
    dt = 0.01
    trajectory = ehrenfest_trajectory(state, hamiltonian, dt, round(2.0 * math.pi / omega / dt), sample_every=100)
    assert not trajectory.boundary_hit
    positions, _ = classical_trajectory(
        trajectory.mean_position[0],
        trajectory.mean_velocity[0],
        hamiltonian.field.omega,
        trajectory.times,
        trap_frequency=1.0,
    )
    scale = np.max(np.linalg.norm(positions, axis=1))
    assert np.max(np.linalg.norm(trajectory.mean_position - positions, axis=1)) / scale < 1e-2
