import logging
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rotframe.boosts import (
    BoostSpec,
    Observable,
    PictureTag,
    boost_gauge_phase,
    boost_operator_momentum,
    boost_wavefunction,
    boosted_grid,
    expectation_in_picture,
    free_gaussian,
    minimal_coupling_form,
    nonrelativistic_check,
    picture_equivalence_check,
    transformed_energy,
)
from rotframe.core import Grid, PreconditionError, RotationSetup, WaveState, grid_norm
from rotframe.dynamics import build_hamiltonian, propagate


def test_compose_adds_velocities():
    first = BoostSpec([0.1, 0.0, 0.0], mass=2.0)
    second = BoostSpec([0.0, -0.2], mass=2.0)
    assert_allclose(first.compose(second).velocity, [0.1, -0.2, 0.0])


def test_boost_rejects_non_finite_velocity():
    with pytest.raises(PreconditionError):
        BoostSpec([float("inf"), 0.0, 0.0], mass=1.0)


def test_nonrelativistic_check_warns(caplog):
    assert nonrelativistic_check(BoostSpec([0.01, 0.0, 0.0], mass=1.0), c=1.0)
    with caplog.at_level(logging.WARNING):
        assert not nonrelativistic_check(BoostSpec([0.2, 0.0, 0.0], mass=1.0), c=1.0)
    assert "Galilei" in caplog.text


def test_minimal_coupling_form():
    field = minimal_coupling_form(BoostSpec([0.3, 0.0, 0.0], mass=1.0))
    assert_allclose(field.avec(np.zeros(3)), [0.3, 0.0, 0.0])
    assert field.a0(np.zeros(3)) == pytest.approx(-0.045)


def test_operator_momentum_shift():
    spec = BoostSpec([0.5, 0.0, -1.0], mass=2.0)
    shift = boost_operator_momentum(spec)
    assert_allclose(shift.apply([1.0, 1.0, 1.0]), [0.0, 1.0, 3.0])
    assert_allclose((shift + shift).shift, [-2.0, 0.0, 4.0])


def test_gauge_phase_and_energy():
    spec = BoostSpec([0.5, 0.0, 0.0], mass=2.0, time=3.0)
    assert boost_gauge_phase(spec, np.array([1.0, 7.0, 0.0])) == pytest.approx(-1.0 + 0.75)
    assert transformed_energy(1.0, [2.0], spec) == pytest.approx(1.0 - 1.0 + 0.25)


def test_boosted_grid_moves_origin():
    grid = Grid.centered([8], [0.5])
    moved = boosted_grid(grid, BoostSpec([0.5, 0.0, 0.0], mass=1.0, time=2.0))
    assert moved.origin == (-3.0,)
    assert moved.points == grid.points


def test_spinor_boost_is_rejected():
    grid = Grid.centered([16], [0.5])
    state = WaveState.gaussian(grid, [0.0], 1.0, spinor=[1.0, 0.0])
    with pytest.raises(PreconditionError):
        boost_wavefunction(state, BoostSpec([0.1, 0.0, 0.0], mass=1.0))


def test_free_gaussian_starts_as_the_packet():
    grid = Grid.centered([128], [0.1])
    start = WaveState.gaussian(grid, [0.5], 1.2, momentum=[0.7])
    assert_allclose(free_gaussian(grid, [0.5], 1.2, [0.7], mass=1.0, time=0.0).amplitudes, start.amplitudes)


@pytest.mark.parametrize("observable", list(Observable))
def test_pictures_agree_on_random_states(rng, observable):
    grid = Grid.centered([256], [0.1])
    for _ in range(50):
        state = WaveState.gaussian(
            grid,
            [rng.uniform(-1.5, 1.5)],
            rng.uniform(0.8, 1.2),
            momentum=[rng.uniform(-2.0, 2.0)],
        )
        spec = BoostSpec([rng.uniform(-0.05, 0.05)], mass=rng.uniform(0.5, 2.0), time=rng.uniform(0.0, 2.0))
        first, second = picture_equivalence_check(state, spec, observable)
        assert_allclose(first, second, rtol=1e-8, atol=1e-10)


def test_picture_check_rejects_out_of_plane_boost():
    grid = Grid.centered([32], [0.25])
    state = WaveState.gaussian(grid, [0.0], 1.0)
    with pytest.raises(PreconditionError):
        picture_equivalence_check(state, BoostSpec([0.0, 0.1, 0.0], mass=1.0), "momentum")


@pytest.mark.parametrize("picture", list(PictureTag))
def test_each_picture_matches_the_boosted_packet(rng, picture):
    grid = Grid.centered([256], [0.1])
    for _ in range(20):
        center, width, k = rng.uniform(-1.5, 1.5), rng.uniform(0.8, 1.2), rng.uniform(-2.0, 2.0)
        spec = BoostSpec([rng.uniform(-0.5, 0.5)], mass=rng.uniform(0.5, 2.0), time=rng.uniform(0.0, 2.0))
        state = WaveState.gaussian(grid, [center], width, momentum=[k])
        velocity, mass = spec.velocity[0], spec.mass
        position = expectation_in_picture(state, spec, Observable.POSITION, picture)
        assert_allclose(position, [center - velocity * spec.time, 0.0, 0.0], atol=1e-8)
        momentum = expectation_in_picture(state, spec, Observable.MOMENTUM, picture)
        assert_allclose(momentum, [k - mass * velocity, 0.0, 0.0], atol=1e-8)
        kinetic = expectation_in_picture(state, spec, Observable.KINETIC_ENERGY, picture)
        expected = ((k - mass * velocity) ** 2 + 0.25 / width**2) / (2.0 * mass)
        assert kinetic == pytest.approx(expected, rel=1e-8)


def test_energy_identity(rng):
    worst = 0.0
    for _ in range(10_000):
        momentum = rng.uniform(-5.0, 5.0, size=3)
        spec = BoostSpec(rng.uniform(-1.0, 1.0, size=3), mass=rng.uniform(0.5, 2.0))
        relative = momentum - spec.mass * spec.velocity
        energy = transformed_energy(momentum @ momentum / (2.0 * spec.mass), momentum, spec)
        worst = max(worst, abs(energy - relative @ relative / (2.0 * spec.mass)))
    assert worst < 1e-12


def test_boost_is_unitary(rng):
    grid = Grid.centered([128], [0.2])
    for _ in range(20):
        state = WaveState.gaussian(grid, [rng.uniform(-2.0, 2.0)], 1.0, momentum=[rng.uniform(-1.0, 1.0)])
        spec = BoostSpec([rng.uniform(-1.0, 1.0)], mass=rng.uniform(0.5, 2.0), time=rng.uniform(0.0, 3.0))
        assert grid_norm(boost_wavefunction(state, spec)) == pytest.approx(grid_norm(state), abs=1e-12)


def test_plane_wave_loses_m_v_over_hbar():
    grid = Grid.centered([64], [0.25])
    x = grid.axes()[0]
    k = 2.0 * math.pi * 3 / 16.0
    velocity = 2.0 * math.pi / 16.0
    state = WaveState(grid, np.exp(1j * k * x) / 4.0)
    boosted = boost_wavefunction(state, BoostSpec([velocity], mass=1.0))
    assert grid_norm(boosted) == pytest.approx(1.0, abs=1e-12)
    assert_allclose(boosted.amplitudes[0], np.exp(1j * (k - velocity) * x) / 4.0, atol=1e-12)
    assert boosted.expectation_momentum()[0] == pytest.approx(k - velocity, abs=1e-12)


def test_minimal_coupling_route_matches_boosting_afterwards():
    grid = Grid.centered([512], [0.1])
    setup = RotationSetup(mass=1.0, omega=[0.0, 0.0, 0.0])
    spec = BoostSpec([0.4], mass=1.0, time=2.0)
    state = WaveState.gaussian(grid, [-1.0], 1.0, momentum=[0.5])

    free = propagate(state, build_hamiltonian(setup), 0.01, 200)
    boosted = boost_wavefunction(free, spec)
    coupled = propagate(state, build_hamiltonian(setup, field=minimal_coupling_form(spec)), 0.01, 200)

    assert_allclose(coupled.expectation_position(), boosted.expectation_position(), atol=1e-6)
    assert_allclose(coupled.expectation_position(), [-0.8, 0.0, 0.0], atol=1e-6)
    shift = boost_operator_momentum(spec).shift
    assert_allclose(coupled.expectation_momentum() + shift, boosted.expectation_momentum(), atol=1e-6)
    kinetic = expectation_in_picture(coupled, spec, Observable.KINETIC_ENERGY, PictureTag.OPERATOR)
    assert kinetic == pytest.approx(boosted.expectation_kinetic(1.0), abs=1e-6)
