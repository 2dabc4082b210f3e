import numpy as np
import pytest
from numpy.testing import assert_allclose

from rotframe.core import GaugeRestrictionError, RotationSetup, SpacetimeLoop, WeakFieldError
from rotframe.core.spin import pauli_matrices
from rotframe.dirac import (
    SmoothGauge,
    anticommutator_residual,
    build_vierbein,
    finite_difference_derivative,
    flat_metric,
    gauge_transform_weakfield,
    lorentz_generators,
    rotating_metric,
    spin_connection,
)
from rotframe.dirac.gamma import spin_block
from rotframe.phases import weakfield_phase


@pytest.fixture
def setup() -> RotationSetup:
    return RotationSetup(mass=1.0, omega=[0.0, 0.0, 0.3])


@pytest.fixture
def tilted_loop() -> SpacetimeLoop:
    vertices = [[0.0, 0.0, 0.0, 0.0], [0.3, 1.0, 0.0, 0.0], [0.0, 1.0, 1.0, 0.0], [-0.3, 0.0, 1.0, 0.0]]
    return SpacetimeLoop(vertices, subdivisions=4)


def test_clifford_algebra():
    assert anticommutator_residual() < 1e-14


def test_spatial_generators_are_spin_blocks():
    blocks = spin_block(lorentz_generators())
    for sigma, block in zip(pauli_matrices(), blocks):
        expected = np.kron(np.eye(2), sigma)
        assert_allclose(block, expected, atol=1e-14)


def test_rotating_metric_components(setup):
    h = rotating_metric(setup).h(np.array([0.0, 1.0, 2.0, 0.0]))
    assert_allclose(h[0, 0], -0.45)
    assert_allclose(h[0, 1:], [0.6, -0.3, 0.0])
    assert_allclose(h[1:, 0], [0.6, -0.3, 0.0])
    assert_allclose(h[1:, 1:], np.zeros((3, 3)))


def test_analytic_derivative_matches_finite_differences(rng):
    metric = rotating_metric(RotationSetup(mass=1.0, omega=[0.2, -0.1, 0.4], c=1.5))
    points = rng.uniform(-1.0, 1.0, size=(20, 4))
    assert_allclose(metric.dh(points), finite_difference_derivative(metric.h, points), atol=1e-8)


def test_connection_of_a_z_rotation():
    metric = rotating_metric(RotationSetup(mass=1.0, omega=[0.0, 0.0, 0.5], c=2.0))
    connection = spin_connection(metric, np.array([[0.0, 0.3, 0.4, 0.0]]))
    assert connection.gamma[0, 1, 2, 0] == pytest.approx(-0.25)
    assert connection.gamma[0, 2, 1, 0] == pytest.approx(0.25)
    assert connection.antisymmetry_residual() < 1e-15


def test_flat_metric_has_no_connection():
    connection = spin_connection(flat_metric(), np.zeros((3, 4)))
    assert not np.any(connection.gamma)


def test_vierbein_reconstructs_the_metric(setup, rng):
    points = rng.uniform(-1.0, 1.0, size=(50, 4))
    vierbein = build_vierbein(rotating_metric(setup), points)
    bound = vierbein.residual_bound()
    assert np.all(vierbein.reconstruction_residual() <= bound + 1e-12)
    assert np.all(vierbein.identity_residual() <= bound + 1e-12)


def test_strong_field_is_rejected():
    metric = rotating_metric(RotationSetup(mass=1.0, omega=[0.0, 0.0, 1.0]))
    with pytest.raises(WeakFieldError):
        build_vierbein(metric, [[0.0, 2.0, 0.0, 0.0]])


def test_restricted_gauge_keeps_the_loop_phase(setup, tilted_loop, rng):
    metric = rotating_metric(setup)
    reference = weakfield_phase(tilted_loop, metric, setup).value
    for _ in range(10):
        gauge = SmoothGauge.random(rng, 3, 0.1)
        assert gauge.restricted
        transformed, shift = gauge_transform_weakfield(metric, gauge)
        assert shift.residual(tilted_loop.vertices) < 1e-12
        assert weakfield_phase(tilted_loop, transformed, setup).value == pytest.approx(reference, abs=1e-10)


def test_twisted_gauge_is_refused(setup, rng):
    gauge = SmoothGauge.random(rng, 3, 0.1, twist=[0.0, 0.0, 0.01])
    assert not gauge.restricted
    with pytest.raises(GaugeRestrictionError):
        gauge_transform_weakfield(rotating_metric(setup), gauge)


def test_twisted_gauge_moves_the_phase_by_twice_the_flux(setup, unit_square, rng):
    metric = rotating_metric(setup)
    gauge = SmoothGauge.random(rng, 3, 0.1, twist=[0.0, 0.0, 0.01])
    transformed, _ = gauge_transform_weakfield(metric, gauge, enforce_rest_frame=False)
    before = weakfield_phase(unit_square, metric, setup).value
    after = weakfield_phase(unit_square, transformed, setup).value
    assert after - before == pytest.approx(0.02, abs=1e-10)


def test_covariant_term_shape(setup):
    points = np.zeros((2, 4))
    points[:, 1] = [0.5, -0.5]
    term = spin_connection(rotating_metric(setup), points).covariant_term()
    assert term.shape == (2, 4, 4, 4)
    assert np.any(term)
    assert not np.any(spin_connection(flat_metric(), points).covariant_term())
