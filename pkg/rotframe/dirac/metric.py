"""Weak metric perturbations, vierbeins, spin connections and gauge shifts.

Fields are evaluated at coordinate points X of shape (..., 4) holding
(x^0, x, y, z) with x^0 = c t. Derivative arrays carry the differentiation
index last: dh[..., mu, nu, lam] = d h_{mu nu} / d x^lam.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
from collections.abc import Callable

import numpy as np
import numpy.typing as npt

from ..core import GaugeRestrictionError, Grid, PreconditionError, RotationSetup, WeakFieldError
from ..core.spin import levi_civita
from .gamma import ETA, lorentz_generators

_LOGGER = logging.getLogger(__name__)

FieldFunction = Callable[[npt.NDArray[np.float64]], npt.NDArray[np.float64]]

WEAK_FIELD_BOUND = 1.0
DEFAULT_FD_STEP = 1e-4
RESTRICTION_TOLERANCE = 1e-12


def _coordinates(points: npt.ArrayLike) -> npt.NDArray[np.float64]:
    points = np.asarray(points, dtype=np.float64)
    if points.shape[-1] != 4:
        raise PreconditionError(f"spacetime points need 4 components, got shape {points.shape}")
    return points


def spacetime_points(grid: Grid, time: float = 0.0, c: float = 1.0) -> npt.NDArray[np.float64]:
    """Grid positions at one instant as (..., 4) coordinates."""
    positions = grid.positions()
    x0 = np.full((*positions.shape[:-1], 1), c * time)
    return np.concatenate([x0, positions], axis=-1)


def finite_difference_derivative(
    field: FieldFunction, points: npt.ArrayLike, step: float = DEFAULT_FD_STEP
) -> npt.NDArray[np.float64]:
    """Central differences of a tensor field along each coordinate, index appended last."""
    points = _coordinates(points)
    slices = []
    for lam in range(4):
        shift = np.zeros(4)
        shift[lam] = step
        slices.append((field(points + shift) - field(points - shift)) / (2.0 * step))
    return np.stack(slices, axis=-1)


@dataclasses.dataclass(frozen=True)
class WeakMetric:
    """g = eta + h with h symmetric; `derivative` falls back to finite differences."""

    perturbation: FieldFunction
    derivative: FieldFunction | None = None
    label: str = "custom"

    def h(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return self.perturbation(_coordinates(points))

    def dh(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        if self.derivative is None:
            return finite_difference_derivative(self.perturbation, points)
        return self.derivative(_coordinates(points))

    def g(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return ETA + self.h(points)

    def symmetry_residual(self, points: npt.ArrayLike) -> float:
        h = self.h(points)
        return float(np.max(np.abs(h - np.swapaxes(h, -1, -2)), initial=0.0))

    def strength(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Pointwise spectral norm of h."""
        return np.linalg.norm(self.h(points), ord=2, axis=(-2, -1))

    def potential(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """(G_0, G) = (h_00 / 2, -h_0i) with G a Cartesian 3-vector."""
        h = self.h(points)
        return np.concatenate([0.5 * h[..., 0:1, 0], -h[..., 0, 1:]], axis=-1)

    def covariant_potential(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """G_mu with the spatial part lowered, so G_mu dx^mu = G_0 dx^0 - G.dx."""
        potential = self.potential(points)
        return potential * np.array([1.0, -1.0, -1.0, -1.0])


def flat_metric() -> WeakMetric:
    def perturbation(points):
        return np.zeros((*points.shape[:-1], 4, 4))

    def derivative(points):
        return np.zeros((*points.shape[:-1], 4, 4, 4))

    return WeakMetric(perturbation, derivative, label="flat")


def rotating_metric(setup: RotationSetup) -> WeakMetric:
    """h_00 = -|Omega x x|^2 / c^2, h_0i = h_i0 = -(Omega x x)_i / c, h_ij = 0."""
    omega = np.array(setup.omega)
    c = setup.c
    # d(Omega x x)_i / dx_j
    shear = np.einsum("ikj,k->ij", levi_civita(), omega) / c

    def perturbation(points):
        u = np.cross(omega, points[..., 1:]) / c
        h = np.zeros((*points.shape[:-1], 4, 4))
        h[..., 0, 0] = -np.sum(u * u, axis=-1)
        h[..., 0, 1:] = -u
        h[..., 1:, 0] = -u
        return h

    def derivative(points):
        u = np.cross(omega, points[..., 1:]) / c
        dh = np.zeros((*points.shape[:-1], 4, 4, 4))
        dh[..., 0, 0, 1:] = -2.0 * u @ shear
        dh[..., 0, 1:, 1:] = -shear
        dh[..., 1:, 0, 1:] = -shear
        return dh

    return WeakMetric(perturbation, derivative, label="rotating")


def check_weak_field(metric: WeakMetric, points: npt.ArrayLike):
    points = _coordinates(points)
    strength = metric.strength(points)
    if np.any(strength >= WEAK_FIELD_BOUND):
        index = np.unravel_index(int(np.argmax(strength)), strength.shape)
        raise WeakFieldError(
            f"|h| = {float(strength[index]):.4g} >= {WEAK_FIELD_BOUND} at grid point {index}, "
            f"x = {points[index].tolist()}"
        )


@dataclasses.dataclass(frozen=True)
class Vierbein:
    """First-order tetrads e^a_mu = delta + h^a_mu / 2 and e^mu_a = delta - h^mu_a / 2."""

    points: npt.NDArray[np.float64]
    e: npt.NDArray[np.float64]
    e_inv: npt.NDArray[np.float64]
    h: npt.NDArray[np.float64]

    def reconstruction_residual(self) -> npt.NDArray[np.float64]:
        """|eta_ab e^a_mu e^b_nu - g_mu_nu| per point."""
        rebuilt = np.einsum("...am,ab,...bn->...mn", self.e, ETA, self.e)
        return np.linalg.norm(rebuilt - (ETA + self.h), ord=2, axis=(-2, -1))

    def identity_residual(self) -> npt.NDArray[np.float64]:
        product = np.einsum("...am,...mb->...ab", self.e, self.e_inv)
        return np.linalg.norm(product - np.eye(4), ord=2, axis=(-2, -1))

    def residual_bound(self) -> npt.NDArray[np.float64]:
        return 0.25 * np.linalg.norm(self.h, ord=2, axis=(-2, -1)) ** 2


def build_vierbein(metric: WeakMetric, points: npt.ArrayLike) -> Vierbein:
    points = _coordinates(points)
    check_weak_field(metric, points)
    h = metric.h(points)
    raised = ETA @ h
    return Vierbein(points, np.eye(4) + 0.5 * raised, np.eye(4) - 0.5 * raised, h)


@dataclasses.dataclass(frozen=True)
class SpinConnection:
    points: npt.NDArray[np.float64]
    gamma: npt.NDArray[np.float64]

    def antisymmetry_residual(self) -> float:
        return float(np.max(np.abs(self.gamma + np.swapaxes(self.gamma, -3, -2)), initial=0.0))

    def covariant_term(self) -> npt.NDArray[np.complex128]:
        """(i/4) Gamma^ab_mu M_ab for each direction mu, shape (..., 4, 4, 4)."""
        generators = lorentz_generators()
        return 0.25j * np.einsum("...abm,abij->...mij", self.gamma, generators)


def connection_from_derivative(dh: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """Gamma_ab_mu = (d_a h_mu_b - d_b h_mu_a) / 2 from dh[mu, nu, lam] = d_lam h_mu_nu."""
    return 0.5 * (np.einsum("...mba->...abm", dh) - np.einsum("...mab->...abm", dh))


def spin_connection(metric: WeakMetric, points: npt.ArrayLike) -> SpinConnection:
    points = _coordinates(points)
    return SpinConnection(points, connection_from_derivative(metric.dh(points)))


@dataclasses.dataclass(frozen=True)
class SmoothGauge:
    """xi_0 = sum a sin(k.X + phi); xi_i = x^0 (twist x x)_i.

    A nonzero twist makes xi_i,0 = (twist x x)_i, time independent but
    nonzero, which breaks the rest-frame restriction.
    """

    wavevectors: npt.NDArray[np.float64]
    amplitudes: npt.NDArray[np.float64]
    phases: npt.NDArray[np.float64]
    twist: npt.NDArray[np.float64] = dataclasses.field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        wavevectors = np.atleast_2d(np.asarray(self.wavevectors, dtype=np.float64))
        if wavevectors.shape[-1] != 4:
            raise PreconditionError(f"gauge wavevectors need 4 components, got {wavevectors.shape}")
        object.__setattr__(self, "wavevectors", wavevectors)
        object.__setattr__(self, "amplitudes", np.asarray(self.amplitudes, dtype=np.float64))
        object.__setattr__(self, "phases", np.asarray(self.phases, dtype=np.float64))
        object.__setattr__(self, "twist", np.asarray(self.twist, dtype=np.float64))

    @staticmethod
    def random(
        rng: np.random.Generator,
        modes: int,
        amplitude: float,
        scale: float = 1.0,
        twist: npt.ArrayLike | None = None,
    ) -> SmoothGauge:
        return SmoothGauge(
            wavevectors=scale * rng.normal(size=(modes, 4)),
            amplitudes=amplitude * rng.uniform(0.5, 1.0, size=modes),
            phases=rng.uniform(0.0, 2.0 * np.pi, size=modes),
            twist=np.zeros(3) if twist is None else np.asarray(twist, dtype=np.float64),
        )

    @property
    def restricted(self) -> bool:
        return not np.any(self.twist)

    def _arguments(self, points):
        return points @ self.wavevectors.T + self.phases

    def xi(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        points = _coordinates(points)
        result = np.zeros(points.shape)
        result[..., 0] = np.sin(self._arguments(points)) @ self.amplitudes
        result[..., 1:] = points[..., :1] * np.cross(self.twist, points[..., 1:])
        return result

    def jacobian(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """J[..., mu, nu] = d xi_mu / d x^nu."""
        points = _coordinates(points)
        result = np.zeros((*points.shape[:-1], 4, 4))
        weights = np.cos(self._arguments(points)) * self.amplitudes
        result[..., 0, :] = weights @ self.wavevectors
        result[..., 1:, 0] = np.cross(self.twist, points[..., 1:])
        rotation = np.einsum("ikj,k->ij", levi_civita(), self.twist)
        result[..., 1:, 1:] = points[..., 0, None, None] * rotation
        return result

    def hessian(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """H[..., mu, nu, lam] = d^2 xi_mu / d x^nu d x^lam."""
        points = _coordinates(points)
        result = np.zeros((*points.shape[:-1], 4, 4, 4))
        weights = -np.sin(self._arguments(points)) * self.amplitudes
        result[..., 0, :, :] = np.einsum("...n,na,nb->...ab", weights, self.wavevectors, self.wavevectors)
        rotation = np.einsum("ikj,k->ij", levi_civita(), self.twist)
        result[..., 1:, 0, 1:] = rotation
        result[..., 1:, 1:, 0] = rotation
        return result

    def rest_frame_violation(self, points: npt.ArrayLike) -> float:
        """max |xi_i,0| over the points."""
        return float(np.max(np.abs(self.jacobian(points)[..., 1:, 0]), initial=0.0))


def check_points(extent: float = 1.0, samples: int = 3) -> npt.NDArray[np.float64]:
    axis = np.linspace(-extent, extent, samples)
    return np.array(list(itertools.product(axis, repeat=4)))


@dataclasses.dataclass(frozen=True)
class GaugeShift:
    """How G_mu moved under a gauge transformation; expected -d_mu xi_0."""

    before: WeakMetric
    after: WeakMetric
    gauge: SmoothGauge

    def shift(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return self.after.covariant_potential(points) - self.before.covariant_potential(points)

    def expected(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return -self.gauge.jacobian(points)[..., 0, :]

    def residual(self, points: npt.ArrayLike) -> float:
        difference = self.shift(points) - self.expected(points)
        return float(np.max(np.abs(difference), initial=0.0))


def gauge_transform_weakfield(
    metric: WeakMetric,
    gauge: SmoothGauge,
    points: npt.ArrayLike | None = None,
    enforce_rest_frame: bool = True,
) -> tuple[WeakMetric, GaugeShift]:
    """h_mu_nu -> h_mu_nu - xi_mu,nu - xi_nu,mu.

    With xi_i,0 = 0 the potential moves as G_mu -> G_mu - d_mu xi_0. The
    restriction is checked at `points` (a default lattice otherwise).
    """
    points_checked = check_points() if points is None else _coordinates(points)
    violation = gauge.rest_frame_violation(points_checked)
    if enforce_rest_frame and violation > RESTRICTION_TOLERANCE:
        raise GaugeRestrictionError(
            f"gauge has xi_i,0 up to {violation:.3g}; it must vanish so the interferometer "
            f"rest frame t^mu ~ delta^mu_0 is kept and the loop phase stays gauge invariant"
        )

    def perturbation(x):
        jacobian = gauge.jacobian(x)
        return metric.h(x) - jacobian - np.swapaxes(jacobian, -1, -2)

    def derivative(x):
        hessian = gauge.hessian(x)
        return metric.dh(x) - hessian - np.swapaxes(hessian, -3, -2)

    transformed = WeakMetric(perturbation, derivative, label=f"{metric.label}+gauge")
    _LOGGER.debug("Gauge transformed %s metric (rest-frame violation %.3g)", metric.label, violation)
    return transformed, GaugeShift(metric, transformed, gauge)
