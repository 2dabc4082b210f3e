"""Interferometric phases acquired in the rotating frame.

Scalar phases are accumulated segment by segment and never wrapped; the value
reduced to [0, 2 pi) is reported next to it. Spin-valued phases are 2x2
unitaries, built either in closed form or as ordered products of exact
per-segment exponentials.
"""

from __future__ import annotations

import dataclasses
import enum
import logging
import math
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt

from . import DEFAULT_ORDERED_STEPS, NORM_TOLERANCE
from .core import (
    ClosedPath,
    OpenPathError,
    PreconditionError,
    RotationSetup,
    SpacetimeLoop,
    SpinOperator,
    enclosed_area,
    pauli_exponential,
)

if TYPE_CHECKING:
    from .dirac.metric import WeakMetric

_LOGGER = logging.getLogger(__name__)

DEFAULT_QUADRATURE_NODES = 16


class PhaseMethod(enum.Enum):
    CLOSED_FORM = "closed_form"
    LINE_INTEGRAL = "line_integral"
    ORDERED_PRODUCT = "ordered_product"


@dataclasses.dataclass(frozen=True)
class PhaseResult:
    method: PhaseMethod
    value: float | None = None
    operator: SpinOperator | None = None
    path_summary: dict | None = None

    def __post_init__(self):
        if self.operator is not None:
            residual = self.operator.unitarity_residual()
            if residual > NORM_TOLERANCE:
                _LOGGER.warning("Phase operator deviates from unitarity by %.3g", residual)

    @property
    def value_mod_2pi(self) -> float | None:
        if self.value is None:
            return None
        return self.value % (2.0 * math.pi)

    @property
    def fringes(self) -> float | None:
        """Phase counted in whole interference fringes."""
        if self.value is None:
            return None
        return self.value / (2.0 * math.pi)

    def to_summary(self) -> dict:
        summary = {
            "value_rad": self.value,
            "value_mod_2pi": self.value_mod_2pi,
            "operator_re": None,
            "operator_im": None,
            "method": self.method.value,
            "path_summary": self.path_summary,
        }
        if self.operator is not None:
            summary["operator_re"] = self.operator.matrix.real.tolist()
            summary["operator_im"] = self.operator.matrix.imag.tolist()
        return summary


def _closed(path) -> ClosedPath:
    if not isinstance(path, ClosedPath):
        raise OpenPathError(f"a closed path is required, got {type(path).__name__}")
    return path


def sagnac_phase(
    path: ClosedPath, setup: RotationSetup, method: PhaseMethod | str = PhaseMethod.CLOSED_FORM
) -> PhaseResult:
    """(m / hbar) times the loop integral of (Omega x x).dl, or 2 m A.Omega / hbar."""
    path = _closed(path)
    method = PhaseMethod(method)
    scale = setup.mass / setup.hbar
    match method:
        case PhaseMethod.CLOSED_FORM:
            value = 2.0 * scale * float(enclosed_area(path) @ setup.omega)
        case PhaseMethod.LINE_INTEGRAL:
            starts, ends = path.refined_segments()
            middle = 0.5 * (starts + ends)
            # exact for a straight segment, the integrand is linear along it
            terms = np.einsum("ij,ij->i", ends - starts, np.cross(setup.omega, middle))
            value = scale * math.fsum(terms)
        case _:
            raise PreconditionError(f"sagnac phase has no {method.value} method")
    _LOGGER.debug("Sagnac phase (%s): %r", method.value, value)
    return PhaseResult(method, value=value, path_summary=path.summary())


def spin_phase_operator(
    setup: RotationSetup,
    time: float,
    method: PhaseMethod | str = PhaseMethod.CLOSED_FORM,
    steps: int = DEFAULT_ORDERED_STEPS,
) -> PhaseResult:
    """exp(i S.Omega t / hbar) = I cos(|Omega| t/2) + i sigma.Omega_hat sin(|Omega| t/2)."""
    if not math.isfinite(time) or time < 0:
        raise PreconditionError(f"time must be finite and >= 0, got {time}")
    method = PhaseMethod(method)
    match method:
        case PhaseMethod.CLOSED_FORM:
            operator = SpinOperator(pauli_exponential(0.5 * time * setup.omega))
        case PhaseMethod.ORDERED_PRODUCT:
            if steps < 1:
                raise PreconditionError(f"steps must be >= 1, got {steps}")
            factor = pauli_exponential(0.5 * (time / steps) * setup.omega)
            matrix = np.eye(2, dtype=np.complex128)
            for _ in range(steps):
                matrix = factor @ matrix
            operator = SpinOperator(matrix)
        case _:
            raise PreconditionError(f"spin phase has no {method.value} method")
    return PhaseResult(method, operator=operator)


def _spin_orbit_angles(path: ClosedPath, setup: RotationSetup) -> npt.NDArray[np.float64]:
    """Per-segment rotation vectors theta with exp(i theta.sigma) the segment factor.

    Along a straight segment a -> b the field Omega^2 x / c^2 is linear, so
    (1/hbar) int dl.(S x E) = (Omega^2 / 2 c^2) (a x b).sigma exactly.
    """
    starts, ends = path.refined_segments()
    coupling = setup.omega_norm**2 / setup.c**2
    return 0.5 * coupling * np.cross(starts, ends)


def spin_orbit_operator(
    path: ClosedPath,
    setup: RotationSetup,
    method: PhaseMethod | str = PhaseMethod.ORDERED_PRODUCT,
) -> PhaseResult:
    """Path-ordered exp((i/hbar) loop integral of dl.(S x E)); later segments act on the left."""
    path = _closed(path)
    method = PhaseMethod(method)
    match method:
        case PhaseMethod.ORDERED_PRODUCT:
            factors = pauli_exponential(_spin_orbit_angles(path, setup))
            matrix = np.eye(2, dtype=np.complex128)
            for factor in factors:
                matrix = factor @ matrix
            operator = SpinOperator(matrix)
        case PhaseMethod.CLOSED_FORM:
            # exp(i 2 Omega^2 A.S / (hbar c^2)), exact for loops in a plane through the axis
            coupling = setup.omega_norm**2 / setup.c**2
            operator = SpinOperator(pauli_exponential(coupling * enclosed_area(path)))
        case _:
            raise PreconditionError(f"spin-orbit operator has no {method.value} method")
    return PhaseResult(method, operator=operator, path_summary=path.summary())


def spin_orbit_scalar_phase(path: ClosedPath, setup: RotationSetup) -> PhaseResult:
    """Omega^2 A / c^2 for a spin polarized +hbar/2 along the area vector."""
    path = _closed(path)
    if not path.is_planar():
        raise PreconditionError("the scalar spin-orbit phase needs a planar path")
    area = float(np.linalg.norm(enclosed_area(path)))
    value = setup.omega_norm**2 * area / setup.c**2
    return PhaseResult(PhaseMethod.CLOSED_FORM, value=value, path_summary=path.summary())


def spin_orbit_eigenphases(
    path: ClosedPath,
    setup: RotationSetup,
    method: PhaseMethod | str = PhaseMethod.ORDERED_PRODUCT,
) -> npt.NDArray[np.float64]:
    """Sorted eigenphases of the spin-orbit operator, +-Omega^2 A / c^2 for planar loops."""
    return spin_orbit_operator(path, setup, method).operator.eigenphases()


def _gauss_legendre(nodes: int) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    points, weights = np.polynomial.legendre.leggauss(nodes)
    return 0.5 * (points + 1.0), 0.5 * weights


def weakfield_phase(
    loop: SpacetimeLoop | ClosedPath,
    metric: WeakMetric,
    setup: RotationSetup,
    nodes: int = DEFAULT_QUADRATURE_NODES,
) -> PhaseResult:
    """-(m c / hbar) times the loop integral of G_mu dx^mu, x^0 = c t.

    A purely spatial `ClosedPath` is taken at t = 0. Each refined segment is
    integrated with Gauss-Legendre quadrature of `nodes` points.
    """
    if isinstance(loop, ClosedPath):
        loop = SpacetimeLoop.at_time(loop)
    if not isinstance(loop, SpacetimeLoop):
        raise OpenPathError(f"a closed spacetime loop is required, got {type(loop).__name__}")
    starts, ends = loop.refined_segments()
    to_coordinates = np.array([setup.c, 1.0, 1.0, 1.0])
    starts, ends = starts * to_coordinates, ends * to_coordinates
    fractions, weights = _gauss_legendre(nodes)
    steps = ends - starts
    samples = starts[:, None, :] + fractions[None, :, None] * steps[:, None, :]
    covariant = metric.covariant_potential(samples)
    integrand = np.einsum("snm,sm->sn", covariant, steps)
    total = math.fsum((integrand * weights).ravel())
    value = -setup.mass * setup.c * total / setup.hbar
    summary = loop.summary()
    return PhaseResult(PhaseMethod.LINE_INTEGRAL, value=value, path_summary=summary)
