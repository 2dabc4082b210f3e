from __future__ import annotations

import dataclasses
import logging

import numpy as np
import numpy.typing as npt
import scipy.linalg

from .. import NONRELATIVISTIC_FRACTION
from ..core import GaugeField, Grid, PreconditionError, RotationSetup
from ..core.operators import (
    Matrix,
    angular_momentum_matrices,
    check_dense_size,
    momentum_matrices,
    multiplication,
    with_spin,
)
from ..core.spin import IDENTITY2, levi_civita, spin_matrices

_LOGGER = logging.getLogger(__name__)


def efield(setup: RotationSetup, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Centrifugal analog of an electric field, Omega^2 x / c^2."""
    return setup.omega_norm**2 * np.asarray(points, dtype=np.float64) / setup.c**2


@dataclasses.dataclass(frozen=True)
class RotatingHamiltonian:
    """H = (p - m A)^2 / 2m + m A0 [- Omega.S] [spin-orbit] [+ m w^2 x^2 / 2].

    With spin-orbit on, p - m A becomes p - m A - S x E with E = Omega^2 x / c^2.
    """

    setup: RotationSetup
    field: GaugeField
    include_spin: bool = False
    include_spin_orbit: bool = False
    trap_frequency: float = 0.0
    grid: Grid | None = None

    def __post_init__(self):
        if self.trap_frequency < 0:
            raise PreconditionError(f"trap_frequency must be >= 0, got {self.trap_frequency}")
        if self.include_spin_orbit and np.any(self.field.velocity):
            raise PreconditionError("spin-orbit coupling needs the rotating gauge field, not a boost")

    @property
    def components(self) -> int:
        return 2 if self.spinful else 1

    @property
    def spinful(self) -> bool:
        return self.include_spin or self.include_spin_orbit

    @property
    def spin_orbit_strength(self) -> float:
        """kappa in -kappa S.L, equal to Omega^2 / (m c^2)."""
        if not self.include_spin_orbit:
            return 0.0
        return self.setup.omega_norm**2 / (self.setup.mass * self.setup.c**2)

    def with_grid(self, grid: Grid) -> RotatingHamiltonian:
        return dataclasses.replace(self, grid=grid)

    def _grid(self, grid: Grid | None) -> Grid:
        grid = grid or self.grid
        if grid is None:
            raise PreconditionError("a grid is required for a grid realization of the Hamiltonian")
        return grid

    def scalar_potential(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Pointwise scalar part of the grouped form: trap plus hbar^2 E^2 / 4m."""
        points = np.asarray(points, dtype=np.float64)
        m = self.setup.mass
        potential = 0.5 * m * self.trap_frequency**2 * np.sum(points**2, axis=-1)
        potential = potential - 0.5 * m * float(self.field.velocity @ self.field.velocity)
        if self.include_spin_orbit:
            e = efield(self.setup, points)
            potential = potential + self.setup.hbar**2 * np.sum(e**2, axis=-1) / (4.0 * m)
        return potential

    def spin_field(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Vector b(x) of the pointwise spin term b(x).S."""
        points = np.asarray(points, dtype=np.float64)
        b = np.zeros(points.shape)
        if self.include_spin:
            b = b - self.setup.omega
        if self.include_spin_orbit:
            omega = self.setup.omega
            swirl = np.cross(points, np.cross(omega, points))
            b = b + self.setup.omega_norm**2 * swirl / self.setup.c**2
        return b

    def matrix(self, grid: Grid | None = None) -> Matrix:
        """Dense realization from the minimally coupled form."""
        grid = self._grid(grid)
        check_dense_size(grid, self.components)
        setup = self.setup
        m = setup.mass
        points = grid.positions()
        spin = spin_matrices(setup.hbar) if self.spinful else None
        eye_spin = IDENTITY2 if self.spinful else np.eye(1)

        avec = self.field.avec(points)
        momenta = momentum_matrices(grid, setup.hbar)
        coupled = [with_spin(eye_spin, momenta[a] - m * multiplication(avec[..., a])) for a in range(3)]
        if self.include_spin_orbit:
            e = efield(setup, points)
            eps = levi_civita()
            for a in range(3):
                for b in range(3):
                    for c in range(3):
                        if eps[a, b, c]:
                            coupled[a] = coupled[a] - eps[a, b, c] * with_spin(
                                spin[b], multiplication(e[..., c])
                            )
        result = sum(pi @ pi for pi in coupled) / (2.0 * m)
        potential = m * self.field.a0(points) + 0.5 * m * self.trap_frequency**2 * np.sum(
            points**2, axis=-1
        )
        result = result + with_spin(eye_spin, multiplication(potential))
        if self.include_spin:
            rotation = np.einsum("k,kij->ij", setup.omega, spin)
            result = result - with_spin(rotation, np.eye(grid.size))
        return result

    def grouped_matrix(self, grid: Grid | None = None) -> Matrix:
        """Dense realization of the expanded form p^2/2m - Omega.L + ..."""
        grid = self._grid(grid)
        check_dense_size(grid, self.components)
        setup = self.setup
        m = setup.mass
        points = grid.positions()
        eye_spin = IDENTITY2 if self.spinful else np.eye(1)
        momenta = momentum_matrices(grid, setup.hbar)
        shifted = [momenta[a] - m * self.field.velocity[a] * np.eye(grid.size) for a in range(3)]
        kinetic = sum(p @ p for p in shifted) / (2.0 * m)
        angular = angular_momentum_matrices(grid, setup.hbar)
        rotation = sum(self.field.omega[a] * angular[a] for a in range(3))
        result = with_spin(eye_spin, kinetic - rotation + multiplication(self.scalar_potential(points)))
        if self.spinful:
            spin = spin_matrices(setup.hbar)
            b = self.spin_field(points)
            for a in range(3):
                result = result + with_spin(spin[a], multiplication(b[..., a]))
            kappa = self.spin_orbit_strength
            for a in range(3):
                if kappa:
                    result = result - kappa * with_spin(spin[a], angular[a])
        return result


def build_hamiltonian(
    setup: RotationSetup,
    include_spin: bool = False,
    include_spin_orbit: bool = False,
    grid: Grid | None = None,
    trap_frequency: float = 0.0,
    field: GaugeField | None = None,
) -> RotatingHamiltonian:
    hamiltonian = RotatingHamiltonian(
        setup=setup,
        field=field or GaugeField.rotating(setup),
        include_spin=include_spin,
        include_spin_orbit=include_spin_orbit,
        trap_frequency=trap_frequency,
        grid=grid,
    )
    if grid is not None:
        fraction = setup.light_speed_fraction(grid.positions().reshape(-1, 3))
        if fraction >= NONRELATIVISTIC_FRACTION:
            _LOGGER.warning(
                "Frame speed reaches %.3g c on the grid; the nonrelativistic form is outside "
                "its validity range",
                fraction,
            )
    _LOGGER.debug(
        "Built Hamiltonian: omega=%s spin=%s spin_orbit=%s trap=%s",
        setup.omega.tolist(),
        include_spin,
        include_spin_orbit,
        trap_frequency,
    )
    return hamiltonian


def lowest_eigenvalues(matrix: Matrix, count: int) -> npt.NDArray[np.float64]:
    count = min(count, matrix.shape[0])
    return scipy.linalg.eigh(matrix, eigvals_only=True, subset_by_index=[0, count - 1])
