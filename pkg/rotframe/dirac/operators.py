"""Low-energy Dirac operator in the rotating frame and its Pauli limit.

The Hamiltonian form used for the 4-spinor realization is

    H_D = m c^2 (beta - 1) + V + c alpha.(p - m A / 2) + i c beta alpha.(hbar E / 2)
    V   = m A0 - {A.p}/2 + 3 m |A|^2 / 8 [+ m w^2 |x|^2 / 2]

Eliminating the lower components to leading order in 1/m gives
(p - m A - S x E)^2 / 2m + m A0 - Omega.S up to O(v^2/c^2) and the constant
Darwin shift. The beta on the E coupling makes the operator Hermitian; on the
upper-component row it coincides with the bare (i/2) alpha.E coupling. The
3 m |A|^2 / 8 term restores the centrifugal balance of the two-spinor form.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ..core import Grid, PreconditionError, RotationSetup
from ..core.operators import (
    Matrix,
    check_dense_size,
    hermiticity_residual,
    momentum_matrices,
    multiplication,
    with_spin,
)
from ..core.spin import IDENTITY2, levi_civita, spin_matrices
from ..dynamics.hamiltonian import efield, lowest_eigenvalues
from .gamma import ALPHA, BETA
from .metric import WeakMetric, check_weak_field, spacetime_points

_LOGGER = logging.getLogger(__name__)

CENTRIFUGAL_COMPLETION = 3.0 / 8.0


@dataclasses.dataclass(frozen=True)
class EffectiveFields:
    """E(x) = Omega^2 x / c^2 and the Darwin constant -3 hbar^2 Omega^2 / (8 m c^2)."""

    setup: RotationSetup
    darwin: float
    divergence: float

    def efield(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return efield(self.setup, points)

    def metric_gradient(self, metric: WeakMetric, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """-grad(h_00) / 2, the field as read off the metric."""
        return -0.5 * metric.dh(points)[..., 0, 0, 1:]


def effective_fields(setup: RotationSetup) -> EffectiveFields:
    omega2 = setup.omega_norm**2
    c2 = setup.c**2
    return EffectiveFields(
        setup=setup,
        darwin=-3.0 * setup.hbar**2 * omega2 / (8.0 * setup.mass * c2),
        divergence=3.0 * omega2 / c2,
    )


def _metric_potentials(metric: WeakMetric, setup: RotationSetup, grid: Grid):
    """(A, A0) read off the metric: A = -c h_0i, A0 = c^2 h_00 / 2."""
    points = spacetime_points(grid, 0.0, setup.c)
    check_weak_field(metric, points)
    h = metric.h(points)
    return -setup.c * h[..., 0, 1:], 0.5 * setup.c**2 * h[..., 0, 0]


def dirac_hamiltonian_matrix(
    setup: RotationSetup,
    metric: WeakMetric,
    grid: Grid,
    trap_frequency: float = 0.0,
) -> Matrix:
    check_dense_size(grid, 4)
    m, c, hbar = setup.mass, setup.c, setup.hbar
    avec, a0 = _metric_potentials(metric, setup, grid)
    positions = grid.positions()
    field = 0.5 * hbar * efield(setup, positions)
    momenta = momentum_matrices(grid, hbar)

    even = m * a0 + CENTRIFUGAL_COMPLETION * m * np.sum(avec**2, axis=-1)
    even = even + 0.5 * m * trap_frequency**2 * np.sum(positions**2, axis=-1)
    scalar = multiplication(even)
    for axis in range(3):
        coupling = multiplication(avec[..., axis]) @ momenta[axis]
        scalar = scalar - 0.25 * (coupling + coupling.conj().T)

    result = m * c**2 * with_spin(BETA - np.eye(4), np.eye(grid.size)) + with_spin(np.eye(4), scalar)
    for axis in range(3):
        kinetic = momenta[axis] - 0.5 * m * multiplication(avec[..., axis])
        result = result + c * with_spin(ALPHA[axis], kinetic)
        result = result + c * with_spin(1j * BETA @ ALPHA[axis], multiplication(field[..., axis]))
    return result


@dataclasses.dataclass(frozen=True)
class DiracOperator:
    setup: RotationSetup
    grid: Grid
    hamiltonian: Matrix
    darwin: float

    def kernel_form(self, energy: float) -> Matrix:
        """gamma^0 (E - H_D); stationary states at energy E span its kernel."""
        identity = np.eye(self.hamiltonian.shape[0])
        return with_spin(BETA, np.eye(self.grid.size)) @ (energy * identity - self.hamiltonian)

    def hermiticity_residual(self) -> float:
        return hermiticity_residual(self.hamiltonian)

    def spectrum(self) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.complex128]]:
        return scipy.linalg.eigh(self.hamiltonian)

    def upper_weight(self, vectors: npt.NDArray[np.complex128]) -> npt.NDArray[np.float64]:
        """Probability in the two upper spinor components, per eigenvector column."""
        upper = 2 * self.grid.size
        return np.sum(np.abs(vectors[:upper]) ** 2, axis=0)


def low_energy_dirac_operator(
    setup: RotationSetup,
    metric: WeakMetric,
    grid: Grid,
    trap_frequency: float = 0.0,
) -> DiracOperator:
    """Rest-mass phase already removed, energies are measured from m c^2."""
    matrix = dirac_hamiltonian_matrix(setup, metric, grid, trap_frequency)
    return DiracOperator(setup, grid, matrix, effective_fields(setup).darwin)


def upper_component_eigenvalues(operator: DiracOperator, count: int) -> npt.NDArray[np.float64]:
    """Lowest `count` positive-branch energies, those above -m c^2."""
    energies, vectors = operator.spectrum()
    threshold = -operator.setup.mass * operator.setup.c**2
    branch = energies > threshold
    weights = operator.upper_weight(vectors)[branch]
    selected = energies[branch][:count]
    _LOGGER.debug("Upper-component weights of selected states: %s", weights[:count].round(6).tolist())
    return selected


@dataclasses.dataclass(frozen=True)
class PauliHamiltonian:
    """Two-spinor operator left after eliminating the lower Dirac components.

    `hamiltonian` holds (p - m A - S x E)^2 / 2m + m A0 - Omega.S [+ trap];
    the constant Darwin shift is kept apart in `darwin`.
    """

    setup: RotationSetup
    grid: Grid
    hamiltonian: Matrix
    darwin: float
    omega: npt.NDArray[np.float64]

    def matrix(self, include_darwin: bool = False) -> Matrix:
        if not include_darwin:
            return self.hamiltonian
        return self.hamiltonian + self.darwin * np.eye(self.hamiltonian.shape[0])

    def hermiticity_residual(self) -> float:
        return hermiticity_residual(self.hamiltonian)


def metric_rotation(metric: WeakMetric, setup: RotationSetup, grid: Grid) -> npt.NDArray[np.float64]:
    """Frame rotation curl(A) / 2 with A = -c h_0i, required uniform over the grid."""
    points = spacetime_points(grid, 0.0, setup.c)
    # gradient[..., i, j] = d_j A_i
    gradient = -setup.c * metric.dh(points)[..., 0, 1:, 1:]
    curl = np.einsum("kij,...ji->...k", levi_civita(), gradient)
    rotation = 0.5 * curl.reshape(-1, 3)
    omega = rotation.mean(axis=0)
    spread = float(np.max(np.abs(rotation - omega)))
    if spread > 1e-9 * max(1.0, float(np.max(np.abs(omega)))):
        raise PreconditionError(f"the metric does not describe a uniform rotation, curl varies by {spread:.3g}")
    return omega


def pauli_reduction(
    setup: RotationSetup,
    metric: WeakMetric,
    grid: Grid,
    trap_frequency: float = 0.0,
    include_spin_orbit: bool = True,
) -> PauliHamiltonian:
    """Leading 1/m reduction of the Dirac operator, with every field read off `metric`.

    A = -c h_0i, A0 = c^2 h_00 / 2, Omega = curl(A) / 2 and E = |Omega|^2 x / c^2.
    """
    omega = metric_rotation(metric, setup, grid)
    if not np.allclose(omega, setup.omega, rtol=1e-12, atol=1e-12):
        raise PreconditionError(
            f"metric rotation {omega.tolist()} differs from setup omega {setup.omega.tolist()}"
        )
    check_dense_size(grid, 2)
    avec, a0 = _metric_potentials(metric, setup, grid)
    m, hbar = setup.mass, setup.hbar
    positions = grid.positions()
    spin = spin_matrices(hbar)
    momenta = momentum_matrices(grid, hbar)

    coupled = [with_spin(IDENTITY2, momenta[a] - m * multiplication(avec[..., a])) for a in range(3)]
    if include_spin_orbit:
        field = float(omega @ omega) * positions / setup.c**2
        eps = levi_civita()
        for a, b, c in itertools.permutations(range(3)):
            coupled[a] = coupled[a] - eps[a, b, c] * with_spin(spin[b], multiplication(field[..., c]))
    result = sum(pi @ pi for pi in coupled) / (2.0 * m)
    potential = m * a0 + 0.5 * m * trap_frequency**2 * np.sum(positions**2, axis=-1)
    result = result + with_spin(IDENTITY2, multiplication(potential))
    result = result - with_spin(np.einsum("k,kij->ij", omega, spin), np.eye(grid.size))

    darwin = effective_fields(setup).darwin
    _LOGGER.debug("Pauli reduction with Darwin constant %.6g", darwin)
    return PauliHamiltonian(setup, grid, result, darwin, omega)


def weakfield_schrodinger_hamiltonian(metric: WeakMetric, setup: RotationSetup, grid: Grid) -> Matrix:
    """(p + m c h_0i)^2 / 2m + m c^2 h_00 / 2 as a dense matrix."""
    check_dense_size(grid, 1)
    m, c = setup.mass, setup.c
    points = spacetime_points(grid, 0.0, c)
    check_weak_field(metric, points)
    h = metric.h(points)
    momenta = momentum_matrices(grid, setup.hbar)
    result = multiplication(0.5 * m * c**2 * h[..., 0, 0])
    for axis in range(3):
        shifted = momenta[axis] + multiplication(m * c * h[..., 0, 1 + axis])
        result = result + shifted @ shifted / (2.0 * m)
    return result


def pauli_limit_budget(setup: RotationSetup, grid: Grid, trap_frequency: float = 0.0) -> float:
    """Expected relative size of neglected terms: (p/mc)^2 + (max |Omega x x| / c)^2.

    p is the trap momentum sqrt(m hbar w) when trapped, else the lowest grid momentum.
    """
    if trap_frequency > 0:
        momentum = np.sqrt(setup.mass * setup.hbar * trap_frequency)
    else:
        momentum = 2.0 * np.pi * setup.hbar / max(grid.extent)
    frame = setup.light_speed_fraction(grid.positions().reshape(-1, 3))
    return float((momentum / (setup.mass * setup.c)) ** 2 + frame**2)


@dataclasses.dataclass(frozen=True)
class PauliComparison:
    dirac: npt.NDArray[np.float64]
    pauli: npt.NDArray[np.float64]
    budget: float
    darwin: float
    operator: DiracOperator | None = None

    @property
    def deviation(self) -> float:
        """max |E_dirac - E_pauli| relative to the largest |E_pauli| compared."""
        scale = float(np.max(np.abs(self.pauli)))
        difference = float(np.max(np.abs(self.dirac - self.pauli)))
        return difference / scale if scale > 0 else difference

    @property
    def within_budget(self) -> bool:
        return self.deviation <= self.budget


def compare_pauli_limit(
    setup: RotationSetup,
    metric: WeakMetric,
    grid: Grid,
    states: int,
    trap_frequency: float = 0.0,
) -> PauliComparison:
    operator = low_energy_dirac_operator(setup, metric, grid, trap_frequency)
    dirac = upper_component_eigenvalues(operator, states)
    reduction = pauli_reduction(setup, metric, grid, trap_frequency)
    pauli = lowest_eigenvalues(reduction.matrix(include_darwin=True), states)
    count = min(len(dirac), len(pauli))
    comparison = PauliComparison(
        dirac=dirac[:count],
        pauli=pauli[:count],
        budget=pauli_limit_budget(setup, grid, trap_frequency),
        darwin=reduction.darwin,
        operator=operator,
    )
    _LOGGER.info(
        "Pauli limit: deviation %.3g against budget %.3g over %d states",
        comparison.deviation,
        comparison.budget,
        count,
    )
    return comparison
