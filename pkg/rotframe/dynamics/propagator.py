"""Split-step propagation in the rotating frame.

One step is the symmetric product

    P(dt/2) R(dt/2) K(dt) R(dt/2) P(dt/2)

with K the kinetic term applied in Fourier space, P the pointwise scalar and
spin terms, and R the rotation generated by -(Omega + kappa S).L, realized as
an exact rigid rotation of the samples by three Fourier shears.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import numpy.typing as npt
from scipy import fft

from .. import BOUNDARY_PERIODIC, BOUNDARY_SPONGE, NORM_DRIFT_PER_KILOSTEP
from ..core import Grid, PreconditionError, StabilityError, WaveState, grid_norm
from ..core.spin import SIGMA_X, SIGMA_Y, SIGMA_Z, pauli_exponential
from .hamiltonian import RotatingHamiltonian

_LOGGER = logging.getLogger(__name__)

STABILITY_BOUND = math.pi
SPONGE_FRACTION = 0.1
_MAX_SHEAR_ANGLE = math.pi / 4
BOUNDARY_THRESHOLD = 1e-6

_EIGENBASES = [np.linalg.eigh(sigma)[1][:, ::-1] for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z)]


def _shear(amplitudes, grid: Grid, axis: int, along: int, amount: float):
    """f(..., u, ...) -> f(..., u + amount * v, ...) with u on `axis`, v on `along`."""
    k = grid.wavenumbers()[axis]
    v = grid.axes()[along]
    shape = [1] * amplitudes.ndim
    shape[axis + 1] = k.size
    k = k.reshape(shape)
    shape = [1] * amplitudes.ndim
    shape[along + 1] = v.size
    v = v.reshape(shape)
    spectrum = fft.fft(amplitudes, axis=axis + 1)
    return fft.ifft(spectrum * np.exp(1j * k * amount * v), axis=axis + 1)


def rotate_samples(amplitudes, grid: Grid, axis: int, angle: float):
    """psi(x) -> psi(R(angle) x) with R the right-handed rotation about `axis`.

    Returns the input when the rotation plane is not spanned by the grid.
    """
    u, v = (axis + 1) % 3, (axis + 2) % 3
    if u >= grid.dimension or v >= grid.dimension or angle == 0.0:
        return amplitudes
    pieces = max(1, math.ceil(abs(angle) / _MAX_SHEAR_ANGLE))
    piece = angle / pieces
    t, s = math.tan(0.5 * piece), math.sin(piece)
    for _ in range(pieces):
        amplitudes = _shear(amplitudes, grid, u, v, -t)
        amplitudes = _shear(amplitudes, grid, v, u, s)
        amplitudes = _shear(amplitudes, grid, u, v, -t)
    return amplitudes


def to_rotating_frame(state: WaveState, omega: npt.ArrayLike, time: float) -> WaveState:
    """Relabel a state from the inertial frame into a frame rotating at omega for `time`."""
    omega = np.asarray(omega, dtype=np.float64)
    amplitudes = state.amplitudes
    active = [axis for axis in range(3) if omega[axis]]
    if len(active) > 1:
        raise PreconditionError("frame relabelling supports rotation about a single grid axis")
    for axis in active:
        amplitudes = rotate_samples(amplitudes, state.grid, axis, omega[axis] * time)
    return state.with_amplitudes(amplitudes)


class Propagator:
    def __init__(
        self,
        hamiltonian: RotatingHamiltonian,
        grid: Grid,
        dt: float,
        boundary: str = BOUNDARY_PERIODIC,
        sponge_strength: float = 1.0,
    ):
        if not math.isfinite(dt) or dt <= 0:
            raise PreconditionError(f"dt must be finite and > 0, got {dt}")
        if hamiltonian.grid is not None and not hamiltonian.grid.same_as(grid):
            raise PreconditionError(
                f"state grid {grid.points} does not match the Hamiltonian grid "
                f"{hamiltonian.grid.points}"
            )
        if boundary not in (BOUNDARY_PERIODIC, BOUNDARY_SPONGE):
            raise PreconditionError(f"unknown boundary {boundary!r}")
        self.hamiltonian = hamiltonian
        self.grid = grid
        self.dt = dt
        self.boundary = boundary
        self.warnings: list[str] = []
        self.boundary_fraction = 0.0

        setup = hamiltonian.setup
        hbar, m = setup.hbar, setup.mass
        points = grid.positions()

        shift = m * hamiltonian.field.velocity / hbar
        k2 = sum((k - shift[axis]) ** 2 for axis, k in enumerate(grid.wavenumber_mesh()))
        kinetic = hbar * k2 / (2.0 * m)
        self._kinetic = np.exp(-1j * dt * kinetic)

        potential = hamiltonian.scalar_potential(points)
        self._potential = np.exp(-0.5j * dt * potential / hbar)
        self._spin = None
        spin_rate = 0.0
        if hamiltonian.spinful:
            b = hamiltonian.spin_field(points)
            self._spin = pauli_exponential(-0.25 * dt * b)
            spin_rate = 0.5 * float(np.max(np.linalg.norm(b, axis=-1)))

        self._rotations = self._rotation_schedule()
        self._sponge = None
        if boundary == BOUNDARY_SPONGE:
            self._sponge = np.exp(-sponge_strength * dt * self._sponge_profile())

        self.stability_number = dt * max(
            float(np.max(kinetic)),
            float(np.max(np.abs(potential))) / hbar,
            spin_rate,
        )
        if self.stability_number > STABILITY_BOUND:
            self._warn(
                f"stability number dt*|H|/hbar = {self.stability_number:.3g} exceeds "
                f"{STABILITY_BOUND:.3g}; reduce dt"
            )

    def _warn(self, message: str):
        _LOGGER.warning(message)
        self.warnings.append(message)

    def _rotation_schedule(self) -> list[tuple[int, float, float]]:
        """(axis, frame angle, spin-orbit angle per unit spin) for half a step."""
        hamiltonian = self.hamiltonian
        tau = 0.5 * self.dt
        kappa = hamiltonian.spin_orbit_strength
        hbar = hamiltonian.setup.hbar
        active = []
        for axis in range(3):
            u, v = (axis + 1) % 3, (axis + 2) % 3
            if u >= self.grid.dimension or v >= self.grid.dimension:
                continue
            if hamiltonian.field.omega[axis] or kappa:
                active.append(axis)
        if not active:
            return []
        # symmetric sweep keeps the product second order in dt
        last = active[-1]
        sweep = [(axis, 0.5) for axis in active[:-1]] + [(last, 1.0)]
        sweep += [(axis, 0.5) for axis in reversed(active[:-1])]
        return [
            (axis, weight * tau * hamiltonian.field.omega[axis], weight * tau * kappa * 0.5 * hbar)
            for axis, weight in sweep
        ]

    def _sponge_profile(self) -> npt.NDArray[np.float64]:
        profile = np.zeros(self.grid.points)
        for axis, coordinate in enumerate(self.grid.mesh()):
            low = self.grid.origin[axis]
            extent = self.grid.extent[axis]
            band = SPONGE_FRACTION * extent
            distance = np.minimum(coordinate - low, low + extent - self.grid.spacing[axis] - coordinate)
            ramp = np.clip((band - distance) / band, 0.0, 1.0)
            profile = np.maximum(profile, ramp**2)
        return profile

    def _pointwise(self, amplitudes):
        amplitudes = amplitudes * self._potential
        if self._spin is not None:
            spinor = np.moveaxis(amplitudes, 0, -1)[..., None]
            amplitudes = np.moveaxis((self._spin @ spinor)[..., 0], -1, 0)
        return amplitudes

    def _rotate(self, amplitudes):
        for axis, frame_angle, spin_angle in self._rotations:
            if spin_angle == 0.0 or amplitudes.shape[0] == 1:
                amplitudes = rotate_samples(amplitudes, self.grid, axis, frame_angle)
                continue
            basis = _EIGENBASES[axis]
            local = np.tensordot(basis.conj().T, amplitudes, axes=1)
            local = np.stack(
                [
                    rotate_samples(local[0:1], self.grid, axis, frame_angle + spin_angle)[0],
                    rotate_samples(local[1:2], self.grid, axis, frame_angle - spin_angle)[0],
                ]
            )
            amplitudes = np.tensordot(basis, local, axes=1)
        return amplitudes

    def _kinetic_step(self, amplitudes):
        axes = tuple(range(1, self.grid.dimension + 1))
        return fft.ifftn(fft.fftn(amplitudes, axes=axes) * self._kinetic, axes=axes)

    def step(self, amplitudes):
        amplitudes = self._pointwise(amplitudes)
        amplitudes = self._rotate(amplitudes)
        amplitudes = self._kinetic_step(amplitudes)
        amplitudes = self._rotate(amplitudes)
        amplitudes = self._pointwise(amplitudes)
        if self._sponge is not None:
            amplitudes = amplitudes * self._sponge
        return amplitudes

    def evolve(self, state: WaveState, steps: int) -> WaveState:
        if steps < 0:
            raise PreconditionError(f"steps must be >= 0, got {steps}")
        if steps == 0:
            return state
        if not state.grid.same_as(self.grid):
            raise PreconditionError(
                f"state grid {state.grid.points} does not match propagator grid {self.grid.points}"
            )
        if self.hamiltonian.spinful and not state.is_spinor:
            raise PreconditionError("spin terms are on; the state must be a 2-spinor")
        initial = grid_norm(state)
        amplitudes = np.array(state.amplitudes)
        for _ in range(steps):
            amplitudes = self.step(amplitudes)
        if not np.all(np.isfinite(amplitudes)):
            raise StabilityError(f"non-finite amplitudes after {steps} steps of dt={self.dt}")
        result = WaveState(self.grid, amplitudes, state.time + steps * self.dt)
        self.check_boundary(result)
        if self.boundary == BOUNDARY_PERIODIC:
            self.check_norm(initial, grid_norm(result), steps)
        return result

    def check_boundary(self, state: WaveState, threshold: float = BOUNDARY_THRESHOLD) -> bool:
        density = state.density() * self.grid.weights()
        total = float(density.sum())
        fraction = float(density[self.grid.boundary_mask()].sum()) / total if total else 0.0
        self.boundary_fraction = max(self.boundary_fraction, fraction)
        if fraction > threshold:
            self._warn(f"probability {fraction:.3g} reached the grid boundary at t={state.time:.6g}")
            return True
        return False

    def check_norm(self, before: float, after: float, steps: int):
        drift = abs(after - before) / before
        allowed = NORM_DRIFT_PER_KILOSTEP * max(1.0, steps / 1000.0)
        _LOGGER.debug("Norm drift %.3g over %d steps", drift, steps)
        if drift > allowed:
            raise StabilityError(f"norm drifted by {drift:.3g} over {steps} steps (allowed {allowed:.3g})")


def propagate(
    state: WaveState,
    hamiltonian: RotatingHamiltonian,
    dt: float,
    steps: int,
    boundary: str = BOUNDARY_PERIODIC,
) -> WaveState:
    if steps == 0:
        return state
    return Propagator(hamiltonian, state.grid, dt, boundary).evolve(state, steps)
