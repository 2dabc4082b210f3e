from __future__ import annotations

import dataclasses
import logging

import numpy as np
import numpy.typing as npt
from scipy.integrate import solve_ivp

from ..core import PreconditionError, WaveState
from .hamiltonian import RotatingHamiltonian
from .propagator import BOUNDARY_THRESHOLD, Propagator

_LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class EhrenfestTrajectory:
    times: npt.NDArray[np.float64]
    mean_position: npt.NDArray[np.float64]
    mean_velocity: npt.NDArray[np.float64]
    omega: npt.NDArray[np.float64]
    mass: float
    trap_frequency: float = 0.0
    boundary_hit: bool = False

    def __post_init__(self):
        times = np.asarray(self.times, dtype=np.float64)
        if times.ndim != 1 or len(times) == 0:
            raise PreconditionError("trajectory needs at least one sample time")
        if np.any(np.diff(times) <= 0):
            raise PreconditionError("trajectory sample times must be strictly increasing")
        object.__setattr__(self, "times", times)

    def coriolis_force(self) -> npt.NDArray[np.float64]:
        return 2.0 * self.mass * np.cross(self.mean_velocity, self.omega)

    def centrifugal_force(self) -> npt.NDArray[np.float64]:
        return self.mass * np.cross(self.omega, np.cross(self.mean_position, self.omega))

    def predicted_acceleration(self) -> npt.NDArray[np.float64]:
        total = self.coriolis_force() + self.centrifugal_force()
        return total / self.mass - self.trap_frequency**2 * self.mean_position

    def ehrenfest_residual(self) -> float:
        """Largest deviation of the second difference of <x> from the force law.

        Relative to the largest predicted acceleration; needs uniform sampling.
        """
        if len(self.times) < 3:
            raise PreconditionError("need at least three samples for a second difference")
        steps = np.diff(self.times)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            raise PreconditionError("second differences need uniformly spaced samples")
        h = steps[0]
        x = self.mean_position
        measured = (x[2:] - 2.0 * x[1:-1] + x[:-2]) / h**2
        predicted = self.predicted_acceleration()[1:-1]
        scale = float(np.max(np.linalg.norm(predicted, axis=1)))
        deviation = float(np.max(np.linalg.norm(measured - predicted, axis=1)))
        return deviation / scale if scale > 0 else deviation

    def series(self) -> dict[str, npt.NDArray[np.float64]]:
        columns = {"t": self.times}
        for axis, name in enumerate("xyz"):
            columns[name] = self.mean_position[:, axis]
        for axis, name in enumerate("xyz"):
            columns[f"v{name}"] = self.mean_velocity[:, axis]
        return columns


def mean_velocity(state: WaveState, hamiltonian: RotatingHamiltonian) -> npt.NDArray[np.float64]:
    """<(p - m A)/m> with A linear in x."""
    setup = hamiltonian.setup
    field = hamiltonian.field
    momentum = state.expectation_momentum(setup.hbar)
    position = state.expectation_position()
    return momentum / setup.mass - field.velocity - np.cross(field.omega, position)


def ehrenfest_trajectory(
    state: WaveState,
    hamiltonian: RotatingHamiltonian,
    dt: float,
    steps: int,
    sample_every: int = 1,
    propagator: Propagator | None = None,
) -> EhrenfestTrajectory:
    if sample_every < 1:
        raise PreconditionError(f"sample_every must be >= 1, got {sample_every}")
    propagator = propagator or Propagator(hamiltonian, state.grid, dt)
    times, positions, velocities = [state.time], [state.expectation_position()], [
        mean_velocity(state, hamiltonian)
    ]
    boundary_hit = propagator.check_boundary(state)
    done = 0
    while done < steps:
        chunk = min(sample_every, steps - done)
        state = propagator.evolve(state, chunk)
        done += chunk
        times.append(state.time)
        positions.append(state.expectation_position())
        velocities.append(mean_velocity(state, hamiltonian))
    boundary_hit = boundary_hit or propagator.boundary_fraction > BOUNDARY_THRESHOLD
    if boundary_hit:
        _LOGGER.warning("Packet reached the grid boundary; the trajectory is flagged invalid")
    return EhrenfestTrajectory(
        times=np.asarray(times),
        mean_position=np.asarray(positions),
        mean_velocity=np.asarray(velocities),
        omega=np.array(hamiltonian.field.omega),
        mass=hamiltonian.setup.mass,
        trap_frequency=hamiltonian.trap_frequency,
        boundary_hit=boundary_hit,
    )


def classical_trajectory(
    position: npt.ArrayLike,
    velocity: npt.ArrayLike,
    omega: npt.ArrayLike,
    times: npt.ArrayLike,
    trap_frequency: float = 0.0,
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Integrate x'' = 2 x' x Omega + Omega x (x x Omega) - w^2 x."""
    omega = np.asarray(omega, dtype=np.float64)
    times = np.asarray(times, dtype=np.float64)

    def rhs(_, y):
        x, v = y[:3], y[3:]
        acceleration = 2.0 * np.cross(v, omega) + np.cross(omega, np.cross(x, omega))
        return np.concatenate([v, acceleration - trap_frequency**2 * x])

    start = np.concatenate([np.asarray(position, float), np.asarray(velocity, float)])
    solution = solve_ivp(
        rhs, (times[0], times[-1]), start, t_eval=times, method="DOP853", rtol=1e-11, atol=1e-12
    )
    if not solution.success:
        raise PreconditionError(f"classical integration failed: {solution.message}")
    return solution.y[:3].T, solution.y[3:].T
