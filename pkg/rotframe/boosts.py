"""Galilei boosts between inertial frames.

Picture i) multiplies the wave function by a phase and relabels the grid;
picture ii) leaves the wave function alone and shifts the momentum operator
by -mV. Both report the same expectation values.
"""

from __future__ import annotations

import dataclasses
import enum
import logging
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
from scipy import fft

from . import NONRELATIVISTIC_FRACTION
from .core import GaugeField, Grid, PreconditionError, WaveState
from .core.grid import gaussian_truncation, pad_vector

_LOGGER = logging.getLogger(__name__)


class PictureTag(enum.Enum):
    WAVEFUNCTION = "wavefunction"
    OPERATOR = "operator"


class Observable(enum.Enum):
    POSITION = "position"
    MOMENTUM = "momentum"
    KINETIC_ENERGY = "kinetic-energy"


@dataclasses.dataclass(frozen=True)
class BoostSpec:
    velocity: npt.NDArray[np.float64]
    mass: float
    time: float = 0.0

    def __post_init__(self):
        velocity = pad_vector(self.velocity)
        if not np.all(np.isfinite(velocity)):
            raise PreconditionError(f"boost velocity must be finite, got {velocity.tolist()}")
        velocity.setflags(write=False)
        object.__setattr__(self, "velocity", velocity)

    def compose(self, other: BoostSpec) -> BoostSpec:
        """Boost by self, then by other; Galilei velocities add."""
        return BoostSpec(self.velocity + other.velocity, self.mass, self.time)


@dataclasses.dataclass(frozen=True)
class MomentumShift:
    shift: npt.NDArray[np.float64]

    def __add__(self, other: MomentumShift) -> MomentumShift:
        return MomentumShift(self.shift + other.shift)

    def apply(self, momentum: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return np.asarray(momentum, dtype=np.float64) + self.shift


def nonrelativistic_check(spec: BoostSpec, c: float) -> bool:
    ratio = float(np.linalg.norm(spec.velocity)) / c
    if ratio >= NONRELATIVISTIC_FRACTION:
        _LOGGER.warning("Boost speed |V|/c = %.3g is outside the Galilei regime", ratio)
        return False
    return True


def boost_gauge_phase(spec: BoostSpec, points: npt.ArrayLike, hbar: float = 1.0):
    """Phase f(x, t) = (-m V.x + m V^2 t / 2) / hbar linking the two pictures."""
    points = np.asarray(points, dtype=np.float64)
    speed2 = float(spec.velocity @ spec.velocity)
    return (-spec.mass * (points @ spec.velocity) + 0.5 * spec.mass * speed2 * spec.time) / hbar


def boosted_grid(grid: Grid, spec: BoostSpec) -> Grid:
    shift = spec.velocity[: grid.dimension] * spec.time
    origin = tuple(np.asarray(grid.origin) - shift)
    return dataclasses.replace(grid, origin=origin)


def boost_wavefunction(state: WaveState, spec: BoostSpec, hbar: float = 1.0) -> WaveState:
    if state.is_spinor:
        raise PreconditionError("boost_wavefunction accepts scalar states only, got a 2-spinor")
    phase = boost_gauge_phase(spec, state.grid.positions(), hbar)
    amplitudes = state.amplitudes * np.exp(1j * phase)[None, ...]
    return WaveState(boosted_grid(state.grid, spec), amplitudes, state.time)


def boost_operator_momentum(spec: BoostSpec) -> MomentumShift:
    return MomentumShift(-spec.mass * spec.velocity)


def _spectral_moment(state: WaveState, offset: npt.NDArray[np.float64], hbar: float, power: int):
    axes = tuple(range(1, state.grid.dimension + 1))
    spectrum = np.sum(np.abs(fft.fftn(state.amplitudes, axes=axes)) ** 2, axis=0)
    total = spectrum.sum()
    momenta = [hbar * k + offset[axis] for axis, k in enumerate(state.grid.wavenumber_mesh())]
    if power == 1:
        result = np.zeros(3)
        for axis, p in enumerate(momenta):
            result[axis] = np.sum(p * spectrum) / total
        return result
    return float(np.sum(sum(p**2 for p in momenta) * spectrum) / total)


def expectation_in_picture(
    state: WaveState,
    spec: BoostSpec,
    observable: Observable,
    picture: PictureTag,
    hbar: float = 1.0,
):
    if state.is_spinor:
        raise PreconditionError("picture comparison accepts scalar states only")
    if np.any(spec.velocity[state.grid.dimension :]):
        raise PreconditionError(
            f"boost velocity {spec.velocity.tolist()} leaves the span of the "
            f"{state.grid.dimension}-D grid"
        )
    if picture is PictureTag.WAVEFUNCTION:
        state = boost_wavefunction(state, spec, hbar)
        offset = np.zeros(3)
    else:
        offset = boost_operator_momentum(spec).shift
    match observable:
        case Observable.POSITION:
            position = state.expectation_position()
            if picture is PictureTag.OPERATOR:
                position = position - spec.velocity * spec.time
            return position
        case Observable.MOMENTUM:
            return _spectral_moment(state, offset, hbar, 1)
        case Observable.KINETIC_ENERGY:
            return _spectral_moment(state, offset, hbar, 2) / (2.0 * spec.mass)


def picture_equivalence_check(
    state: WaveState,
    spec: BoostSpec,
    observable: Observable | str,
    hbar: float = 1.0,
):
    """Expectation values of `observable` computed in picture i) and picture ii)."""
    observable = Observable(observable)
    first = expectation_in_picture(state, spec, observable, PictureTag.WAVEFUNCTION, hbar)
    second = expectation_in_picture(state, spec, observable, PictureTag.OPERATOR, hbar)
    _LOGGER.debug("Picture check %s: %s vs %s", observable.value, first, second)
    return first, second


def transformed_energy(energy: float, momentum: Sequence[float], spec: BoostSpec) -> float:
    momentum = pad_vector(momentum)
    speed2 = float(spec.velocity @ spec.velocity)
    return energy - float(spec.velocity @ momentum) + 0.5 * spec.mass * speed2


def minimal_coupling_form(spec: BoostSpec) -> GaugeField:
    return GaugeField.uniform(spec.velocity)


def free_gaussian(
    grid: Grid,
    center: Sequence[float],
    width: float,
    momentum: Sequence[float] | None,
    mass: float,
    time: float,
    hbar: float = 1.0,
) -> WaveState:
    """Closed-form free evolution of `WaveState.gaussian` after `time`, with the same grid normalization."""
    center = pad_vector(center)
    momentum = pad_vector(momentum)
    wavevector = momentum / hbar
    spread = width**2 + 0.5j * hbar * time / mass
    drift = grid.positions() - center - hbar * wavevector * time / mass
    offset = grid.positions() - center
    exponent = (
        -np.sum(drift**2, axis=-1) / (4.0 * spread)
        + 1j * (offset @ wavevector)
        - 0.5j * hbar * float(wavevector @ wavevector) * time / mass
    )
    prefactor = (2.0 * np.pi * width**2) ** (-grid.dimension / 4.0) * np.sqrt(
        width**2 / spread
    ) ** grid.dimension
    prefactor /= gaussian_truncation(grid, center, width)
    return WaveState(grid, prefactor * np.exp(exponent), time)
