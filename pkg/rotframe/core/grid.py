from __future__ import annotations

import dataclasses
import logging
import math
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
from scipy import fft

from . import InvalidSetupError, PreconditionError

_LOGGER = logging.getLogger(__name__)


def pad_vector(values: Sequence[float] | None) -> npt.NDArray[np.float64]:
    """Embed a 1-, 2- or 3-component vector in 3-D, zero filling the rest."""
    result = np.zeros(3)
    if values is not None:
        values = np.atleast_1d(np.asarray(values, dtype=np.float64))
        if values.size > 3:
            raise InvalidSetupError(f"expected at most 3 components, got {values.size}")
        result[: values.size] = values
    return result


@dataclasses.dataclass(frozen=True)
class Grid:
    """Uniform Cartesian grid; coordinates are origin + index * spacing."""

    origin: tuple[float, ...]
    spacing: tuple[float, ...]
    points: tuple[int, ...]
    periodic: bool = True

    def __post_init__(self):
        origin = tuple(float(v) for v in self.origin)
        spacing = tuple(float(v) for v in self.spacing)
        points = tuple(int(v) for v in self.points)
        if not 1 <= len(points) <= 3:
            raise InvalidSetupError(f"grid dimension must be 1, 2 or 3, got {len(points)}")
        if not len(origin) == len(spacing) == len(points):
            raise InvalidSetupError(
                f"grid origin/spacing/points disagree in length: "
                f"{len(origin)}/{len(spacing)}/{len(points)}"
            )
        for axis, (step, count) in enumerate(zip(spacing, points)):
            if not math.isfinite(step) or step <= 0:
                raise InvalidSetupError(f"grid spacing on axis {axis} must be > 0, got {step}")
            if count < 2:
                raise InvalidSetupError(f"grid needs at least 2 points on axis {axis}, got {count}")
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "points", points)

    @staticmethod
    def centered(points: Sequence[int], spacing: Sequence[float], periodic: bool = True) -> Grid:
        origin = tuple(-0.5 * n * d for n, d in zip(points, spacing))
        return Grid(origin, tuple(spacing), tuple(points), periodic)

    @property
    def dimension(self) -> int:
        return len(self.points)

    @property
    def size(self) -> int:
        return math.prod(self.points)

    @property
    def cell_volume(self) -> float:
        return math.prod(self.spacing)

    @property
    def extent(self) -> tuple[float, ...]:
        return tuple(n * d for n, d in zip(self.points, self.spacing))

    def axes(self) -> list[npt.NDArray[np.float64]]:
        return [o + d * np.arange(n) for o, d, n in zip(self.origin, self.spacing, self.points)]

    def mesh(self) -> list[npt.NDArray[np.float64]]:
        return np.meshgrid(*self.axes(), indexing="ij")

    def positions(self) -> npt.NDArray[np.float64]:
        """Grid points as 3-vectors, shape (*points, 3); missing axes are zero."""
        result = np.zeros(self.points + (3,))
        for axis, coordinate in enumerate(self.mesh()):
            result[..., axis] = coordinate
        return result

    def wavenumbers(self) -> list[npt.NDArray[np.float64]]:
        return [2.0 * np.pi * fft.fftfreq(n, d) for n, d in zip(self.points, self.spacing)]

    def wavenumber_mesh(self) -> list[npt.NDArray[np.float64]]:
        return np.meshgrid(*self.wavenumbers(), indexing="ij")

    def weights(self) -> npt.NDArray[np.float64]:
        """Trapezoid weights; on a periodic grid every point carries a full cell."""
        weights = np.full(self.points, self.cell_volume)
        if not self.periodic:
            for axis in range(self.dimension):
                edge = [slice(None)] * self.dimension
                for index in (0, -1):
                    edge[axis] = index
                    weights[tuple(edge)] *= 0.5
        return weights

    def boundary_mask(self, fraction: float = 0.05) -> npt.NDArray[np.bool_]:
        mask = np.zeros(self.points, dtype=bool)
        for axis, count in enumerate(self.points):
            width = max(1, int(round(fraction * count)))
            index = [slice(None)] * self.dimension
            index[axis] = np.r_[0:width, count - width:count]
            mask[tuple(index)] = True
        return mask

    def same_as(self, other: Grid) -> bool:
        return (
            self.points == other.points
            and np.allclose(self.origin, other.origin, rtol=0, atol=1e-12)
            and np.allclose(self.spacing, other.spacing, rtol=1e-12, atol=0)
        )


@dataclasses.dataclass(frozen=True)
class WaveState:
    grid: Grid
    amplitudes: npt.NDArray[np.complex128]
    time: float = 0.0

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=np.complex128)
        if amplitudes.shape == self.grid.points:
            amplitudes = amplitudes[None, ...]
        if amplitudes.shape[1:] != self.grid.points or amplitudes.shape[0] not in (1, 2):
            raise InvalidSetupError(
                f"amplitudes shape {amplitudes.shape} does not fit grid {self.grid.points} "
                "with 1 or 2 components"
            )
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def components(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def is_spinor(self) -> bool:
        return self.components == 2

    def with_amplitudes(self, amplitudes: npt.ArrayLike, time: float | None = None) -> WaveState:
        return WaveState(self.grid, np.asarray(amplitudes), self.time if time is None else time)

    def scaled(self, factor: complex) -> WaveState:
        return self.with_amplitudes(self.amplitudes * factor)

    def normalized(self) -> WaveState:
        norm = grid_norm(self)
        if norm == 0.0:
            raise PreconditionError("cannot normalize a state with zero norm")
        return self.scaled(1.0 / norm)

    def density(self) -> npt.NDArray[np.float64]:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=0)

    def expectation_position(self) -> npt.NDArray[np.float64]:
        density = self.density() * self.grid.weights()
        total = density.sum()
        positions = self.grid.positions()
        return np.tensordot(density, positions, axes=density.ndim) / total

    def expectation_momentum(self, hbar: float = 1.0) -> npt.NDArray[np.float64]:
        result = np.zeros(3)
        spectrum = np.abs(fft.fftn(self.amplitudes, axes=self._axes())) ** 2
        spectrum = spectrum.sum(axis=0)
        total = spectrum.sum()
        for axis, k in enumerate(self.grid.wavenumber_mesh()):
            result[axis] = hbar * np.sum(k * spectrum) / total
        return result

    def expectation_kinetic(self, mass: float, hbar: float = 1.0) -> float:
        spectrum = np.abs(fft.fftn(self.amplitudes, axes=self._axes())) ** 2
        spectrum = spectrum.sum(axis=0)
        k2 = sum(k**2 for k in self.grid.wavenumber_mesh())
        return float(hbar**2 * np.sum(k2 * spectrum) / (2.0 * mass * spectrum.sum()))

    def _axes(self) -> tuple[int, ...]:
        return tuple(range(1, self.grid.dimension + 1))

    @staticmethod
    def gaussian(
        grid: Grid,
        center: Sequence[float],
        width: float,
        momentum: Sequence[float] | None = None,
        hbar: float = 1.0,
        spinor: Sequence[complex] | None = None,
        time: float = 0.0,
    ) -> WaveState:
        """Gaussian packet normalized on the grid; `width` is the position standard deviation.

        The grid truncates the tails, so the amplitudes carry the factor
        `gaussian_truncation(...)` on top of the continuum normalization.
        """
        profile = gaussian_profile(grid, center, width, momentum, hbar)
        profile /= gaussian_truncation(grid, center, width)
        if spinor is None:
            amplitudes = profile[None, ...]
        else:
            chi = np.asarray(spinor, dtype=np.complex128)
            chi = chi / np.linalg.norm(chi)
            amplitudes = chi[:, None] * profile.reshape(1, -1)
            amplitudes = amplitudes.reshape((2,) + grid.points)
        return WaveState(grid, amplitudes, time)


def gaussian_profile(
    grid: Grid,
    center: Sequence[float],
    width: float,
    momentum: Sequence[float] | None = None,
    hbar: float = 1.0,
) -> npt.NDArray[np.complex128]:
    """Continuum-normalized Gaussian sampled on `grid`."""
    if width <= 0:
        raise InvalidSetupError(f"packet width must be > 0, got {width}")
    center = pad_vector(center)
    momentum = pad_vector(momentum)
    offset = grid.positions() - center
    profile = np.exp(
        -np.sum(offset**2, axis=-1) / (4.0 * width**2)
        + 1j * (offset @ momentum) / hbar
    )
    return profile * (2.0 * np.pi * width**2) ** (-grid.dimension / 4.0)


def gaussian_truncation(grid: Grid, center: Sequence[float], width: float) -> float:
    """Grid norm of the continuum-normalized packet, below 1 when the grid cuts its tails."""
    density = np.abs(gaussian_profile(grid, center, width)) ** 2
    return math.sqrt(float(np.sum(density * grid.weights())))


def grid_norm(state: WaveState) -> float:
    return math.sqrt(float(np.sum(state.density() * state.grid.weights())))
