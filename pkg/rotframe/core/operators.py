"""Dense operator realizations on a `Grid`.

State vectors are flattened from arrays of shape (components, *grid.points),
so a spin matrix S and a spatial matrix M combine as kron(S, M).
"""

import logging

import numpy as np
import numpy.typing as npt
import scipy.linalg

from . import PreconditionError
from .grid import Grid
from .spin import levi_civita

_LOGGER = logging.getLogger(__name__)

DENSE_LIMIT = 4096

Matrix = npt.NDArray[np.complex128]


def check_dense_size(grid: Grid, components: int):
    dimension = grid.size * components
    if dimension > DENSE_LIMIT:
        raise PreconditionError(
            f"dense realization of {dimension} x {dimension} exceeds the limit of {DENSE_LIMIT}; "
            f"use a smaller grid than {grid.points}"
        )


def _embed(grid: Grid, axis: int, block: npt.NDArray) -> Matrix:
    result = np.ones((1, 1), dtype=np.complex128)
    for other, count in enumerate(grid.points):
        result = np.kron(result, block if other == axis else np.eye(count))
    return result


def spectral_derivative_1d(count: int, spacing: float) -> Matrix:
    """Matrix of -i d/dx on a periodic line, exact on resolved Fourier modes."""
    dft = scipy.linalg.dft(count)
    wavenumbers = 2.0 * np.pi * np.fft.fftfreq(count, spacing)
    matrix = dft.conj().T @ np.diag(wavenumbers) @ dft / count
    return 0.5 * (matrix + matrix.conj().T)


def momentum_matrices(grid: Grid, hbar: float) -> list[Matrix]:
    result = []
    for axis in range(3):
        if axis < grid.dimension:
            block = hbar * spectral_derivative_1d(grid.points[axis], grid.spacing[axis])
            result.append(_embed(grid, axis, block))
        else:
            result.append(np.zeros((grid.size, grid.size), dtype=np.complex128))
    return result


def multiplication(values: npt.ArrayLike) -> Matrix:
    return np.diag(np.asarray(values, dtype=np.complex128).reshape(-1))


def position_matrices(grid: Grid) -> list[Matrix]:
    positions = grid.positions()
    return [multiplication(positions[..., axis]) for axis in range(3)]


def angular_momentum_matrices(grid: Grid, hbar: float) -> list[Matrix]:
    """L_i = eps_ijk x_j p_k; the factors act on distinct axes so the order is free."""
    x = position_matrices(grid)
    p = momentum_matrices(grid, hbar)
    eps = levi_civita()
    result = []
    for i in range(3):
        total = np.zeros((grid.size, grid.size), dtype=np.complex128)
        for j in range(3):
            for k in range(3):
                if eps[i, j, k]:
                    total += eps[i, j, k] * (x[j] @ p[k])
        result.append(total)
    return result


def with_spin(spin: npt.ArrayLike, spatial: Matrix) -> Matrix:
    return np.kron(np.asarray(spin, dtype=np.complex128), spatial)


def hermiticity_residual(matrix: Matrix) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T), initial=0.0))
