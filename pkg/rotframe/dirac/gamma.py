"""Dirac matrices in the standard (Dirac) representation, eta = diag(+1, -1, -1, -1)."""

import itertools

import numpy as np
import numpy.typing as npt

from ..core.spin import IDENTITY2, pauli_matrices

ETA = np.diag([1.0, -1.0, -1.0, -1.0])

_ZERO2 = np.zeros((2, 2), dtype=np.complex128)

BETA = np.block([[IDENTITY2, _ZERO2], [_ZERO2, -IDENTITY2]])
ALPHA = np.stack([np.block([[_ZERO2, sigma], [sigma, _ZERO2]]) for sigma in pauli_matrices()])


def gamma_matrices() -> npt.NDArray[np.complex128]:
    """gamma^a with upper index, shape (4, 4, 4): gamma^0 = beta, gamma^i = beta alpha_i."""
    return np.stack([BETA] + [BETA @ alpha for alpha in ALPHA])


def anticommutator_residual() -> float:
    """max |{gamma^a, gamma^b} - 2 eta^ab| over all index pairs."""
    gammas = gamma_matrices()
    worst = 0.0
    for a, b in itertools.product(range(4), repeat=2):
        anticommutator = gammas[a] @ gammas[b] + gammas[b] @ gammas[a]
        worst = max(worst, float(np.max(np.abs(anticommutator - 2.0 * ETA[a, b] * np.eye(4)))))
    return worst


def lorentz_generators() -> npt.NDArray[np.complex128]:
    """M^ab = (i/2) [gamma^a, gamma^b], shape (4, 4, 4, 4)."""
    gammas = gamma_matrices()
    commutators = np.einsum("aij,bjk->abik", gammas, gammas) - np.einsum(
        "bij,ajk->abik", gammas, gammas
    )
    return 0.5j * commutators


def spin_block(generators: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    """Spatial generators as sigma_k blocks: M^ij = eps_ijk diag(sigma_k, sigma_k)."""
    return np.stack([generators[2, 3], generators[3, 1], generators[1, 2]])
