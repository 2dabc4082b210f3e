import dataclasses
import itertools
import logging

import numpy as np
import numpy.typing as npt

_LOGGER = logging.getLogger(__name__)

IDENTITY2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

_SIGMA = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


def pauli_matrices() -> npt.NDArray[np.complex128]:
    """Pauli matrices stacked along the first axis, shape (3, 2, 2)."""
    return _SIGMA.copy()


def spin_matrices(hbar: float) -> npt.NDArray[np.complex128]:
    return 0.5 * hbar * _SIGMA


def levi_civita() -> npt.NDArray[np.float64]:
    eps = np.zeros((3, 3, 3))
    for i, j, k in itertools.permutations(range(3)):
        eps[i, j, k] = np.linalg.det(np.eye(3)[[i, j, k]])
    return eps


def pauli_exponential(theta: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """exp(i theta.sigma) = I cos|theta| + i (theta_hat.sigma) sin|theta|.

    `theta` may carry leading batch axes, shape (..., 3); the result then has
    shape (..., 2, 2). A zero vector gives the identity.
    """
    theta = np.asarray(theta, dtype=np.float64)
    angle = np.linalg.norm(theta, axis=-1)
    # sin(a)/a with the a -> 0 limit taken exactly
    sinc = np.sinc(angle / np.pi)
    generator = np.einsum("...k,kij->...ij", theta, _SIGMA)
    return (
        np.cos(angle)[..., None, None] * IDENTITY2
        + 1j * sinc[..., None, None] * generator
    )


def check_pauli_algebra() -> float:
    """Largest residual of sigma_i sigma_j = delta_ij I + i eps_ijk sigma_k."""
    eps = levi_civita()
    worst = 0.0
    for i, j in itertools.product(range(3), repeat=2):
        expected = (i == j) * IDENTITY2 + 1j * np.einsum(
            "k,kab->ab", eps[i, j], _SIGMA
        )
        worst = max(worst, float(np.max(np.abs(_SIGMA[i] @ _SIGMA[j] - expected))))
    return worst


@dataclasses.dataclass(frozen=True)
class SpinOperator:
    matrix: npt.NDArray[np.complex128]

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=np.complex128)
        if matrix.shape != (2, 2):
            raise ValueError(f"Spin operator must be 2x2, got shape {matrix.shape}")
        object.__setattr__(self, "matrix", matrix)

    @staticmethod
    def identity() -> "SpinOperator":
        return SpinOperator(IDENTITY2.copy())

    def dagger(self) -> "SpinOperator":
        return SpinOperator(self.matrix.conj().T)

    def __matmul__(self, other: "SpinOperator") -> "SpinOperator":
        return SpinOperator(self.matrix @ other.matrix)

    def unitarity_residual(self) -> float:
        return float(np.linalg.norm(self.matrix.conj().T @ self.matrix - IDENTITY2, 2))

    def eigenphases(self) -> npt.NDArray[np.float64]:
        return np.sort(np.angle(np.linalg.eigvals(self.matrix)))

    def distance(self, other: "SpinOperator") -> float:
        """Spectral-norm distance between two operators."""
        return float(np.linalg.norm(self.matrix - other.matrix, 2))
