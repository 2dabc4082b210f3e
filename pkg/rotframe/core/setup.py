import dataclasses
import logging
import math

import numpy as np
import numpy.typing as npt

from . import InvalidSetupError

_LOGGER = logging.getLogger(__name__)

Vector3 = npt.NDArray[np.float64]


def _as_vector(value: npt.ArrayLike, name: str) -> Vector3:
    vector = np.asarray(value, dtype=np.float64)
    if vector.shape != (3,):
        raise InvalidSetupError(f"{name} must be a 3-vector, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise InvalidSetupError(f"{name} must be finite, got {vector.tolist()}")
    vector.setflags(write=False)
    return vector


@dataclasses.dataclass(frozen=True)
class RotationSetup:
    mass: float
    omega: Vector3
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("mass", "hbar", "c"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise InvalidSetupError(f"{name} must be finite and > 0, got {value}")
        object.__setattr__(self, "omega", _as_vector(self.omega, "omega"))

    @property
    def omega_norm(self) -> float:
        return float(np.linalg.norm(self.omega))

    @property
    def omega_hat(self) -> Vector3:
        norm = self.omega_norm
        if norm == 0.0:
            return np.zeros(3)
        return self.omega / norm

    def with_omega(self, omega: npt.ArrayLike) -> "RotationSetup":
        return dataclasses.replace(self, omega=np.asarray(omega, dtype=np.float64))

    def frame_velocity(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Omega x x for points of shape (..., 3)."""
        return np.cross(self.omega, np.asarray(points, dtype=np.float64))

    def light_speed_fraction(self, points: npt.ArrayLike) -> float:
        speed = np.linalg.norm(self.frame_velocity(points), axis=-1)
        return float(np.max(speed, initial=0.0)) / self.c


@dataclasses.dataclass(frozen=True)
class GaugeField:
    """Inertial gauge potential: avec = V + Omega x x, a0 = -|avec|^2 / 2.

    The rotating frame has V = 0; a Galilei boost has Omega = 0.
    """

    omega: Vector3
    velocity: Vector3

    def __post_init__(self):
        object.__setattr__(self, "omega", _as_vector(self.omega, "omega"))
        object.__setattr__(self, "velocity", _as_vector(self.velocity, "velocity"))

    @staticmethod
    def rotating(setup: RotationSetup) -> "GaugeField":
        return GaugeField(omega=setup.omega, velocity=np.zeros(3))

    @staticmethod
    def uniform(velocity: npt.ArrayLike) -> "GaugeField":
        return GaugeField(omega=np.zeros(3), velocity=np.asarray(velocity))

    def avec(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        points = np.asarray(points, dtype=np.float64)
        return self.velocity + np.cross(self.omega, points)

    def a0(self, points: npt.ArrayLike) -> npt.NDArray[np.float64]:
        avec = self.avec(points)
        return -0.5 * np.sum(avec * avec, axis=-1)

    def is_zero(self) -> bool:
        return not (np.any(self.omega) or np.any(self.velocity))
