from .ehrenfest import (
    EhrenfestTrajectory,
    classical_trajectory,
    ehrenfest_trajectory,
    mean_velocity,
)
from .hamiltonian import RotatingHamiltonian, build_hamiltonian, efield, lowest_eigenvalues
from .propagator import Propagator, propagate, rotate_samples, to_rotating_frame
from .records import (
    read_series,
    read_snapshot,
    read_trajectory,
    write_series,
    write_snapshot,
    write_trajectory,
)

__all__ = [
    "EhrenfestTrajectory",
    "Propagator",
    "RotatingHamiltonian",
    "build_hamiltonian",
    "classical_trajectory",
    "efield",
    "ehrenfest_trajectory",
    "lowest_eigenvalues",
    "mean_velocity",
    "propagate",
    "read_series",
    "read_snapshot",
    "read_trajectory",
    "rotate_samples",
    "to_rotating_frame",
    "write_series",
    "write_snapshot",
    "write_trajectory",
]
