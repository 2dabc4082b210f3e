import logging

_LOGGER = logging.getLogger(__name__)


class RotframeException(Exception):
    pass


class ConfigError(RotframeException):
    pass


class PreconditionError(RotframeException):
    pass


class InvalidSetupError(PreconditionError):
    pass


class OpenPathError(PreconditionError):
    pass


class WeakFieldError(PreconditionError):
    pass


class GaugeRestrictionError(PreconditionError):
    pass


class StabilityError(RotframeException):
    pass


from .grid import Grid, WaveState, grid_norm  # noqa: E402
from .paths import ClosedPath, Polyline, SpacetimeLoop, enclosed_area  # noqa: E402
from .setup import GaugeField, RotationSetup  # noqa: E402
from .spin import (  # noqa: E402
    SpinOperator,
    check_pauli_algebra,
    pauli_exponential,
    pauli_matrices,
    spin_matrices,
)

__all__ = [
    "ClosedPath",
    "ConfigError",
    "GaugeField",
    "GaugeRestrictionError",
    "Grid",
    "InvalidSetupError",
    "OpenPathError",
    "Polyline",
    "PreconditionError",
    "RotationSetup",
    "RotframeException",
    "SpacetimeLoop",
    "SpinOperator",
    "StabilityError",
    "WaveState",
    "WeakFieldError",
    "check_pauli_algebra",
    "enclosed_area",
    "grid_norm",
    "pauli_exponential",
    "pauli_matrices",
    "spin_matrices",
]
