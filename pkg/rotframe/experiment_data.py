import dataclasses
from typing import Any

from .core import ClosedPath, Grid, RotationSetup


@dataclasses.dataclass
class PacketOptions:
    center: list[float]
    width: float
    momentum: list[float]
    spinor: list[complex] | None = None


@dataclasses.dataclass
class HamiltonianOptions:
    spin: bool
    spin_orbit: bool
    trap_frequency: float
    boundary: str


@dataclasses.dataclass
class IntegratorOptions:
    dt: float
    steps: int
    sample_every: int
    strict: bool = False


@dataclasses.dataclass
class SpinPhaseOptions:
    time: float
    ordered_steps: int
    method: str


@dataclasses.dataclass
class GaugeOptions:
    modes: int
    amplitude: float
    trials: int
    rest_frame: bool
    twist: list[float]
    time: float


@dataclasses.dataclass
class DiracOptions:
    states: int


@dataclasses.dataclass
class OutputOptions:
    directory: str
    snapshot: bool


@dataclasses.dataclass
class ExperimentConfig:
    mode: str
    units: str
    seed: int
    setup: RotationSetup
    hamiltonian: HamiltonianOptions
    integrator: IntegratorOptions | None
    spin: SpinPhaseOptions
    gauge: GaugeOptions
    dirac: DiracOptions
    output: OutputOptions
    path: ClosedPath | None = None
    path_method: str | None = None
    grid: Grid | None = None
    packet: PacketOptions | None = None
    source: dict[str, Any] = dataclasses.field(default_factory=dict)
