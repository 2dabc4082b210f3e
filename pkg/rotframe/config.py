"""Experiment configuration: JSON tables validated with voluptuous.

Overrides given as ``<path>=<json value>`` are applied with jsonpath before
validation, so ``setup.omega[2]=0.5`` or ``grid.points=[64, 64]`` work as on
the stored document.
"""

from __future__ import annotations

import copy
import json
import logging
import math
from collections.abc import Iterable
from pathlib import Path
from typing import Any, Final

import jsonpath_ng.ext as jp
import scipy.constants
import voluptuous as vol

from . import (
    BOUNDARY_PERIODIC,
    BOUNDARY_SPONGE,
    CONF_AMPLITUDE,
    CONF_BOUNDARY,
    CONF_C,
    CONF_CENTER,
    CONF_CIRCLE,
    CONF_DIRAC,
    CONF_DIRECTORY,
    CONF_DT,
    CONF_GAUGE,
    CONF_GRID,
    CONF_HAMILTONIAN,
    CONF_HBAR,
    CONF_INTEGRATOR,
    CONF_MASS,
    CONF_METHOD,
    CONF_MODE,
    CONF_MODES,
    CONF_MOMENTUM,
    CONF_NORMAL,
    CONF_OMEGA,
    CONF_ORDERED_STEPS,
    CONF_ORIGIN,
    CONF_OUTPUT,
    CONF_PACKET,
    CONF_PATH,
    CONF_POINTS,
    CONF_RADIUS,
    CONF_REST_FRAME,
    CONF_SAMPLE_EVERY,
    CONF_SEED,
    CONF_SETUP,
    CONF_SIDES,
    CONF_SNAPSHOT,
    CONF_SPACING,
    CONF_SPIN,
    CONF_SPIN_ORBIT,
    CONF_SPINOR,
    CONF_STATES,
    CONF_STEPS,
    CONF_STRICT,
    CONF_SUBDIVISIONS,
    CONF_TIME,
    CONF_TRAP_FREQUENCY,
    CONF_TRIALS,
    CONF_TWIST,
    CONF_UNITS,
    CONF_VERTICES,
    CONF_WIDTH,
    DEFAULT_DIRAC_STATES,
    DEFAULT_GAUGE_MODES,
    DEFAULT_GAUGE_TRIALS,
    DEFAULT_ORDERED_STEPS,
    DEFAULT_OUTPUT_DIRECTORY,
    DEFAULT_SAMPLE_EVERY,
    DEFAULT_SUBDIVISIONS,
    MODE_DIRAC_COMPARE,
    MODE_EHRENFEST,
    MODE_GAUGE_CHECK,
    MODE_PROPAGATE,
    MODE_SAGNAC,
    MODE_SPIN_ORBIT,
    MODE_SPIN_PHASE,
    UNITS_NATURAL,
    UNITS_SI,
)
from .core import ClosedPath, ConfigError, Grid, InvalidSetupError, RotationSetup
from .experiment_data import (
    DiracOptions,
    ExperimentConfig,
    GaugeOptions,
    HamiltonianOptions,
    IntegratorOptions,
    OutputOptions,
    PacketOptions,
    SpinPhaseOptions,
)
from .phases import PhaseMethod

_LOGGER = logging.getLogger(__name__)

MODES: Final = (
    MODE_SAGNAC,
    MODE_SPIN_PHASE,
    MODE_SPIN_ORBIT,
    MODE_PROPAGATE,
    MODE_EHRENFEST,
    MODE_DIRAC_COMPARE,
    MODE_GAUGE_CHECK,
)

REQUIRED_TABLES: Final = {
    MODE_SAGNAC: (CONF_PATH,),
    MODE_SPIN_PHASE: (CONF_SPIN,),
    MODE_SPIN_ORBIT: (CONF_PATH,),
    MODE_PROPAGATE: (CONF_GRID, CONF_PACKET, CONF_INTEGRATOR),
    MODE_EHRENFEST: (CONF_GRID, CONF_PACKET, CONF_INTEGRATOR),
    MODE_DIRAC_COMPARE: (CONF_GRID,),
    MODE_GAUGE_CHECK: (CONF_PATH,),
}

DEFAULT_GAUGE_AMPLITUDE: Final = 0.1
DEFAULT_GAUGE_TIME: Final = 1.0


def _finite(value: float) -> float:
    if not math.isfinite(value):
        raise vol.Invalid(f"must be finite, got {value}")
    return value


def _complex_entry(value: Any) -> list[float]:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        value = [value, 0.0]
    if not isinstance(value, list) or len(value) != 2:
        raise vol.Invalid("spinor entries are numbers or [re, im] pairs")
    return [_finite(float(part)) for part in value]


def _nonzero_spinor(value: list[list[float]]) -> list[list[float]]:
    if not any(part for entry in value for part in entry):
        raise vol.Invalid("spinor must not vanish")
    return value


REAL = vol.All(vol.Coerce(float), _finite)
POSITIVE = vol.All(REAL, vol.Range(min=0, min_included=False))
NON_NEGATIVE = vol.All(REAL, vol.Range(min=0))
COUNT = vol.All(int, vol.Range(min=1))
VECTOR = vol.All([REAL], vol.Length(min=3, max=3))
COORDINATES = vol.All([REAL], vol.Length(min=1, max=3))

SETUP_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_MASS): POSITIVE,
        vol.Required(CONF_OMEGA): VECTOR,
        vol.Optional(CONF_HBAR): POSITIVE,
        vol.Optional(CONF_C): POSITIVE,
    }
)

CIRCLE_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_RADIUS): POSITIVE,
        vol.Required(CONF_SIDES): vol.All(int, vol.Range(min=3)),
        vol.Required(CONF_NORMAL, default=lambda: [0.0, 0.0, 1.0]): VECTOR,
        vol.Required(CONF_CENTER, default=lambda: [0.0, 0.0, 0.0]): VECTOR,
    }
)

PATH_SCHEMA = vol.Schema(
    {
        vol.Exclusive(CONF_VERTICES, "shape"): vol.All([VECTOR], vol.Length(min=3)),
        vol.Exclusive(CONF_CIRCLE, "shape"): CIRCLE_SCHEMA,
        vol.Required(CONF_SUBDIVISIONS, default=DEFAULT_SUBDIVISIONS): COUNT,
        vol.Optional(CONF_METHOD): vol.In([method.value for method in PhaseMethod]),
    }
)

GRID_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_POINTS): vol.All([vol.All(int, vol.Range(min=2))], vol.Length(min=1, max=3)),
        vol.Required(CONF_SPACING): vol.All([POSITIVE], vol.Length(min=1, max=3)),
        vol.Optional(CONF_ORIGIN): COORDINATES,
    }
)

PACKET_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_CENTER): COORDINATES,
        vol.Required(CONF_WIDTH): POSITIVE,
        vol.Required(CONF_MOMENTUM, default=list): vol.All([REAL], vol.Length(max=3)),
        vol.Optional(CONF_SPINOR): vol.All([_complex_entry], vol.Length(min=2, max=2), _nonzero_spinor),
    }
)

HAMILTONIAN_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_SPIN, default=False): bool,
        vol.Required(CONF_SPIN_ORBIT, default=False): bool,
        vol.Required(CONF_TRAP_FREQUENCY, default=0.0): NON_NEGATIVE,
        vol.Required(CONF_BOUNDARY, default=BOUNDARY_PERIODIC): vol.In(
            [BOUNDARY_PERIODIC, BOUNDARY_SPONGE]
        ),
    }
)

INTEGRATOR_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_DT): POSITIVE,
        vol.Required(CONF_STEPS): vol.All(int, vol.Range(min=0)),
        vol.Required(CONF_SAMPLE_EVERY, default=DEFAULT_SAMPLE_EVERY): COUNT,
        vol.Required(CONF_STRICT, default=False): bool,
    }
)

SPIN_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_TIME): NON_NEGATIVE,
        vol.Required(CONF_ORDERED_STEPS, default=DEFAULT_ORDERED_STEPS): COUNT,
        vol.Required(CONF_METHOD, default=PhaseMethod.CLOSED_FORM.value): vol.In(
            [PhaseMethod.CLOSED_FORM.value, PhaseMethod.ORDERED_PRODUCT.value]
        ),
    }
)

GAUGE_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_MODES, default=DEFAULT_GAUGE_MODES): COUNT,
        vol.Required(CONF_AMPLITUDE, default=DEFAULT_GAUGE_AMPLITUDE): POSITIVE,
        vol.Required(CONF_TRIALS, default=DEFAULT_GAUGE_TRIALS): COUNT,
        vol.Required(CONF_REST_FRAME, default=True): bool,
        vol.Required(CONF_TWIST, default=lambda: [0.0, 0.0, 0.0]): VECTOR,
        vol.Required(CONF_TIME, default=DEFAULT_GAUGE_TIME): NON_NEGATIVE,
    }
)

DIRAC_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_STATES, default=DEFAULT_DIRAC_STATES): COUNT,
    }
)

OUTPUT_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_DIRECTORY, default=DEFAULT_OUTPUT_DIRECTORY): str,
        vol.Required(CONF_SNAPSHOT, default=False): bool,
    }
)

CONFIG_SCHEMA = vol.Schema(
    {
        vol.Optional(CONF_MODE): vol.In(MODES),
        vol.Optional(CONF_UNITS): vol.In([UNITS_SI, UNITS_NATURAL]),
        vol.Required(CONF_SEED, default=0): vol.All(int, vol.Range(min=0)),
        vol.Required(CONF_SETUP): SETUP_SCHEMA,
        vol.Optional(CONF_PATH): PATH_SCHEMA,
        vol.Optional(CONF_GRID): GRID_SCHEMA,
        vol.Optional(CONF_PACKET): PACKET_SCHEMA,
        vol.Required(CONF_HAMILTONIAN, default=dict): HAMILTONIAN_SCHEMA,
        vol.Optional(CONF_INTEGRATOR): INTEGRATOR_SCHEMA,
        vol.Optional(CONF_SPIN): SPIN_SCHEMA,
        vol.Required(CONF_GAUGE, default=dict): GAUGE_SCHEMA,
        vol.Required(CONF_DIRAC, default=dict): DIRAC_SCHEMA,
        vol.Required(CONF_OUTPUT, default=dict): OUTPUT_SCHEMA,
    }
)


def _field_path(path: Iterable[Any]) -> str:
    return ".".join(str(part) for part in path) or "<root>"


def load_config(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as error:
        raise ConfigError(f"cannot read config {path}: {error.strerror}") from error
    except json.JSONDecodeError as error:
        raise ConfigError(f"{path}:{error.lineno}:{error.colno}: {error.msg}") from error
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: the top level must be a table, got {type(raw).__name__}")
    return raw


def apply_overrides(raw: dict[str, Any], overrides: Iterable[str]) -> dict[str, Any]:
    """Return a copy of `raw` with every ``<jsonpath>=<value>`` applied in order."""
    result = copy.deepcopy(raw)
    for item in overrides:
        key, separator, text = item.partition("=")
        if not separator or not key:
            raise ConfigError(f"override {item!r} is not of the form <path>=<value>")
        try:
            value = json.loads(text)
        except json.JSONDecodeError:
            value = text
        try:
            expression = jp.parse(key)
        except Exception as error:
            raise ConfigError(f"override path {key!r} does not parse: {error}") from error
        if not expression.find(result):
            raise ConfigError(f"override path {key!r} matches nothing in the config")
        # key can be a jsonpath
        expression.update(result, value)
        _LOGGER.debug("Override %s = %r", key, value)
    return result


def validate_config(raw: dict[str, Any]) -> dict[str, Any]:
    try:
        return CONFIG_SCHEMA(raw)
    except vol.MultipleInvalid as error:
        details = "; ".join(f"{_field_path(item.path)}: {item.msg}" for item in error.errors)
        raise ConfigError(details) from error
    except vol.Invalid as error:
        raise ConfigError(f"{_field_path(error.path)}: {error.msg}") from error


def _build_setup(table: dict[str, Any], units: str) -> RotationSetup:
    if units == UNITS_SI:
        hbar, c = scipy.constants.hbar, scipy.constants.c
    else:
        hbar, c = 1.0, 1.0
    return RotationSetup(
        mass=table[CONF_MASS],
        omega=table[CONF_OMEGA],
        hbar=table.get(CONF_HBAR, hbar),
        c=table.get(CONF_C, c),
    )


def _build_path(table: dict[str, Any]) -> ClosedPath:
    subdivisions = table[CONF_SUBDIVISIONS]
    if CONF_VERTICES in table:
        return ClosedPath(table[CONF_VERTICES], subdivisions)
    if CONF_CIRCLE in table:
        circle = table[CONF_CIRCLE]
        return ClosedPath.regular_polygon(
            circle[CONF_RADIUS],
            circle[CONF_SIDES],
            normal=circle[CONF_NORMAL],
            center=circle[CONF_CENTER],
            subdivisions=subdivisions,
        )
    raise ConfigError(f"{CONF_PATH}: give either {CONF_VERTICES} or {CONF_CIRCLE}")


def _build_grid(table: dict[str, Any], periodic: bool) -> Grid:
    points, spacing = table[CONF_POINTS], table[CONF_SPACING]
    if len(points) != len(spacing):
        raise ConfigError(
            f"{CONF_GRID}.{CONF_SPACING}: {len(spacing)} entries for {len(points)} grid axes"
        )
    if CONF_ORIGIN not in table:
        return Grid.centered(points, spacing, periodic)
    return Grid(table[CONF_ORIGIN], spacing, points, periodic)


def _build_packet(table: dict[str, Any], spinful: bool) -> PacketOptions:
    spinor = table.get(CONF_SPINOR)
    if spinor is not None:
        spinor = [complex(re, im) for re, im in spinor]
    elif spinful:
        spinor = [1.0 + 0.0j, 0.0j]
    return PacketOptions(
        center=list(table[CONF_CENTER]),
        width=table[CONF_WIDTH],
        momentum=list(table[CONF_MOMENTUM]),
        spinor=spinor,
    )


def _resolve(name: str, from_cli: str | None, from_file: str | None, choices) -> str:
    value = from_cli if from_cli is not None else from_file
    if value is None:
        raise ConfigError(f"{name}: not declared; set it in the config or on the command line")
    if value not in choices:
        raise ConfigError(f"{name}: unknown value {value!r}, expected one of {', '.join(choices)}")
    if from_cli is not None and from_file is not None and from_cli != from_file:
        _LOGGER.info("Command line %s %r replaces %r from the config", name, from_cli, from_file)
    return value


def parse_config(
    raw: dict[str, Any],
    mode: str | None = None,
    units: str | None = None,
) -> ExperimentConfig:
    """Validate `raw` and build the typed experiment record.

    `mode` and `units` given here take precedence over the document.
    """
    validated = validate_config(raw)
    mode = _resolve(CONF_MODE, mode, validated.get(CONF_MODE), MODES)
    units = _resolve(CONF_UNITS, units, validated.get(CONF_UNITS), (UNITS_SI, UNITS_NATURAL))
    for table in REQUIRED_TABLES[mode]:
        if table not in validated:
            raise ConfigError(f"{table}: table required by mode {mode} is missing")

    hamiltonian = validated[CONF_HAMILTONIAN]
    section = CONF_SETUP
    try:
        setup = _build_setup(validated[CONF_SETUP], units)
        section = CONF_PATH
        path = _build_path(validated[CONF_PATH]) if CONF_PATH in validated else None
        section = CONF_GRID
        grid = None
        if CONF_GRID in validated:
            grid = _build_grid(validated[CONF_GRID], hamiltonian[CONF_BOUNDARY] == BOUNDARY_PERIODIC)
    except InvalidSetupError as error:
        raise ConfigError(f"{section}: {error}") from error

    packet = None
    if CONF_PACKET in validated:
        packet = _build_packet(validated[CONF_PACKET], hamiltonian[CONF_SPIN])
    integrator = None
    if CONF_INTEGRATOR in validated:
        table = validated[CONF_INTEGRATOR]
        integrator = IntegratorOptions(
            table[CONF_DT], table[CONF_STEPS], table[CONF_SAMPLE_EVERY], table[CONF_STRICT]
        )
    spin = validated.get(CONF_SPIN, {CONF_TIME: 0.0})
    gauge = validated[CONF_GAUGE]

    validated[CONF_MODE] = mode
    validated[CONF_UNITS] = units
    config = ExperimentConfig(
        mode=mode,
        units=units,
        seed=validated[CONF_SEED],
        setup=setup,
        hamiltonian=HamiltonianOptions(
            spin=hamiltonian[CONF_SPIN],
            spin_orbit=hamiltonian[CONF_SPIN_ORBIT],
            trap_frequency=hamiltonian[CONF_TRAP_FREQUENCY],
            boundary=hamiltonian[CONF_BOUNDARY],
        ),
        integrator=integrator,
        spin=SpinPhaseOptions(
            time=spin[CONF_TIME],
            ordered_steps=spin.get(CONF_ORDERED_STEPS, DEFAULT_ORDERED_STEPS),
            method=spin.get(CONF_METHOD, PhaseMethod.CLOSED_FORM.value),
        ),
        gauge=GaugeOptions(
            modes=gauge[CONF_MODES],
            amplitude=gauge[CONF_AMPLITUDE],
            trials=gauge[CONF_TRIALS],
            rest_frame=gauge[CONF_REST_FRAME],
            twist=list(gauge[CONF_TWIST]),
            time=gauge[CONF_TIME],
        ),
        dirac=DiracOptions(states=validated[CONF_DIRAC][CONF_STATES]),
        output=OutputOptions(
            directory=validated[CONF_OUTPUT][CONF_DIRECTORY],
            snapshot=validated[CONF_OUTPUT][CONF_SNAPSHOT],
        ),
        path=path,
        path_method=validated.get(CONF_PATH, {}).get(CONF_METHOD),
        grid=grid,
        packet=packet,
        source=validated,
    )
    _LOGGER.debug("Parsed %s experiment in %s units", mode, units)
    return config


def load_experiment(
    path: str | Path,
    overrides: Iterable[str] = (),
    mode: str | None = None,
    units: str | None = None,
) -> ExperimentConfig:
    return parse_config(apply_overrides(load_config(path), overrides), mode=mode, units=units)
