import logging
from typing import Final

_LOGGER = logging.getLogger(__name__)

SCHEMA_VERSION: Final = 1

EXIT_OK: Final = 0
EXIT_CONFIG_ERROR: Final = 2
EXIT_PRECONDITION_ERROR: Final = 3
EXIT_STABILITY_ERROR: Final = 4

UNITS_SI: Final = "si"
UNITS_NATURAL: Final = "natural"

MODE_SAGNAC: Final = "sagnac"
MODE_SPIN_PHASE: Final = "spin-phase"
MODE_SPIN_ORBIT: Final = "spin-orbit"
MODE_PROPAGATE: Final = "propagate"
MODE_EHRENFEST: Final = "ehrenfest"
MODE_DIRAC_COMPARE: Final = "dirac-compare"
MODE_GAUGE_CHECK: Final = "gauge-check"

CONF_MODE: Final = "mode"
CONF_UNITS: Final = "units"
CONF_SEED: Final = "seed"

CONF_SETUP: Final = "setup"
CONF_MASS: Final = "mass"
CONF_HBAR: Final = "hbar"
CONF_C: Final = "c"
CONF_OMEGA: Final = "omega"

CONF_PATH: Final = "path"
CONF_VERTICES: Final = "vertices"
CONF_SUBDIVISIONS: Final = "subdivisions"
CONF_CIRCLE: Final = "circle"
CONF_RADIUS: Final = "radius"
CONF_SIDES: Final = "sides"
CONF_NORMAL: Final = "normal"
CONF_CENTER: Final = "center"
CONF_METHOD: Final = "method"

CONF_GRID: Final = "grid"
CONF_POINTS: Final = "points"
CONF_SPACING: Final = "spacing"
CONF_ORIGIN: Final = "origin"

CONF_PACKET: Final = "packet"
CONF_WIDTH: Final = "width"
CONF_MOMENTUM: Final = "momentum"
CONF_SPINOR: Final = "spinor"

CONF_HAMILTONIAN: Final = "hamiltonian"
CONF_SPIN: Final = "spin"
CONF_SPIN_ORBIT: Final = "spin_orbit"
CONF_TRAP_FREQUENCY: Final = "trap_frequency"
CONF_BOUNDARY: Final = "boundary"

CONF_INTEGRATOR: Final = "integrator"
CONF_DT: Final = "dt"
CONF_STEPS: Final = "steps"
CONF_SAMPLE_EVERY: Final = "sample_every"
CONF_STRICT: Final = "strict"

CONF_TIME: Final = "time"
CONF_ORDERED_STEPS: Final = "ordered_steps"

CONF_GAUGE: Final = "gauge"
CONF_MODES: Final = "modes"
CONF_AMPLITUDE: Final = "amplitude"
CONF_TRIALS: Final = "trials"
CONF_REST_FRAME: Final = "rest_frame"
CONF_TWIST: Final = "twist"

CONF_DIRAC: Final = "dirac"
CONF_STATES: Final = "states"

CONF_OUTPUT: Final = "output"
CONF_DIRECTORY: Final = "directory"
CONF_SNAPSHOT: Final = "snapshot"

BOUNDARY_PERIODIC: Final = "periodic"
BOUNDARY_SPONGE: Final = "sponge"

DEFAULT_SUBDIVISIONS: Final = 1
DEFAULT_ORDERED_STEPS: Final = 10000
DEFAULT_SAMPLE_EVERY: Final = 10
DEFAULT_GAUGE_MODES: Final = 3
DEFAULT_GAUGE_TRIALS: Final = 20
DEFAULT_DIRAC_STATES: Final = 6
DEFAULT_OUTPUT_DIRECTORY: Final = "out"

NORM_TOLERANCE: Final = 1e-12
NORM_DRIFT_PER_KILOSTEP: Final = 1e-10
PHASE_TOLERANCE: Final = 1e-10
NONRELATIVISTIC_FRACTION: Final = 0.1
