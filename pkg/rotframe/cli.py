"""Command-line front end.

    rotframe <mode> --config <file> [--out <dir>] [--units si|natural]
                    [--set <path>=<value> ...] [--verbose | --quiet]

Every run writes `summary.json` into the output directory, also when it
fails; the exit status tells success (0) from a configuration error (2), a
violated precondition (3) and a numerical-stability abort (4).
"""

from __future__ import annotations

import argparse
import enum
import json
import logging
import math
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import numpy.typing as npt

from . import (
    DEFAULT_OUTPUT_DIRECTORY,
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    EXIT_PRECONDITION_ERROR,
    EXIT_STABILITY_ERROR,
    SCHEMA_VERSION,
    UNITS_NATURAL,
    UNITS_SI,
)
from .config import load_experiment
from .core import ConfigError, PreconditionError, RotframeException, StabilityError
from .dynamics.records import read_series, write_series
from .experiment_data import ExperimentConfig
from .experiments.registry import experiment_by_mode

_LOGGER = logging.getLogger(__name__)

SUMMARY_FILE = "summary.json"
MANIFEST_FILE = Path(__file__).with_name("manifest.json")

_STATUS = {
    EXIT_OK: "ok",
    EXIT_CONFIG_ERROR: "config-error",
    EXIT_PRECONDITION_ERROR: "precondition-error",
    EXIT_STABILITY_ERROR: "stability-error",
}


def package_version() -> str:
    return json.loads(MANIFEST_FILE.read_text())["version"]


def exit_code(error: RotframeException) -> int:
    match error:
        case ConfigError():
            return EXIT_CONFIG_ERROR
        case StabilityError():
            return EXIT_STABILITY_ERROR
        case PreconditionError():
            return EXIT_PRECONDITION_ERROR
    return EXIT_PRECONDITION_ERROR


def _to_serializable(value: Any) -> Any:
    match value:
        case Mapping():
            return {str(key): _to_serializable(value[key]) for key in sorted(value, key=str)}
        case list() | tuple():
            return [_to_serializable(item) for item in value]
        case np.ndarray():
            return _to_serializable(value.tolist())
        case np.generic():
            return _to_serializable(value.item())
        case enum.Enum():
            return value.value
        case Path():
            return str(value)
        case complex():
            return [_to_serializable(value.real), _to_serializable(value.imag)]
        case float() if not math.isfinite(value):
            return repr(value)
    return value


def summary_text(summary: Mapping[str, Any]) -> str:
    """Stable JSON: sorted keys, floats in shortest round-trip form."""
    return json.dumps(_to_serializable(summary), indent=2, sort_keys=True) + "\n"


def write_summary(directory: Path, summary: Mapping[str, Any]) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / SUMMARY_FILE
    path.write_text(summary_text(summary))
    _LOGGER.info("Summary written to %s", path)
    return path


def _summary(mode: str | None, units: str | None, status: int, error: str | None) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "mode": mode,
        "units": units,
        "version": package_version(),
        "status": _STATUS[status],
        "exit_code": status,
        "error": error,
    }


def run(config: ExperimentConfig, output: str | Path | None = None) -> int:
    """Run one experiment and write its summary; returns the exit status."""
    directory = Path(output if output is not None else config.output.directory)
    experiment = experiment_by_mode(config.mode)(config, directory)
    status, message, result = EXIT_OK, None, {}
    _LOGGER.info("Running %s in %s units", config.mode, config.units)
    try:
        result = experiment.run()
    except RotframeException as error:
        status, message = exit_code(error), str(error)
        _LOGGER.error("%s failed: %s", config.mode, message)
    except OSError as error:
        status, message = EXIT_CONFIG_ERROR, f"cannot write to {directory}: {error.strerror}"
        _LOGGER.error(message)

    summary = _summary(config.mode, config.units, status, message)
    summary.update(result)
    summary["warnings"] = list(experiment.warnings)
    summary["artifacts"] = sorted(experiment.artifacts)
    summary["config"] = config.source
    try:
        write_summary(directory, summary)
    except OSError as error:
        _LOGGER.error("Cannot write the summary to %s: %s", directory, error.strerror)
        return EXIT_CONFIG_ERROR
    return status


def emit_plot_data(series: Mapping[str, npt.ArrayLike], path: str | Path) -> Path:
    """CSV with one header row; values at 17 significant digits read back exactly."""
    try:
        return write_series(series, path)
    except OSError as error:
        raise ConfigError(f"cannot write plot data to {path}: {error.strerror}") from error


def read_plot_data(path: str | Path) -> dict[str, npt.NDArray[np.float64]]:
    return read_series(path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotframe",
        description="Quantum mechanics in a rotating frame: phases, propagation and Dirac checks.",
    )
    parser.add_argument("mode", help="experiment to run, e.g. sagnac or propagate")
    parser.add_argument("--config", required=True, type=Path, help="experiment JSON file")
    parser.add_argument("--out", type=Path, help="output directory (default: output.directory)")
    parser.add_argument("--units", choices=[UNITS_SI, UNITS_NATURAL], help="unit system")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="PATH=VALUE",
        help="override a config entry; PATH is a jsonpath, VALUE is JSON",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log debug detail")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log warnings only")
    parser.add_argument("--version", action="version", version=f"%(prog)s {package_version()}")
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        config = load_experiment(args.config, args.overrides, mode=args.mode, units=args.units)
    except ConfigError as error:
        _LOGGER.error("Invalid configuration: %s", error)
        directory = args.out if args.out is not None else Path(DEFAULT_OUTPUT_DIRECTORY)
        try:
            write_summary(directory, _summary(args.mode, args.units, EXIT_CONFIG_ERROR, str(error)))
        except OSError as failure:
            _LOGGER.error("Cannot write the summary to %s: %s", directory, failure.strerror)
        return EXIT_CONFIG_ERROR
    return run(config, args.out)
