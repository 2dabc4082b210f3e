"""On-disk formats for wave-state snapshots and sampled trajectories.

Snapshot layout, all little-endian:

    magic    4 bytes  b"RFWS"
    header   float64  version, dimension d, components, time,
                      points[d], origin[d], spacing[d], periodic (0 or 1)
    payload  complex128 pairs (re, im), row-major over (components, *points)

Trajectory and plot series are CSV with a single header row and values
printed with 17 significant digits, so a written file reads back bit-exactly.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from pathlib import Path

import numpy as np
import numpy.typing as npt

from ..core import ConfigError, Grid, PreconditionError, WaveState

_LOGGER = logging.getLogger(__name__)

SNAPSHOT_MAGIC = b"RFWS"
SNAPSHOT_VERSION = 1
TRAJECTORY_COLUMNS = ("t", "x", "y", "z", "vx", "vy", "vz")

_HEADER_DTYPE = np.dtype("<f8")
_PAYLOAD_DTYPE = np.dtype("<c16")


def snapshot_bytes(state: WaveState) -> bytes:
    grid = state.grid
    header = [SNAPSHOT_VERSION, grid.dimension, state.components, state.time]
    header += list(grid.points) + list(grid.origin) + list(grid.spacing)
    header.append(1.0 if grid.periodic else 0.0)
    return (
        SNAPSHOT_MAGIC
        + np.asarray(header, dtype=_HEADER_DTYPE).tobytes()
        + np.ascontiguousarray(state.amplitudes, dtype=_PAYLOAD_DTYPE).tobytes()
    )


def snapshot_from_bytes(raw: bytes) -> WaveState:
    if raw[:4] != SNAPSHOT_MAGIC:
        raise ConfigError(f"not a wave-state snapshot: magic {raw[:4]!r}")
    fixed = np.frombuffer(raw, dtype=_HEADER_DTYPE, count=4, offset=4)
    version, dimension, components, time = fixed
    if int(version) != SNAPSHOT_VERSION:
        raise ConfigError(f"unsupported snapshot version {int(version)}")
    dimension, components = int(dimension), int(components)
    count = 3 * dimension + 1
    rest = np.frombuffer(raw, dtype=_HEADER_DTYPE, count=count, offset=4 + 4 * 8)
    points = tuple(int(n) for n in rest[:dimension])
    origin = tuple(float(v) for v in rest[dimension : 2 * dimension])
    spacing = tuple(float(v) for v in rest[2 * dimension : 3 * dimension])
    periodic = bool(rest[-1])
    offset = 4 + (4 + count) * 8
    expected = components * int(np.prod(points))
    available = (len(raw) - offset) // _PAYLOAD_DTYPE.itemsize
    if available != expected:
        raise ConfigError(f"snapshot payload holds {available} amplitudes, header says {expected}")
    amplitudes = np.frombuffer(raw, dtype=_PAYLOAD_DTYPE, count=expected, offset=offset)
    grid = Grid(origin, spacing, points, periodic)
    return WaveState(grid, amplitudes.reshape((components, *points)).copy(), float(time))


def write_snapshot(state: WaveState, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(snapshot_bytes(state))
    _LOGGER.debug("Wrote snapshot %s at t=%s", path, state.time)
    return path


def read_snapshot(path: str | Path) -> WaveState:
    return snapshot_from_bytes(Path(path).read_bytes())


def write_series(series: Mapping[str, npt.ArrayLike], path: str | Path) -> Path:
    """Columns of equal length to CSV; the header row is the mapping keys in order."""
    if not series:
        raise PreconditionError("cannot write an empty series")
    names = list(series)
    columns = [np.atleast_1d(np.asarray(series[name], dtype=np.float64)) for name in names]
    rows = {len(column) for column in columns}
    if len(rows) != 1:
        raise PreconditionError(f"series columns differ in length: {sorted(rows)}")
    if rows == {0}:
        raise PreconditionError("cannot write a series without samples")
    path = Path(path)
    np.savetxt(path, np.column_stack(columns), delimiter=",", header=",".join(names), comments="", fmt="%.17g")
    return path


def read_series(path: str | Path) -> dict[str, npt.NDArray[np.float64]]:
    path = Path(path)
    with path.open() as handle:
        names = handle.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != len(names):
        raise ConfigError(f"{path}: header has {len(names)} columns, rows have {data.shape[1]}")
    return {name: data[:, index] for index, name in enumerate(names)}


def write_trajectory(trajectory, path: str | Path) -> Path:
    return write_series(trajectory.series(), path)


def read_trajectory(path: str | Path) -> dict[str, npt.NDArray[np.float64]]:
    series = read_series(path)
    if tuple(series) != TRAJECTORY_COLUMNS:
        raise ConfigError(f"{path}: expected columns {','.join(TRAJECTORY_COLUMNS)}")
    return series
