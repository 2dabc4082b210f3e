import numpy as np
import pytest
from numpy.testing import assert_array_equal

from rotframe.core import ConfigError, Grid, PreconditionError, WaveState
from rotframe.dynamics import (
    EhrenfestTrajectory,
    read_series,
    read_snapshot,
    read_trajectory,
    write_series,
    write_snapshot,
    write_trajectory,
)


def test_snapshot_round_trip(tmp_path):
    grid = Grid([-1.0, -2.0], [0.25, 0.5], [8, 6], periodic=False)
    state = WaveState.gaussian(grid, [0.1, -0.3], 0.6, momentum=[1.0, 0.5], spinor=[1.0, 1.0j], time=1.25)
    restored = read_snapshot(write_snapshot(state, tmp_path / "state.rfws"))
    assert restored.time == 1.25
    assert restored.grid == grid
    assert_array_equal(restored.amplitudes, state.amplitudes)


def test_snapshot_rejects_foreign_files(tmp_path):
    path = tmp_path / "state.rfws"
    path.write_bytes(b"NOPE" + bytes(64))
    with pytest.raises(ConfigError):
        read_snapshot(path)


def test_snapshot_rejects_truncated_payload(tmp_path):
    grid = Grid.centered([8], [0.5])
    path = write_snapshot(WaveState.gaussian(grid, [0.0], 1.0), tmp_path / "state.rfws")
    path.write_bytes(path.read_bytes()[:-16])
    with pytest.raises(ConfigError):
        read_snapshot(path)


def test_trajectory_round_trip(tmp_path, rng):
    trajectory = EhrenfestTrajectory(
        times=np.linspace(0.0, 1.0, 5),
        mean_position=rng.normal(size=(5, 3)),
        mean_velocity=rng.normal(size=(5, 3)),
        omega=np.array([0.0, 0.0, 1.0]),
        mass=1.0,
    )
    series = read_trajectory(write_trajectory(trajectory, tmp_path / "trajectory.csv"))
    assert list(series) == ["t", "x", "y", "z", "vx", "vy", "vz"]
    assert_array_equal(series["t"], trajectory.times)
    assert_array_equal(series["vy"], trajectory.mean_velocity[:, 1])


def test_trajectory_rejects_other_columns(tmp_path):
    path = write_series({"t": [0.0, 1.0], "x": [1.0, 2.0]}, tmp_path / "series.csv")
    with pytest.raises(ConfigError):
        read_trajectory(path)


def test_series_validation(tmp_path):
    with pytest.raises(PreconditionError):
        write_series({}, tmp_path / "empty.csv")
    with pytest.raises(PreconditionError):
        write_series({"t": [0.0, 1.0], "x": [1.0]}, tmp_path / "ragged.csv")


def test_single_row_series(tmp_path):
    series = read_series(write_series({"t": 0.5, "x": -1.0}, tmp_path / "one.csv"))
    assert_array_equal(series["x"], [-1.0])
