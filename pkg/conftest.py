import json
from pathlib import Path

import numpy as np
import pytest

from rotframe.core import ClosedPath, RotationSetup


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: oracle checks that run for more than a few seconds")


@pytest.fixture
def unit_square() -> ClosedPath:
    return ClosedPath([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]])


@pytest.fixture
def z_rotation() -> RotationSetup:
    return RotationSetup(mass=1.0, omega=[0.0, 0.0, 1.0])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def configs_dir() -> Path:
    return Path(__file__).parent / "configs"


@pytest.fixture
def write_config(tmp_path):
    def write(payload: dict, name: str = "experiment.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload, sort_keys=True))
        return path

    return write
