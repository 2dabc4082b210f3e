import logging
from abc import ABC, abstractmethod
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import numpy.typing as npt

from ..core import ConfigError
from ..dynamics.records import write_series
from ..experiment_data import ExperimentConfig

_LOGGER = logging.getLogger(__name__)


class BaseExperiment(ABC):
    """One CLI mode: validated config in, summary fields and artifact files out."""

    def __init__(self, config: ExperimentConfig, output: Path):
        self.config = config
        self.output = Path(output)
        self.warnings: list[str] = []
        self.artifacts: list[str] = []

    @abstractmethod
    def run(self) -> dict[str, Any]:
        raise NotImplementedError()

    def warn(self, message: str):
        _LOGGER.warning(message)
        self.warnings.append(message)

    def collect_warnings(self, messages: list[str]):
        for message in messages:
            if message not in self.warnings:
                self.warnings.append(message)

    def artifact(self, name: str) -> Path:
        self.output.mkdir(parents=True, exist_ok=True)
        self.artifacts.append(name)
        return self.output / name

    def write_series(self, name: str, series: Mapping[str, npt.ArrayLike]) -> Path:
        return write_series(series, self.artifact(name))

    def require(self, value, table: str):
        if value is None:
            raise ConfigError(f"{table}: table required by mode {self.config.mode} is missing")
        return value
