from collections import OrderedDict
from typing import Type

from .. import (
    MODE_DIRAC_COMPARE,
    MODE_EHRENFEST,
    MODE_GAUGE_CHECK,
    MODE_PROPAGATE,
    MODE_SAGNAC,
    MODE_SPIN_ORBIT,
    MODE_SPIN_PHASE,
)
from ..core import ConfigError
from . import BaseExperiment
from .interferometry import SagnacExperiment, SpinOrbitExperiment, SpinPhaseExperiment
from .relativistic import DiracCompareExperiment, GaugeCheckExperiment
from .wavepacket import EhrenfestExperiment, PropagateExperiment

experiments: OrderedDict[str, Type[BaseExperiment]] = OrderedDict[str, Type[BaseExperiment]](
    {
        MODE_SAGNAC: SagnacExperiment,
        MODE_SPIN_PHASE: SpinPhaseExperiment,
        MODE_SPIN_ORBIT: SpinOrbitExperiment,
        MODE_PROPAGATE: PropagateExperiment,
        MODE_EHRENFEST: EhrenfestExperiment,
        MODE_DIRAC_COMPARE: DiracCompareExperiment,
        MODE_GAUGE_CHECK: GaugeCheckExperiment,
    }
)


def experiment_by_mode(mode: str) -> Type[BaseExperiment]:
    if mode not in experiments:
        raise ConfigError(f"mode: unknown mode {mode!r}, expected one of {', '.join(experiments)}")
    return experiments[mode]
