"""Phase experiments on a closed path or over a rotation time."""

import logging
from typing import Any

from ..phases import (
    PhaseMethod,
    sagnac_phase,
    spin_orbit_operator,
    spin_orbit_scalar_phase,
    spin_phase_operator,
)
from . import BaseExperiment

_LOGGER = logging.getLogger(__name__)


class SagnacExperiment(BaseExperiment):
    def run(self) -> dict[str, Any]:
        path = self.require(self.config.path, "path")
        setup = self.config.setup
        method = PhaseMethod(self.config.path_method or PhaseMethod.CLOSED_FORM.value)
        result = sagnac_phase(path, setup, method)
        other = (
            PhaseMethod.LINE_INTEGRAL if method == PhaseMethod.CLOSED_FORM else PhaseMethod.CLOSED_FORM
        )
        check = sagnac_phase(path, setup, other)
        _LOGGER.info("Sagnac phase %.12g rad (%s)", result.value, method.value)
        summary = result.to_summary()
        summary["fringes"] = result.fringes
        summary["stokes_residual"] = abs(result.value - check.value)
        return summary


class SpinPhaseExperiment(BaseExperiment):
    def run(self) -> dict[str, Any]:
        options = self.config.spin
        setup = self.config.setup
        result = spin_phase_operator(setup, options.time, options.method, options.ordered_steps)
        summary = result.to_summary()
        summary["time"] = options.time
        summary["eigenphases"] = result.operator.eigenphases().tolist()
        if PhaseMethod(options.method) == PhaseMethod.ORDERED_PRODUCT:
            closed = spin_phase_operator(setup, options.time)
            summary["closed_form_distance"] = result.operator.distance(closed.operator)
        return summary


class SpinOrbitExperiment(BaseExperiment):
    def run(self) -> dict[str, Any]:
        path = self.require(self.config.path, "path")
        setup = self.config.setup
        method = PhaseMethod(self.config.path_method or PhaseMethod.ORDERED_PRODUCT.value)
        result = spin_orbit_operator(path, setup, method)
        summary = result.to_summary()
        summary["eigenphases"] = result.operator.eigenphases().tolist()
        summary["scalar_phase_rad"] = None
        if path.is_planar():
            summary["scalar_phase_rad"] = spin_orbit_scalar_phase(path, setup).value
        else:
            self.warn("path is not planar; the scalar spin-orbit phase is not reported")
        if method == PhaseMethod.ORDERED_PRODUCT:
            closed = spin_orbit_operator(path, setup, PhaseMethod.CLOSED_FORM)
            summary["closed_form_distance"] = result.operator.distance(closed.operator)
        return summary
