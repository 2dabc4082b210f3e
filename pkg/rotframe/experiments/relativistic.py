"""Weak-field experiments: the Pauli limit of the Dirac operator and loop-phase gauge invariance."""

import logging
from typing import Any

import numpy as np

from .. import PHASE_TOLERANCE
from ..core import ClosedPath, SpacetimeLoop
from ..dirac import (
    SmoothGauge,
    build_vierbein,
    compare_pauli_limit,
    gauge_transform_weakfield,
    rotating_metric,
    spacetime_points,
    spin_connection,
    write_field_csv,
    write_sparse_triplets,
)
from ..dirac.export import connection_table, metric_table, vierbein_table
from ..phases import sagnac_phase, weakfield_phase
from . import BaseExperiment

_LOGGER = logging.getLogger(__name__)

METRIC_FILE = "metric.csv"
VIERBEIN_FILE = "vierbein.csv"
CONNECTION_FILE = "connection.csv"
OPERATOR_FILE = "dirac_operator.txt"


class DiracCompareExperiment(BaseExperiment):
    def run(self) -> dict[str, Any]:
        setup = self.config.setup
        grid = self.require(self.config.grid, "grid")
        metric = rotating_metric(setup)
        comparison = compare_pauli_limit(
            setup,
            metric,
            grid,
            self.config.dirac.states,
            trap_frequency=self.config.hamiltonian.trap_frequency,
        )
        if not comparison.within_budget:
            self.warn(
                f"Dirac and Pauli spectra differ by {comparison.deviation:.3g}, "
                f"above the expected {comparison.budget:.3g}"
            )

        points = spacetime_points(grid, 0.0, setup.c).reshape(-1, 4)
        vierbein = build_vierbein(metric, points)
        tables = (
            (METRIC_FILE, metric_table(metric, points)),
            (VIERBEIN_FILE, vierbein_table(vierbein)),
            (CONNECTION_FILE, connection_table(spin_connection(metric, points))),
        )
        for name, (values, labels) in tables:
            write_field_csv(self.artifact(name), points, values.reshape(len(points), -1), labels)
        write_sparse_triplets(self.artifact(OPERATOR_FILE), comparison.operator.hamiltonian)
        return {
            "dirac_eigenvalues": comparison.dirac.tolist(),
            "pauli_eigenvalues": comparison.pauli.tolist(),
            "deviation": comparison.deviation,
            "budget": comparison.budget,
            "within_budget": comparison.within_budget,
            "darwin": comparison.darwin,
            "vierbein_residual": float(np.max(vierbein.reconstruction_residual())),
            "vierbein_bound": float(np.max(vierbein.residual_bound())),
        }


def spacetime_loop(path: ClosedPath, duration: float) -> SpacetimeLoop:
    """`path` with times t_k = duration sin(2 pi k / n) attached to its vertices."""
    count = len(path.vertices)
    times = duration * np.sin(2.0 * np.pi * np.arange(count) / count)
    return SpacetimeLoop(np.column_stack([times, path.vertices]), path.subdivisions)


class GaugeCheckExperiment(BaseExperiment):
    def run(self) -> dict[str, Any]:
        setup = self.config.setup
        path = self.require(self.config.path, "path")
        options = self.config.gauge
        metric = rotating_metric(setup)
        loop = spacetime_loop(path, options.time)
        checked = loop.vertices * np.array([setup.c, 1.0, 1.0, 1.0])

        reference = weakfield_phase(loop, metric, setup)
        static = weakfield_phase(path, metric, setup)
        sagnac = sagnac_phase(path, setup)

        rng = np.random.default_rng(self.config.seed)
        deltas, shift_residuals = [], []
        for trial in range(options.trials):
            gauge = SmoothGauge.random(rng, options.modes, options.amplitude, twist=options.twist)
            transformed, shift = gauge_transform_weakfield(
                metric, gauge, points=checked, enforce_rest_frame=options.rest_frame
            )
            phase = weakfield_phase(loop, transformed, setup)
            deltas.append(abs(phase.value - reference.value))
            shift_residuals.append(shift.residual(checked))
            _LOGGER.debug("Gauge trial %d: phase change %.3g", trial, deltas[-1])

        largest = max(deltas)
        restricted = not any(options.twist)
        invariant = largest <= PHASE_TOLERANCE
        if restricted and not invariant:
            self.warn(f"restricted gauge changed the loop phase by {largest:.3g}")
        _LOGGER.info("Gauge check over %d trials: max phase change %.3g", options.trials, largest)
        summary = reference.to_summary()
        summary.update(
            {
                "invariant": invariant,
                "restricted": restricted,
                "trials": options.trials,
                "max_phase_delta": largest,
                "max_shift_residual": max(shift_residuals),
                "static_phase_rad": static.value,
                "sagnac_phase_rad": sagnac.value,
                "sagnac_residual": abs(static.value - sagnac.value),
            }
        )
        return summary
