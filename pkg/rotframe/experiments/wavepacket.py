"""Grid experiments: free propagation and the Ehrenfest comparison."""

import logging
from typing import Any

import numpy as np

from ..core import StabilityError, WaveState, grid_norm
from ..dynamics import (
    Propagator,
    RotatingHamiltonian,
    build_hamiltonian,
    classical_trajectory,
    ehrenfest_trajectory,
    write_snapshot,
    write_trajectory,
)
from . import BaseExperiment

_LOGGER = logging.getLogger(__name__)

SERIES_FILE = "series.csv"
SNAPSHOT_FILE = "final_state.rfws"
TRAJECTORY_FILE = "trajectory.csv"
CLASSICAL_FILE = "classical.csv"


class WavePacketExperiment(BaseExperiment):
    def hamiltonian(self) -> RotatingHamiltonian:
        options = self.config.hamiltonian
        return build_hamiltonian(
            self.config.setup,
            include_spin=options.spin,
            include_spin_orbit=options.spin_orbit,
            grid=self.require(self.config.grid, "grid"),
            trap_frequency=options.trap_frequency,
        )

    def initial_state(self, hamiltonian: RotatingHamiltonian) -> WaveState:
        packet = self.require(self.config.packet, "packet")
        spinor = packet.spinor
        if spinor is not None and not hamiltonian.spinful:
            self.warn("packet spinor ignored: spin terms are off")
            spinor = None
        return WaveState.gaussian(
            self.config.grid,
            packet.center,
            packet.width,
            momentum=packet.momentum,
            hbar=self.config.setup.hbar,
            spinor=spinor,
        )

    def propagator(self, hamiltonian: RotatingHamiltonian) -> Propagator:
        integrator = self.require(self.config.integrator, "integrator")
        return Propagator(
            hamiltonian, self.config.grid, integrator.dt, boundary=self.config.hamiltonian.boundary
        )


class PropagateExperiment(WavePacketExperiment):
    def run(self) -> dict[str, Any]:
        integrator = self.config.integrator
        hamiltonian = self.hamiltonian()
        state = self.initial_state(hamiltonian)
        propagator = self.propagator(hamiltonian)
        hbar = self.config.setup.hbar

        columns: dict[str, list[float]] = {
            name: [] for name in ("t", "norm", "x", "y", "z", "px", "py", "pz")
        }

        def sample(current: WaveState):
            position = current.expectation_position()
            momentum = current.expectation_momentum(hbar)
            columns["t"].append(current.time)
            columns["norm"].append(grid_norm(current))
            for axis, name in enumerate("xyz"):
                columns[name].append(float(position[axis]))
                columns[f"p{name}"].append(float(momentum[axis]))

        initial_norm = grid_norm(state)
        sample(state)
        done = 0
        try:
            while done < integrator.steps:
                chunk = min(integrator.sample_every, integrator.steps - done)
                state = propagator.evolve(state, chunk)
                done += chunk
                sample(state)
        finally:
            self.collect_warnings(propagator.warnings)
        self.write_series(SERIES_FILE, columns)
        if self.config.output.snapshot:
            write_snapshot(state, self.artifact(SNAPSHOT_FILE))

        final_norm = grid_norm(state)
        _LOGGER.info("Propagated %d steps to t=%.6g, norm %.15g", done, state.time, final_norm)
        return {
            "steps": done,
            "dt": integrator.dt,
            "final_time": state.time,
            "initial_norm": initial_norm,
            "final_norm": final_norm,
            "norm_drift": abs(final_norm - initial_norm) / initial_norm,
            "stability_number": propagator.stability_number,
            "boundary_fraction": propagator.boundary_fraction,
            "final_position": state.expectation_position().tolist(),
            "final_momentum": state.expectation_momentum(hbar).tolist(),
            "spinful": hamiltonian.spinful,
        }


class EhrenfestExperiment(WavePacketExperiment):
    def run(self) -> dict[str, Any]:
        integrator = self.config.integrator
        hamiltonian = self.hamiltonian()
        state = self.initial_state(hamiltonian)
        propagator = self.propagator(hamiltonian)
        try:
            trajectory = ehrenfest_trajectory(
                state,
                hamiltonian,
                integrator.dt,
                integrator.steps,
                sample_every=integrator.sample_every,
                propagator=propagator,
            )
        finally:
            self.collect_warnings(propagator.warnings)
        if trajectory.boundary_hit:
            message = "packet reached the grid boundary; the trajectory is not valid"
            if integrator.strict:
                raise StabilityError(message)
            self.warn(message)
        write_trajectory(trajectory, self.artifact(TRAJECTORY_FILE))

        positions, velocities = classical_trajectory(
            trajectory.mean_position[0],
            trajectory.mean_velocity[0],
            hamiltonian.field.omega,
            trajectory.times,
            trap_frequency=hamiltonian.trap_frequency,
        )
        classical = {"t": trajectory.times}
        for axis, name in enumerate("xyz"):
            classical[name] = positions[:, axis]
        for axis, name in enumerate("xyz"):
            classical[f"v{name}"] = velocities[:, axis]
        self.write_series(CLASSICAL_FILE, classical)

        scale = float(np.max(np.linalg.norm(positions, axis=1)))
        error = float(np.max(np.linalg.norm(trajectory.mean_position - positions, axis=1)))
        deviation = error / scale if scale > 0 else error
        residual = trajectory.ehrenfest_residual() if len(trajectory.times) >= 3 else None
        _LOGGER.info("Ehrenfest deviation from the classical orbit: %.3g", deviation)
        return {
            "samples": len(trajectory.times),
            "final_time": float(trajectory.times[-1]),
            "classical_deviation": deviation,
            "ehrenfest_residual": residual,
            "boundary_hit": trajectory.boundary_hit,
            "final_position": trajectory.mean_position[-1].tolist(),
            "final_velocity": trajectory.mean_velocity[-1].tolist(),
        }
