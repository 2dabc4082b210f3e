from .export import read_sparse_triplets, write_field_csv, write_sparse_triplets
from .gamma import ALPHA, BETA, ETA, anticommutator_residual, gamma_matrices, lorentz_generators
from .metric import (
    GaugeShift,
    SmoothGauge,
    SpinConnection,
    Vierbein,
    WeakMetric,
    build_vierbein,
    finite_difference_derivative,
    flat_metric,
    gauge_transform_weakfield,
    rotating_metric,
    spacetime_points,
    spin_connection,
)
from .operators import (
    DiracOperator,
    EffectiveFields,
    PauliComparison,
    PauliHamiltonian,
    compare_pauli_limit,
    dirac_hamiltonian_matrix,
    effective_fields,
    low_energy_dirac_operator,
    metric_rotation,
    pauli_limit_budget,
    pauli_reduction,
    upper_component_eigenvalues,
    weakfield_schrodinger_hamiltonian,
)

__all__ = [
    "ALPHA",
    "BETA",
    "ETA",
    "DiracOperator",
    "EffectiveFields",
    "GaugeShift",
    "PauliComparison",
    "PauliHamiltonian",
    "SmoothGauge",
    "SpinConnection",
    "Vierbein",
    "WeakMetric",
    "anticommutator_residual",
    "build_vierbein",
    "compare_pauli_limit",
    "dirac_hamiltonian_matrix",
    "effective_fields",
    "finite_difference_derivative",
    "flat_metric",
    "gamma_matrices",
    "gauge_transform_weakfield",
    "low_energy_dirac_operator",
    "lorentz_generators",
    "metric_rotation",
    "pauli_limit_budget",
    "pauli_reduction",
    "read_sparse_triplets",
    "rotating_metric",
    "spacetime_points",
    "spin_connection",
    "upper_component_eigenvalues",
    "weakfield_schrodinger_hamiltonian",
    "write_field_csv",
    "write_sparse_triplets",
]
