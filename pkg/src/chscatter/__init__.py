"""Inverse scattering pipeline for the Camassa-Holm shallow-water equation.

Forward Liouville transform of a momentum profile into a Schroedinger
potential, Jost-solution computation by two independent methods, exact
recovery of the momentum through the monotone coordinate map, solitary-wave
reference solutions, and a shooting-method bound-state locator.
"""

from .errors import ChscatterError, ConvergenceError, DomainError, InvariantError
from .numerics import (
    Grid1D,
    MonotoneMap,
    SampledFunction,
    cumulative_integral,
    derivative,
    interpolate,
    interpolate_many,
    invert_monotone,
    invert_monotone_many,
)
from .liouville import (
    MomentumProfile,
    PotentialProfile,
    compute_potential,
    forward_coordinate,
)
from .jost import JostFunction, jost_residual, solve_jost_ode, solve_jost_volterra
from .recovery import (
    RecoveryDiagnostics,
    RecoveryResult,
    compute_H,
    invert_pipeline,
    recover_m,
)
from .solitary import (
    SolitaryWaveSpec,
    growing_solution,
    helmholtz_inverse,
    reduction_of_order_integral,
    reduction_of_order_jost,
    solitary_jost_exact,
    solitary_potential,
    solitary_potential_profile,
    solitary_profile,
    traveling_wave_residual,
)
from .spectrum import EigenvalueReport, find_eigenvalues, matching_wronskian

__version__ = "0.1.0"

__all__ = [
    "ChscatterError",
    "InvariantError",
    "DomainError",
    "ConvergenceError",
    "Grid1D",
    "SampledFunction",
    "MonotoneMap",
    "cumulative_integral",
    "derivative",
    "interpolate",
    "interpolate_many",
    "invert_monotone",
    "invert_monotone_many",
    "MomentumProfile",
    "PotentialProfile",
    "forward_coordinate",
    "compute_potential",
    "JostFunction",
    "solve_jost_ode",
    "solve_jost_volterra",
    "jost_residual",
    "RecoveryDiagnostics",
    "RecoveryResult",
    "compute_H",
    "recover_m",
    "invert_pipeline",
    "SolitaryWaveSpec",
    "solitary_potential",
    "solitary_potential_profile",
    "solitary_jost_exact",
    "growing_solution",
    "reduction_of_order_integral",
    "reduction_of_order_jost",
    "solitary_profile",
    "helmholtz_inverse",
    "traveling_wave_residual",
    "EigenvalueReport",
    "find_eigenvalues",
    "matching_wronskian",
    "__version__",
]
