"""Weighted equilibrium measures, capacities, and psi-function lower bounds."""

from .equilibrium import (
    CapacityReport,
    EquilibriumMeasure,
    SolveOptions,
    SupportConfig,
    capacity,
    determine_support,
    discrete_energy_minimize,
    harmonic_cross_check,
    solve_equilibrium,
    solve_jacobi,
)
from .fekete import (
    FeketeSet,
    GSCertificate,
    exact_gs_certificate,
    fekete_points,
    transfinite_sequence,
)
from .gsbound import BoundReport, OptimizeOptions, bound_coefficient, optimize_exponents
from .primes import PsiTable, build_psi, empirical_bound_check, verify_psi_lcm
from .quadrature import (
    GapIntegralSpec,
    integrate_sqrt_singular,
    log_potential_of_density,
    principal_value_gap,
)
from .weights import (
    FactoredWeight,
    RootWeight,
    log_weight,
    parse_weight_config,
    serialize_weight_config,
    to_root_form,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CapacityReport",
    "EquilibriumMeasure",
    "FactoredWeight",
    "FeketeSet",
    "GSCertificate",
    "GapIntegralSpec",
    "OptimizeOptions",
    "PsiTable",
    "RootWeight",
    "SolveOptions",
    "SupportConfig",
    "bound_coefficient",
    "build_psi",
    "capacity",
    "determine_support",
    "discrete_energy_minimize",
    "empirical_bound_check",
    "exact_gs_certificate",
    "fekete_points",
    "harmonic_cross_check",
    "integrate_sqrt_singular",
    "log_potential_of_density",
    "log_weight",
    "optimize_exponents",
    "parse_weight_config",
    "principal_value_gap",
    "serialize_weight_config",
    "solve_equilibrium",
    "solve_jacobi",
    "to_root_form",
    "transfinite_sequence",
    "verify_psi_lcm",
]
