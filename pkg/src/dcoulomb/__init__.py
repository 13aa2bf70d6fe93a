"""Attractive 1/r problem in d spatial dimensions.

Closed-form bound-state spectrum with its exact degeneracy combinatorics,
hyperspherical harmonics built from associated Gegenbauer factors, the
closed-form radial functions, and an independent finite-difference radial
eigensolver that reproduces the analytic energies.
"""

from .hypersphere import (
    AngularChain,
    AngularRuleSet,
    HypersphericalPoint,
    angular_laplacian_apply,
    harmonic_eval,
    harmonic_inner_product,
    metric_diagonal,
    sphere_surface_measure,
    to_cartesian,
    to_hyperspherical,
)
from .quadrature import QuadratureRule, gauss_jacobi_half, gauss_legendre, rule_for_degree
from .radial import (
    RadialGrid,
    RadialState,
    count_radial_nodes,
    default_radial_grid,
    quantization,
    radial_expectation_inverse_r,
    radial_ode_residual,
    radial_wavefunction,
    solve_radial_numeric,
)
from .specialfn import (
    GegenbauerParam,
    associated_gegenbauer,
    gegenbauer,
    gegenbauer_derivative,
    gegenbauer_ode_residual,
    kummer_m,
    normalize_angular_factor,
)
from .spectrum import (
    LevelIndex,
    PhysicalParams,
    casimir_eigenvalue,
    casimir_energy_consistency,
    degeneracy,
    energy_level,
    enumerate_level_states,
    so_d_rep_dim,
)
from .verify import CheckResult, run_all

__version__ = "0.1.0"

__all__ = [
    "AngularChain",
    "AngularRuleSet",
    "CheckResult",
    "GegenbauerParam",
    "HypersphericalPoint",
    "LevelIndex",
    "PhysicalParams",
    "QuadratureRule",
    "RadialGrid",
    "RadialState",
    "angular_laplacian_apply",
    "associated_gegenbauer",
    "casimir_eigenvalue",
    "casimir_energy_consistency",
    "count_radial_nodes",
    "default_radial_grid",
    "degeneracy",
    "energy_level",
    "enumerate_level_states",
    "gauss_jacobi_half",
    "gauss_legendre",
    "gegenbauer",
    "gegenbauer_derivative",
    "gegenbauer_ode_residual",
    "harmonic_eval",
    "harmonic_inner_product",
    "kummer_m",
    "metric_diagonal",
    "normalize_angular_factor",
    "quantization",
    "radial_expectation_inverse_r",
    "radial_ode_residual",
    "radial_wavefunction",
    "rule_for_degree",
    "run_all",
    "so_d_rep_dim",
    "solve_radial_numeric",
    "sphere_surface_measure",
    "to_cartesian",
    "to_hyperspherical",
]
