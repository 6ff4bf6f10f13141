# -*- coding: UTF-8 -*-

__version__ = "0.1.0"

# Scenario ----------------------------------------------------------------------------------------------
# fmt: off
from staggerwh.scenario import ScatteringScenario, WaveVector, solve_dispersion, incident_field, annulus_radii, defect_sites

# Numerics ----------------------------------------------------------------------------------------------
from staggerwh.laurent import ContourGrid, LaurentSeries, sample, to_series, split_additive, shift_split_minus, shift_split_plus, project_D, coeff, contour_bounds, choose_contour
from staggerwh.kernel import KernelBundle, eval_HRQ, branch_sqrt, lam, distinguished_zeros, scalar_kernels, alpha_beta
from staggerwh.factorize import FactorPair, FactorSuite, winding_number, cauchy_factorize, kernel_sqrt_factors, chebyshev_tilde_factors, build_factor_suite
from staggerwh.problem import ScatteringProblem

# Reduced systems ---------------------------------------------------------------------------------------
from staggerwh.crack import ReducedSolution, assemble_Ax, assemble_Finc, solve_crack
from staggerwh.constraint import ConstraintSolution, assemble_J, assemble_K, assemble_Ginc, boundary_sum_transform, boundary_sum_direct, solve_constraint

# Synthesis ---------------------------------------------------------------------------------------------
from staggerwh.synthesis import RhsFactors, WHSolution, LatticeField, FieldSynthesizer, solve_reduced, build_rhs_factors, wh_solution_on_contour, row_transforms, inverse_transform, synthesize_field, stagger_perturbation, consistency_report, quadrature_check, flip_check

# Oracle ------------------------------------------------------------------------------------------------
from staggerwh.oracle import GridProblem, OracleTraces, solve_grid, extract_traces, self_convergence, compare_fields, compare_segments

# CLI ---------------------------------------------------------------------------------------------------
from staggerwh.cli import RunConfig, run_checks, run

# Exceptions --------------------------------------------------------------------------------------------
# fmt: on
# . base
from staggerwh.errors import StaggerWHError, StaggerWHInvalidValueError, StaggerWHNumericError

# . config
from staggerwh.errors import ConfigError, ConfigFileNotFoundError, ConfigSchemaError

# . scenario
from staggerwh.errors import (
    ScenarioError,
    InvalidScenarioError,
    NoConvergenceError,
    DegenerateAngleError,
    EmptyAnnulusError,
)

# . laurent
from staggerwh.errors import (
    LaurentError,
    InvalidContourError,
    NonFiniteSampleError,
    PoleOnContourError,
)

# . kernel
from staggerwh.errors import (
    KernelError,
    ZeroArgumentError,
    OnBranchCutError,
    UnitModulusRootError,
    KernelDivisionByZeroError,
)

# . factorization
from staggerwh.errors import (
    FactorizationError,
    WindingNonZeroError,
    VanishingSampleError,
    RootSelectionAmbiguousError,
)

# . reduced systems
from staggerwh.errors import (
    ReducedSystemError,
    SingularSystemError,
    ZqOnContourError,
    ResonantIncidenceError,
)

# . synthesis
from staggerwh.errors import SynthesisError, ResidualTooLargeError

# . oracle
from staggerwh.errors import OracleError, IterationDivergenceError, WindowTooSmallError

# All ---------------------------------------------------------------------------------------------------
# fmt: off
__all__ = [
    # Scenario
    "ScatteringScenario", "WaveVector", "solve_dispersion", "incident_field", "annulus_radii", "defect_sites",
    # Numerics
    "ContourGrid", "LaurentSeries", "sample", "to_series", "split_additive", "shift_split_minus",
    "shift_split_plus", "project_D", "coeff", "contour_bounds", "choose_contour",
    "KernelBundle", "eval_HRQ", "branch_sqrt", "lam", "distinguished_zeros", "scalar_kernels", "alpha_beta",
    "FactorPair", "FactorSuite", "winding_number", "cauchy_factorize", "kernel_sqrt_factors",
    "chebyshev_tilde_factors", "build_factor_suite", "ScatteringProblem",
    # Reduced systems
    "ReducedSolution", "assemble_Ax", "assemble_Finc", "solve_crack",
    "ConstraintSolution", "assemble_J", "assemble_K", "assemble_Ginc", "boundary_sum_transform", "boundary_sum_direct", "solve_constraint",
    # Synthesis
    "RhsFactors", "WHSolution", "LatticeField", "FieldSynthesizer", "solve_reduced", "build_rhs_factors",
    "wh_solution_on_contour", "row_transforms", "inverse_transform", "synthesize_field", "stagger_perturbation",
    "consistency_report", "quadrature_check", "flip_check",
    # Oracle
    "GridProblem", "OracleTraces", "solve_grid", "extract_traces", "self_convergence", "compare_fields", "compare_segments",
    # CLI
    "RunConfig", "run_checks", "run",
    # Exceptions
    # . base
    "StaggerWHError", "StaggerWHInvalidValueError", "StaggerWHNumericError",
    # . config
    "ConfigError", "ConfigFileNotFoundError", "ConfigSchemaError",
    # . scenario
    "ScenarioError", "InvalidScenarioError", "NoConvergenceError", "DegenerateAngleError", "EmptyAnnulusError",
    # . laurent
    "LaurentError", "InvalidContourError", "NonFiniteSampleError", "PoleOnContourError",
    # . kernel
    "KernelError", "ZeroArgumentError", "OnBranchCutError", "UnitModulusRootError", "KernelDivisionByZeroError",
    # . factorization
    "FactorizationError", "WindingNonZeroError", "VanishingSampleError", "RootSelectionAmbiguousError",
    # . reduced systems
    "ReducedSystemError", "SingularSystemError", "ZqOnContourError", "ResonantIncidenceError",
    # . synthesis
    "SynthesisError", "ResidualTooLargeError",
    # . oracle
    "OracleError", "IterationDivergenceError", "WindowTooSmallError",
]
