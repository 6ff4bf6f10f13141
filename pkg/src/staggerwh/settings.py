# -*- coding: UTF-8 -*-


# Defect kinds
class DefectKind:
    CRACK: str = "crack"
    CONSTRAINT: str = "constraint"
    ALL: set[str] = {"crack", "constraint"}


# Dispersion solve
class DefaultDispersion:
    MAX_ITER: int = 100
    STEP_TOL: float = 1e-15
    RESIDUAL_TOL: float = 1e-12
    DERIVATIVE_TOL: float = 1e-14


# Contour and sampling
class DefaultContour:
    SAMPLES: int = 4096
    MIN_SAMPLES: int = 256
    MAX_SAMPLES: int = 65536
    POLE_MARGIN: float = 1e-3
    SAMPLES_PER_OFFSET: int = 16
    TAIL_MASS: float = 1e-10
    ON_CONTOUR_TOL: float = 1e-12


# Kernel checks
class DefaultKernel:
    UNIT_ROOT_TOL: float = 1e-12
    BRANCH_CUT_TOL: float = 1e-14
    ZERO_TOL: float = 1e-12


# Numeric tolerances used across the pipelines
class Tolerances:
    REDUCED_RESIDUAL: float = 1e-8
    CONDITION_LIMIT: float = 1e12
    WH_RESIDUAL: float = 1e-8
    GINC: float = 1e-8
    HELMHOLTZ: float = 1e-6
    ORACLE_RESIDUAL: float = 1e-8
    FLIP: float = 1e-6
    RESONANCE: float = 1e-6
    FACTOR_PRODUCT: float = 1e-8


# Direct grid solve
class DefaultOracle:
    NG_BASE: int = 91
    SOLVER: str = "gmres"
    SOLVERS: set[str] = {"gmres", "bicgstab", "direct"}
    RTOL: float = 1e-10
    RESTART: int = 200
    MAX_ITER: int = 2000
    ILU_DROP_TOL: float = 1e-6
    ILU_FILL_FACTOR: float = 20.0


# Output window
class DefaultWindow:
    X_MIN: int = -20
    X_MAX: int = 20
    Y_MIN: int = -10
    Y_MAX: int = 15


# Table schemas
class Columns:
    FIELD: list[str] = ["x", "y", "re", "im", "abs", "re_total"]
    SEGMENT: list[str] = ["x", "re", "im", "abs"]
    FACTOR: list[str] = ["m", "re", "im"]
    KERNEL: list[str] = [
        "z_re", "z_im", "H_re", "H_im", "h_re", "h_im",
        "r_re", "r_im", "lam_re", "lam_im",
        "alpha_re", "alpha_im", "beta_re", "beta_im",
    ]  # fmt: skip
    COMPARE: list[str] = ["x", "y", "abs_err", "rel_err"]
    COMPARE_SEGMENT: list[str] = ["x", "abs_err", "rel_err"]


# Config schema
class ConfigSchema:
    BLOCKS: set[str] = {"scenario", "numerics", "outputs"}
    SCENARIO: set[str] = {
        "omega_re", "omega_im", "theta_deg", "amplitude_re",
        "amplitude_im", "kind", "N", "M", "validation",
    }  # fmt: skip
    NUMERICS: set[str] = {
        "contour_radius", "samples", "oracle_ng",
        "oracle_solver", "quadrature_check", "tolerances",
    }  # fmt: skip
    TOLERANCES: set[str] = {
        "wh_residual", "reduced_residual", "helmholtz", "oracle_residual", "flip",
    }  # fmt: skip
    OUTPUTS: set[str] = {"x_min", "x_max", "y_min", "y_max", "table_format", "emit"}
    EMIT: set[str] = {"kernel_table", "factor_tables", "split_fields"}
    TABLE_FORMATS: set[str] = {"csv", "feather"}
    FACTOR_FUNCTIONS: set[str] = {"Lk", "Lc", "alpha", "beta"}


# CLI exit codes
class ExitCode:
    OK: int = 0
    NUMERIC: int = 1
    CONFIG: int = 2
