# -*- coding: UTF-8 -*-
from __future__ import annotations


# Base --------------------------------------------------------------------------------------------------
class StaggerWHError(Exception):
    """Base class for exceptions in this package."""


class StaggerWHInvalidValueError(StaggerWHError, ValueError):
    """Base exception class for all invalid value errors."""


class StaggerWHNumericError(StaggerWHError, ArithmeticError):
    """Base exception class for all numeric failures."""


# Config ------------------------------------------------------------------------------------------------
class ConfigError(StaggerWHInvalidValueError):
    """Base exception class for all configuration errors."""


class ConfigFileNotFoundError(ConfigError, FileNotFoundError):
    """The config file could not be found at the given path."""


class ConfigSchemaError(ConfigError):
    """Exception raised when a config violates the schema."""


# Scenario ----------------------------------------------------------------------------------------------
class ScenarioError(StaggerWHError):
    """Base exception class for all scenario errors."""


class InvalidScenarioError(ScenarioError, StaggerWHInvalidValueError):
    """Exception raised for invalid scenario parameters."""


class NoConvergenceError(ScenarioError, StaggerWHNumericError):
    """Exception raised when the dispersion solve does not converge."""


class DegenerateAngleError(ScenarioError, StaggerWHNumericError):
    """Exception raised when the dispersion derivative vanishes at the root."""


class EmptyAnnulusError(ScenarioError, StaggerWHNumericError):
    """Exception raised when the annulus of joint analyticity is empty."""


# Laurent -----------------------------------------------------------------------------------------------
class LaurentError(StaggerWHError):
    """Base exception class for all Laurent series errors."""


class InvalidContourError(LaurentError, StaggerWHInvalidValueError):
    """Exception raised for an invalid contour radius or sample count."""


class NonFiniteSampleError(LaurentError, StaggerWHNumericError):
    """Exception raised when a sampled function is not finite on the contour."""


class PoleOnContourError(LaurentError, StaggerWHNumericError):
    """Exception raised when a pole lies on the sampling contour."""


# Kernel ------------------------------------------------------------------------------------------------
class KernelError(StaggerWHError):
    """Base exception class for all kernel errors."""


class ZeroArgumentError(KernelError, StaggerWHInvalidValueError):
    """Exception raised when a kernel is evaluated at z = 0."""


class OnBranchCutError(KernelError, StaggerWHNumericError):
    """Exception raised when a square root is taken on its branch cut."""


class UnitModulusRootError(KernelError, StaggerWHNumericError):
    """Exception raised when a distinguished zero sits on the unit circle."""


class KernelDivisionByZeroError(KernelError, StaggerWHNumericError, ZeroDivisionError):
    """Exception raised when a scalar kernel is evaluated at one of its poles."""


# Factorization -----------------------------------------------------------------------------------------
class FactorizationError(StaggerWHError):
    """Base exception class for all factorization errors."""


class WindingNonZeroError(FactorizationError, StaggerWHNumericError):
    """Exception raised when the factored function has a nonzero index."""


class VanishingSampleError(FactorizationError, StaggerWHNumericError):
    """Exception raised when the factored function vanishes on the contour."""


class RootSelectionAmbiguousError(FactorizationError, StaggerWHNumericError):
    """Exception raised when both roots of a quadratic lie on the unit circle."""


# Reduced systems ---------------------------------------------------------------------------------------
class ReducedSystemError(StaggerWHError):
    """Base exception class for all reduced system errors."""


class SingularSystemError(ReducedSystemError, StaggerWHNumericError):
    """Exception raised when the reduced system is singular or ill conditioned."""


class ZqOnContourError(ReducedSystemError, StaggerWHNumericError):
    """Exception raised when the interior zero of Q is not inside the contour."""


class ResonantIncidenceError(ReducedSystemError, StaggerWHNumericError):
    """Exception raised when the incident pole coincides with the zero of Q."""


# Synthesis ---------------------------------------------------------------------------------------------
class SynthesisError(StaggerWHError):
    """Base exception class for all field synthesis errors."""


class ResidualTooLargeError(SynthesisError, StaggerWHNumericError):
    """Exception raised when the Wiener-Hopf residual exceeds the tolerance."""


# Oracle ------------------------------------------------------------------------------------------------
class OracleError(StaggerWHError):
    """Base exception class for all direct grid solver errors."""


class IterationDivergenceError(OracleError, StaggerWHNumericError):
    """Exception raised when the grid solve fails to reach the tolerance."""


class WindowTooSmallError(OracleError, StaggerWHInvalidValueError):
    """Exception raised when the grid window does not cover the defects."""
