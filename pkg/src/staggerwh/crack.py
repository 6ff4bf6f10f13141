# -*- coding: UTF-8 -*-
from __future__ import annotations
from typing import Callable
import numpy as np
from pandas import DataFrame
from scipy.linalg import lu_factor, lu_solve
from staggerwh import errors
from staggerwh.logs import logger
from staggerwh.laurent import to_series, project_D
from staggerwh.problem import ScatteringProblem, delta_plus
from staggerwh.scenario import ScatteringScenario, WaveVector
from staggerwh.settings import DefaultContour, Tolerances

__all__ = [
    "ReducedSolution",
    "incident_jump_plus",
    "assemble_Ax",
    "assemble_Finc",
    "dense_solve",
    "solve_crack",
]


# Reduced solution --------------------------------------------------------------------------------
class ReducedSolution:
    """Segment unknowns of a reduced system with its diagnostics."""

    def __init__(
        self,
        segment: list[int],
        unknowns: np.ndarray,
        matrix: np.ndarray,
        rhs: np.ndarray,
        residual: float,
        condition: float,
    ) -> None:
        self._segment: list[int] = list(segment)
        self._unknowns: np.ndarray = np.asarray(unknowns, dtype=complex)
        self._matrix: np.ndarray = np.asarray(matrix, dtype=complex)
        self._rhs: np.ndarray = np.asarray(rhs, dtype=complex)
        self._residual: float = float(residual)
        self._condition: float = float(condition)

    # Properties ---------------------------------------------------------------
    @property
    def segment(self) -> list[int]:
        """Access the segment indices `x ∈ 𝔻` in increasing order `<list[int]>`."""
        return self._segment

    @property
    def unknowns(self) -> np.ndarray:
        """Access the full solution vector `<ndarray[complex]>`."""
        return self._unknowns

    @property
    def chi(self) -> np.ndarray:
        """Access the segment values, aligned with `segment` `<ndarray[complex]>`."""
        return self._unknowns[: len(self._segment)]

    @property
    def matrix(self) -> np.ndarray:
        """Access the assembled matrix `<ndarray[complex]>`."""
        return self._matrix

    @property
    def rhs(self) -> np.ndarray:
        """Access the assembled right-hand side `<ndarray[complex]>`."""
        return self._rhs

    @property
    def residual(self) -> float:
        """Access `max |A χ - b|` `<float>`."""
        return self._residual

    @property
    def condition(self) -> float:
        """Access the 2-norm condition number of the matrix `<float>`."""
        return self._condition

    def segment_values(self) -> dict[int, complex]:
        """Mapping `{x: χ_x}` over the segment `<dict>`."""
        return {x: complex(v) for x, v in zip(self._segment, self.chi)}

    def to_frame(self) -> DataFrame:
        """Segment table with columns `x`, `re`, `im`, `abs` `<DataFrame>`."""
        chi = self.chi
        return DataFrame(
            {"x": np.array(self._segment, dtype=int), "re": chi.real, "im": chi.imag, "abs": np.abs(chi)}
        )

    def summary(self) -> dict:
        """Diagnostics for manifests `<dict>`."""
        return {
            "size": int(self._unknowns.size),
            "residual": self._residual,
            "condition": self._condition,
        }

    def __len__(self) -> int:
        return self._unknowns.size

    def __repr__(self) -> str:
        return "<%s (size=%d, residual=%.2e, condition=%.2e)>" % (
            self.__class__.__name__,
            self._unknowns.size,
            self._residual,
            self._condition,
        )


def dense_solve(matrix: np.ndarray, rhs: np.ndarray, label: str) -> tuple[np.ndarray, float, float]:
    """LU solve of a small dense system with conditioning and residual checks.

    :returns: `<tuple>` The solution, `max |A x - b|` and the condition number.
    :raises SingularSystemError: The matrix is singular, ill conditioned, or
        the solution misses the residual tolerance.
    """
    matrix = np.asarray(matrix, dtype=complex)
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.size == 0:
        return np.zeros(0, dtype=complex), 0.0, 1.0
    condition = float(np.linalg.cond(matrix))
    if not np.isfinite(condition) or condition > Tolerances.CONDITION_LIMIT:
        raise errors.SingularSystemError(
            "<{}>\nReduced system is singular or ill conditioned "
            "(condition {:.3e}).".format(label, condition)
        )
    try:
        solution = lu_solve(lu_factor(matrix), rhs)
    except Exception as err:
        raise errors.SingularSystemError(
            "<{}>\nLU factorization failed: {}".format(label, err)
        ) from err
    residual = float(np.max(np.abs(matrix @ solution - rhs)))
    scale = max(float(np.linalg.norm(rhs)), np.finfo(float).tiny)
    if residual >= Tolerances.REDUCED_RESIDUAL * max(scale, 1.0):
        raise errors.SingularSystemError(
            "<{}>\nReduced system residual {:.3e} exceeds tolerance.".format(label, residual)
        )
    logger.info(
        "%s: %d unknowns, condition %.3e, residual %.3e", label, rhs.size, condition, residual
    )
    return solution, residual, condition


# Incident terms ----------------------------------------------------------------------------------
def incident_jump_plus(
    scenario: ScatteringScenario,
    wave: WaveVector,
) -> tuple[Callable[[np.ndarray], np.ndarray], Callable[[np.ndarray], np.ndarray]]:
    """Transforms over `x >= 0` of the incident bond differences across the
    two crack rows: `v₀^{inc+} = A(1 - e^{-iκ_y}) δ_D⁺(z/z_P)` and
    `v_N^{inc+} = e^{iκ_y N} v₀^{inc+}`.

    The returned functions raise `PoleOnContourError` when evaluated on the
    circle `|z| = |z_P|`.
    """
    zP = wave.zP
    base = scenario.amplitude * (1.0 - np.exp(-1j * wave.ky))
    e = np.exp(1j * wave.ky * scenario.n_sep)

    def v0(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(np.abs(z) - abs(zP)) <= DefaultContour.ON_CONTOUR_TOL * abs(zP)):
            raise errors.PoleOnContourError(
                "<incident_jump_plus>\nEvaluation on the circle |z| = |z_P| = {:.12g}.".format(
                    abs(zP)
                )
            )
        return base * delta_plus(z / zP)

    def vN(z: np.ndarray) -> np.ndarray:
        return e * v0(z)

    return v0, vN


# Assembly ----------------------------------------------------------------------------------------
def assemble_Ax(x: int, problem: ScatteringProblem) -> np.ndarray:
    """Column function of the reduced crack system on the contour.

    For `x >= 0`: `𝒜_x = φ_x⁺/α₊ + ψ_x⁺/β₊` with `φ_x⁺`, `ψ_x⁺` the plus
    halves of `(1/α)₋ z^{-x}` and `(1/β)₋ z^{-x}`.

    For `x < 0`: `ℬ_x = Φ_{-x}⁻ α₋ + Ψ_{-x}⁻ β₋` with `Φ⁻`, `Ψ⁻` the minus
    halves of `α₊ z^{-x}` and `β₊ z^{-x}`.
    """
    suite = problem.suite
    grid = problem.grid
    if x >= 0:
        phi_plus, _, psi_plus, _ = suite.shift_minus(x)
        return phi_plus.to_samples(grid) / suite.ap + psi_plus.to_samples(grid) / suite.bp
    _, Phi_minus, _, Psi_minus = suite.shift_plus(-x)
    return Phi_minus.to_samples(grid) * suite.am + Psi_minus.to_samples(grid) * suite.bm


def assemble_Finc(problem: ScatteringProblem, incident_plus: np.ndarray | None = None) -> np.ndarray:
    """Incident forcing of the reduced crack system on the contour.

    For `M >= 0`:
    `ℱ = [-(1 - e)/(α₋(z_P) α₊) + (1 + e)/(β₋(z_P) β₊)] e^{-iκ_y N} v_N^{inc+}`.

    For `M < 0` the minus-side analogue
    `ℱ_N = -[-(1 - e) α₋/α₋(z_P) + (1 + e) β₋/β₋(z_P)] e^{-iκ_y N} v_N^{inc+}`
    is returned together with `2 v_N^{inc+}`, whose sum has no pole at `z_P`
    while the negative-index coefficients are unchanged.

    :param incident_plus: `<ndarray/None>` Samples of `v_N^{inc+}`. Defaults to
        `None` (computed from the problem).
    """
    suite = problem.suite
    e = problem.e
    if incident_plus is None:
        _, vN = incident_jump_plus(problem.scenario, problem.wave)
        incident_plus = vN(problem.grid.nodes)
    scaled = incident_plus / e
    if problem.scenario.m_offset >= 0:
        bracket = -(1.0 - e) / (suite.am_P * suite.ap) + (1.0 + e) / (suite.bm_P * suite.bp)
        return bracket * scaled
    bracket = -(1.0 - e) * suite.am / suite.am_P + (1.0 + e) * suite.bm / suite.bm_P
    return 2.0 * incident_plus - bracket * scaled


def assemble_crack_system(problem: ScatteringProblem) -> tuple[np.ndarray, np.ndarray]:
    """Matrix and right-hand side of the reduced crack system, unknowns
    ordered by increasing `x ∈ 𝔻`.
    """
    xs = problem.segment
    size = len(xs)
    matrix = np.zeros((size, size), dtype=complex)
    rhs = np.zeros(size, dtype=complex)
    if not size:
        return matrix, rhs
    grid = problem.grid
    d_lo, d_hi = xs[0], xs[-1]
    for nu, x_nu in enumerate(xs):
        column = project_D(to_series(assemble_Ax(x_nu, problem), grid), d_lo, d_hi)
        matrix[:, nu] = [column.coeff(x_mu) for x_mu in xs]
    forcing = project_D(to_series(assemble_Finc(problem), grid), d_lo, d_hi)
    rhs[:] = [forcing.coeff(x_mu) for x_mu in xs]
    if problem.scenario.m_offset < 0:
        rhs += 2.0 * problem.incident_jump(np.array(xs), problem.scenario.n_sep)
    return matrix, rhs


def solve_crack(scenario: ScatteringScenario | ScatteringProblem) -> ReducedSolution:
    """Solve the reduced crack system for the total relative openings
    `v^t_{x,N}`, `x ∈ 𝔻`, of the upper row along the stagger segment.

    :param scenario: `<ScatteringScenario/ScatteringProblem>` A crack-pair run.
    :raises SingularSystemError: The system is ill conditioned.
    """
    problem = scenario if isinstance(scenario, ScatteringProblem) else ScatteringProblem(scenario)
    if not problem.scenario.is_crack:
        raise errors.StaggerWHInvalidValueError(
            "<solve_crack>\nExpects a crack-pair scenario, instead got '{}'.".format(
                problem.scenario.kind
            )
        )
    matrix, rhs = assemble_crack_system(problem)
    chi, residual, condition = dense_solve(matrix, rhs, "solve_crack")
    return ReducedSolution(problem.segment, chi, matrix, rhs, residual, condition)
