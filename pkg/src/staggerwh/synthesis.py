# -*- coding: UTF-8 -*-
from __future__ import annotations
from typing import Any
import numpy as np
from pandas import DataFrame
from staggerwh import errors
from staggerwh.logs import logger
from staggerwh.laurent import ContourGrid, to_series
from staggerwh.crack import ReducedSolution, solve_crack
from staggerwh.constraint import (
    ConstraintSolution,
    solve_constraint,
    constraint_vectors,
    incident_halves,
    auxiliary_halves,
)
from staggerwh.problem import ScatteringProblem, J, J_INV
from staggerwh.scenario import ScatteringScenario, defect_sites
from staggerwh.settings import Columns, DefaultWindow, Tolerances

__all__ = [
    "RhsFactors",
    "WHSolution",
    "LatticeField",
    "FieldSynthesizer",
    "solve_reduced",
    "build_rhs_factors",
    "wh_solution_on_contour",
    "row_transforms",
    "inverse_transform",
    "synthesize_field",
    "stagger_perturbation",
    "consistency_report",
    "quadrature_check",
    "flip_check",
]

PARTS: set[str] = {"full", "aligned", "perturbation"}


# Data --------------------------------------------------------------------------------------------
class RhsFactors:
    """Additively split forcing of the diagonalized Wiener-Hopf problem.

    `forcing` is the right-hand side `g` of `𝐮⁻ + 𝐋𝐮⁺ = g`. For constraints
    `numerator` and `incident_rows` carry the terms that rebuild the
    constrained-row transforms from `𝐰⁻`.
    """

    def __init__(
        self,
        minus: np.ndarray,
        plus: np.ndarray,
        forcing: np.ndarray,
        part: str = "full",
        numerator: np.ndarray | None = None,
        incident_rows: np.ndarray | None = None,
    ) -> None:
        self._minus: np.ndarray = minus
        self._plus: np.ndarray = plus
        self._forcing: np.ndarray = forcing
        self._part: str = part
        self._numerator: np.ndarray | None = numerator
        self._incident_rows: np.ndarray | None = incident_rows

    @property
    def minus(self) -> np.ndarray:
        """Access the minus half `c⁻`, shape `(2, K)` `<ndarray[complex]>`."""
        return self._minus

    @property
    def plus(self) -> np.ndarray:
        """Access the plus half `c⁺`, shape `(2, K)` `<ndarray[complex]>`."""
        return self._plus

    @property
    def forcing(self) -> np.ndarray:
        """Access the Wiener-Hopf right-hand side `<ndarray[complex]>`."""
        return self._forcing

    @property
    def part(self) -> str:
        """Access which part of the forcing this is `<str>`."""
        return self._part

    @property
    def numerator(self) -> np.ndarray | None:
        """Access the constrained-row numerator terms `<ndarray/None>`."""
        return self._numerator

    @property
    def incident_rows(self) -> np.ndarray | None:
        """Access the prescribed plus parts of the constrained rows `<ndarray/None>`."""
        return self._incident_rows


class WHSolution:
    """Minus and plus halves of the unknown pair on the contour."""

    def __init__(self, minus: np.ndarray, plus: np.ndarray, residual: float) -> None:
        self._minus: np.ndarray = minus
        self._plus: np.ndarray = plus
        self._residual: float = float(residual)

    @property
    def minus(self) -> np.ndarray:
        """Access the minus half, shape `(2, K)` `<ndarray[complex]>`."""
        return self._minus

    @property
    def plus(self) -> np.ndarray:
        """Access the plus half, shape `(2, K)` `<ndarray[complex]>`."""
        return self._plus

    @property
    def full(self) -> np.ndarray:
        """Access the complete transforms, shape `(2, K)` `<ndarray[complex]>`."""
        return self._minus + self._plus

    @property
    def residual(self) -> float:
        """Access the relative Wiener-Hopf residual `<float>`."""
        return self._residual

    def __repr__(self) -> str:
        return "<%s (residual=%.2e)>" % (self.__class__.__name__, self._residual)


class LatticeField:
    """Complex displacement on a rectangular window of lattice sites."""

    def __init__(
        self,
        xs: np.ndarray,
        ys: np.ndarray,
        values: np.ndarray,
        incident: np.ndarray | None = None,
        label: str = "scattered",
    ) -> None:
        """A field on the window `xs × ys`.

        :param xs: `<ndarray[int]>` Column indices.
        :param ys: `<ndarray[int]>` Row indices.
        :param values: `<ndarray[complex]>` Scattered values, shape `(len(ys), len(xs))`.
        :param incident: `<ndarray/None>` Incident values of the same shape. Defaults to zeros.
        :param label: `<str>` A description of the field. Defaults to `'scattered'`.
        """
        self._xs: np.ndarray = np.asarray(xs, dtype=int)
        self._ys: np.ndarray = np.asarray(ys, dtype=int)
        self._values: np.ndarray = np.asarray(values, dtype=complex)
        if self._values.shape != (self._ys.size, self._xs.size):
            raise errors.SynthesisError(
                "<{}>\nValues of shape {} do not match the window {}x{}.".format(
                    self.__class__.__name__, self._values.shape, self._ys.size, self._xs.size
                )
            )
        if incident is None:
            incident = np.zeros_like(self._values)
        self._incident: np.ndarray = np.asarray(incident, dtype=complex)
        self._label: str = label

    # Properties ---------------------------------------------------------------
    @property
    def xs(self) -> np.ndarray:
        """Access the column indices `<ndarray[int]>`."""
        return self._xs

    @property
    def ys(self) -> np.ndarray:
        """Access the row indices `<ndarray[int]>`."""
        return self._ys

    @property
    def values(self) -> np.ndarray:
        """Access the scattered values `<ndarray[complex]>`."""
        return self._values

    @property
    def incident(self) -> np.ndarray:
        """Access the incident values `<ndarray[complex]>`."""
        return self._incident

    @property
    def total(self) -> np.ndarray:
        """The total field `u^t = u + u^inc` `<ndarray[complex]>`."""
        return self._values + self._incident

    @property
    def label(self) -> str:
        """Access the field label `<str>`."""
        return self._label

    # Access -------------------------------------------------------------------
    def at(self, x: int, y: int, total: bool = False) -> complex:
        """The value at site `(x, y)` `<complex>`."""
        i = int(np.searchsorted(self._ys, y))
        j = int(np.searchsorted(self._xs, x))
        if i >= self._ys.size or j >= self._xs.size or self._ys[i] != y or self._xs[j] != x:
            raise errors.WindowTooSmallError(
                "<{}>\nSite ({}, {}) lies outside the window.".format(self.__class__.__name__, x, y)
            )
        value = self._values[i, j] + (self._incident[i, j] if total else 0.0)
        return complex(value)

    def row(self, y: int, xs: list[int] | np.ndarray, total: bool = False) -> np.ndarray:
        """Values along row `y` at the columns `xs` `<ndarray[complex]>`."""
        return np.array([self.at(int(x), y, total) for x in xs], dtype=complex)

    def subwindow(self, x_min: int, x_max: int, y_min: int, y_max: int) -> LatticeField:
        """The field restricted to a smaller window `<LatticeField>`."""
        cols = (self._xs >= x_min) & (self._xs <= x_max)
        rows = (self._ys >= y_min) & (self._ys <= y_max)
        return LatticeField(
            self._xs[cols],
            self._ys[rows],
            self._values[np.ix_(rows, cols)],
            self._incident[np.ix_(rows, cols)],
            self._label,
        )

    # Checks -------------------------------------------------------------------
    def helmholtz_residual(self, omega: complex, scenario: ScatteringScenario | None = None) -> float:
        """Largest `|Δu + ω²u|` over interior sites off the defects, relative to
        `max |u|` `<float>`.
        """
        u = self._values
        if u.shape[0] < 3 or u.shape[1] < 3:
            return 0.0
        core = u[1:-1, 1:-1]
        lap = u[2:, 1:-1] + u[:-2, 1:-1] + u[1:-1, 2:] + u[1:-1, :-2] - 4.0 * core
        res = np.abs(lap + complex(omega) ** 2 * core)
        if scenario is not None:
            X, Y = np.meshgrid(self._xs[1:-1], self._ys[1:-1])
            res = np.where(defect_sites(scenario, X, Y), 0.0, res)
        scale = max(float(np.max(np.abs(u))), np.finfo(float).tiny)
        return float(np.max(res) / scale)

    def constrained_residual(self, scenario: ScatteringScenario) -> float:
        """Largest `|u^t|` over constrained sites in the window, relative to
        `max |u^t|` `<float>`.
        """
        if scenario.is_crack:
            return 0.0
        X, Y = np.meshgrid(self._xs, self._ys)
        mask = defect_sites(scenario, X, Y)
        total = np.abs(self.total)
        if not np.any(mask):
            return 0.0
        scale = max(float(np.max(total)), np.finfo(float).tiny)
        return float(np.max(total[mask]) / scale)

    # Conversion ---------------------------------------------------------------
    def to_frame(self) -> DataFrame:
        """Field table with columns `x, y, re, im, abs, re_total`, rows ordered
        by `y` then `x` `<DataFrame>`.
        """
        X, Y = np.meshgrid(self._xs, self._ys)
        values = self._values.ravel()
        frame = DataFrame(
            {
                "x": X.ravel(),
                "y": Y.ravel(),
                "re": values.real,
                "im": values.imag,
                "abs": np.abs(values),
                "re_total": self.total.ravel().real,
            }
        )
        return frame[Columns.FIELD]

    @classmethod
    def from_frame(cls, frame: DataFrame, label: str = "loaded") -> LatticeField:
        """(Class method) Rebuild a field from a table written by `to_frame`.

        The incident part is recovered from `re_total` only in its real part,
        so loaded fields are meant for comparisons of the scattered values.
        """
        xs = np.unique(frame["x"].to_numpy())
        ys = np.unique(frame["y"].to_numpy())
        ordered = frame.sort_values(["y", "x"])
        if len(ordered) != xs.size * ys.size:
            raise errors.SynthesisError(
                "<{}>\nTable does not cover a rectangular window.".format(cls.__name__)
            )
        values = (ordered["re"].to_numpy() + 1j * ordered["im"].to_numpy()).reshape(ys.size, xs.size)
        incident = (ordered["re_total"].to_numpy() - ordered["re"].to_numpy()).reshape(ys.size, xs.size)
        return cls(xs, ys, values, incident, label)

    def __add__(self, other: LatticeField) -> LatticeField:
        if not isinstance(other, LatticeField):
            return NotImplemented
        return LatticeField(
            self._xs, self._ys, self._values + other._values,
            self._incident + other._incident, self._label,
        )  # fmt: skip

    def __repr__(self) -> str:
        return "<%s (label='%s', x=[%d, %d], y=[%d, %d])>" % (
            self.__class__.__name__,
            self._label,
            self._xs[0],
            self._xs[-1],
            self._ys[0],
            self._ys[-1],
        )


# Reduced solve -----------------------------------------------------------------------------------
def solve_reduced(problem: ScatteringProblem) -> ReducedSolution:
    """Solve the reduced system matching the defect kind."""
    if problem.scenario.is_crack:
        return solve_crack(problem)
    return solve_constraint(problem)


# Forcing -----------------------------------------------------------------------------------------
def _stagger_polynomial(problem: ScatteringProblem, chi: np.ndarray) -> np.ndarray:
    z = problem.grid.nodes
    total = np.zeros_like(z)
    for x, value in zip(problem.segment, chi):
        total = total + value * z ** (-float(x))
    return total


def _kernel_apply(problem: ScatteringProblem, vec: np.ndarray) -> np.ndarray:
    s = problem.scenario
    return np.einsum("ijk,jk->ik", problem.bundle.kernel_matrix(s.n_sep, s.kind), vec)


def _crack_rhs(problem: ScatteringProblem, chi: np.ndarray, incident: bool, part: str) -> RhsFactors:
    suite = problem.suite
    wave = problem.wave
    K = problem.grid.n_samples
    minus = np.zeros((2, K), dtype=complex)
    plus = np.zeros_like(minus)
    x_vec = np.zeros_like(minus)
    if incident:
        q0 = problem.amplitude * (1.0 - np.exp(-1j * wave.ky)) * np.array([1.0, problem.e])
        k = (J @ q0)[:, None]
        d = problem.delta
        dm_inv = np.array([1.0 / suite.am, 1.0 / suite.bm])
        dmP_inv = np.array([1.0 / suite.am_P, 1.0 / suite.bm_P])[:, None]
        dp = np.array([suite.ap, suite.bp])
        minus += d * (dm_inv - dmP_inv) * k
        plus += d * (dmP_inv - dp) * k
        x_vec += d * q0[:, None]
    if len(chi):
        lam_minus, lam_plus = problem.stagger_halves(chi)
        minus += lam_minus
        plus += lam_plus
        x_vec[1] -= problem.scenario.stagger_sign * _stagger_polynomial(problem, chi)
    forcing = x_vec - _kernel_apply(problem, x_vec)
    return RhsFactors(minus, plus, forcing, part)


def _constraint_rhs(
    problem: ScatteringProblem,
    a_vec: np.ndarray,
    t: complex,
    chi: np.ndarray,
    incident: bool,
    z_terms: bool,
    part: str,
) -> RhsFactors:
    z = problem.grid.nodes
    b, _ = constraint_vectors(problem)
    minus, plus = auxiliary_halves(problem, a_vec, t, z_terms)
    numerator = np.asarray(a_vec, dtype=complex)[:, None] * np.ones_like(z)
    numerator = numerator + np.array([0.0, 1.0])[:, None] * (-(z ** (-float(problem.scenario.m_offset))) * t)
    if z_terms:
        numerator = numerator + z * b[:, None]
    if len(chi):
        lam_minus, lam_plus = problem.stagger_halves(chi)
        minus = minus + lam_minus
        plus = plus + lam_plus
        numerator[1] = numerator[1] + problem.scenario.stagger_sign * _stagger_polynomial(problem, chi)
    x_vec = numerator.copy()
    incident_rows = np.zeros_like(numerator)
    if incident:
        inc_minus, inc_plus = incident_halves(problem)
        minus = minus + inc_minus
        plus = plus + inc_plus
        incident_rows = problem.delta * b[:, None]
        x_vec = x_vec + problem.bundle.Q * incident_rows
    forcing = _kernel_apply(problem, x_vec) - x_vec
    return RhsFactors(minus, plus, forcing, part, numerator, incident_rows)


def build_rhs_factors(
    problem: ScatteringProblem,
    reduced: ReducedSolution,
    part: str = "full",
    aligned_corner: complex | None = None,
) -> RhsFactors:
    """Explicit additive halves of the Wiener-Hopf forcing.

    Cracks: `c = c^inc + c^Λ` with `c^inc± = δ((1/D)₋ - (1/D)₋(z_P))k`,
    `δ((1/D)₋(z_P) - D₊)k`. Constraints: `c = c^inc + c^aux + c^Λ`.

    :param problem: `<ScatteringProblem>` The run context.
    :param reduced: `<ReducedSolution>` The solved segment unknowns.
    :param part: `<str>` `'full'`, or one of `'aligned'` / `'perturbation'`
        for the stagger split. Defaults to `'full'`.
    :param aligned_corner: `<complex/None>` Scattered `u_{-1,N}`, required for
        the constraint stagger split.
    """
    if part not in PARTS:
        raise errors.SynthesisError(
            "<build_rhs_factors>\nInvalid part {}, available options: {}.".format(
                repr(part), sorted(PARTS)
            )
        )
    chi = reduced.chi
    if problem.scenario.is_crack:
        if part == "aligned":
            return _crack_rhs(problem, np.zeros(0, dtype=complex), True, part)
        if part == "perturbation":
            return _crack_rhs(problem, chi, False, part)
        return _crack_rhs(problem, chi, True, part)
    s, t = reduced.u_m10, reduced.u_Mm1N
    b, _ = constraint_vectors(problem)
    a_full = -s * np.array([1.0, 0.0]) - b / problem.zP
    if part == "full":
        return _constraint_rhs(problem, a_full, t, chi, True, True, part)
    if aligned_corner is None:
        raise errors.SynthesisError(
            "<build_rhs_factors>\nThe constraint stagger split needs the scattered u_(-1,N)."
        )
    corner_total = aligned_corner + problem.incident(-1, problem.scenario.n_sep)
    if part == "aligned":
        a_vec = np.array([a_full[0], -aligned_corner])
        return _constraint_rhs(problem, a_vec, 0.0, np.zeros(0, dtype=complex), True, True, part)
    a_vec = np.array([0.0, corner_total])
    return _constraint_rhs(problem, a_vec, t, chi, False, False, part)


# Wiener-Hopf solution ----------------------------------------------------------------------------
def wh_solution_on_contour(problem: ScatteringProblem, rhs: RhsFactors) -> WHSolution:
    """`𝐮⁻ = 𝐉⁻¹D₋c⁻`, `𝐮⁺ = 𝐉⁻¹D₊⁻¹c⁺` on the contour, checked against
    `𝐮⁻ + 𝐋𝐮⁺ = g`.

    :raises ResidualTooLargeError: The relative residual exceeds the tolerance.
    """
    suite = problem.suite
    minus = J_INV @ (np.array([suite.am, suite.bm]) * rhs.minus)
    plus = J_INV @ (rhs.plus / np.array([suite.ap, suite.bp]))
    diff = minus + _kernel_apply(problem, plus) - rhs.forcing
    scale = max(1.0, float(np.max(np.abs(rhs.forcing))))
    residual = float(np.max(np.abs(diff))) / scale
    if residual >= Tolerances.WH_RESIDUAL:
        raise errors.ResidualTooLargeError(
            "<wh_solution_on_contour>\nWiener-Hopf residual {:.3e} exceeds {:.0e} "
            "({} part).".format(residual, Tolerances.WH_RESIDUAL, rhs.part)
        )
    logger.debug("Wiener-Hopf residual (%s part): %.3e", rhs.part, residual)
    return WHSolution(minus, plus, residual)


# Row transforms ----------------------------------------------------------------------------------
def _interior_weights(problem: ScatteringProblem, y: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    # u_y = u_0 ℱ_y + u_n 𝒢_y between two rows n apart, bounded powers only
    bundle = problem.bundle
    denom = 1.0 - bundle.lam_power(2 * n)
    F = (bundle.lam_power(y) - bundle.lam_power(2 * n - y)) / denom
    G = (bundle.lam_power(n - y) - bundle.lam_power(n + y)) / denom
    return F, G


def _crack_base_rows(problem: ScatteringProblem, v: np.ndarray, route: str) -> tuple[np.ndarray, np.ndarray]:
    bundle = problem.bundle
    n_sep = problem.scenario.n_sep
    lam = bundle.lam
    if route == "matrix":
        n = n_sep - 1
        if n < 1:
            raise errors.SynthesisError(
                "<row_transforms>\nThe matrix route needs N >= 2, instead got N={}.".format(n_sep)
            )
        F1, G1 = _interior_weights(problem, 1, n)
        a = F1 - bundle.H - 1.0 / lam
        b = G1
        pref = (1.0 - 1.0 / lam) / (a * a - b * b)
        return pref * (a * v[0] + b * v[1]), -pref * (b * v[0] + a * v[1])
    L = bundle.Lk
    lamN = bundle.lam_power(n_sep)
    diag = 1.0 - L
    off = L * lamN
    det = diag * diag - off * off
    sigma0 = (diag * v[0] + off * v[1]) / det
    sigmaN = (off * v[0] + diag * v[1]) / det
    u0 = (lam * sigma0 - lamN * sigmaN) / (1.0 + lam)
    un = (lamN * sigma0 - lam * sigmaN) / (1.0 + lam)
    return u0, un


class _RowBuilder:
    """Row transforms `u_y^F` from the two rows adjacent to the defects."""

    def __init__(self, problem: ScatteringProblem, wh: WHSolution, rhs: RhsFactors, route: str = "auto") -> None:
        self._problem = problem
        scenario = problem.scenario
        self._crack = scenario.is_crack
        self._n_sep = scenario.n_sep
        if self._crack:
            if route == "auto":
                route = "matrix" if self._n_sep >= 2 else "sigma"
            v = wh.full
            u0, un = _crack_base_rows(problem, v, route)
            self._low_row, self._high_row = 0, self._n_sep - 1
            self._below = u0 - v[0]
            self._above = un + v[1]
        else:
            Q = problem.bundle.Q
            u0 = (rhs.numerator[0] + wh.minus[0]) / Q + rhs.incident_rows[0]
            un = (rhs.numerator[1] + wh.minus[1]) / Q + rhs.incident_rows[1]
            self._low_row, self._high_row = 0, self._n_sep
            self._below = u0
            self._above = un
        self._u0 = u0
        self._un = un
        self._route = route
        self._cache: dict[int, np.ndarray] = {}

    @property
    def route(self) -> str:
        return self._route

    def row(self, y: int) -> np.ndarray:
        if y in self._cache:
            return self._cache[y]
        bundle = self._problem.bundle
        lo, hi = self._low_row, self._high_row
        if y == lo:
            value = self._u0
        elif y == hi:
            value = self._un
        elif lo < y < hi:
            F, G = _interior_weights(self._problem, y - lo, hi - lo)
            value = self._u0 * F + self._un * G
        elif y < lo:
            # crack: u_{-1} λ^{-1-y}; constraint: u_0 λ^{-y}
            first = lo - 1 if self._crack else lo
            value = self._below * bundle.lam_power(first - y)
        else:
            first = hi + 1 if self._crack else hi
            value = self._above * bundle.lam_power(y - first)
        self._cache[y] = value
        return value


def row_transforms(
    problem: ScatteringProblem,
    wh: WHSolution,
    rhs: RhsFactors,
    ys: list[int] | np.ndarray,
    route: str = "auto",
) -> dict[int, np.ndarray]:
    """Row transforms `u_y^F` on the contour for the requested rows.

    Cracks start from `u_0`, `u_{N-1}`: for `N >= 2` through the 2x2 row
    relation (route `'matrix'`), for any `N` through `σ = (𝐈 - 𝐋)⁻¹𝐯`
    (route `'sigma'`). Constraints start from `u_0`, `u_N`. Rows between
    the defects use `ℱ_y`, `𝒢_y`, rows outside decay with powers of `λ`.
    """
    builder = _RowBuilder(problem, wh, rhs, route)
    return {int(y): builder.row(int(y)) for y in ys}


def inverse_transform(samples: np.ndarray, grid: ContourGrid, xs: list[int] | np.ndarray) -> np.ndarray:
    """Lattice values `u_x = (1/2πi)∮ u^F(z) z^{x-1} dz` by the trapezoid rule
    on the contour nodes.
    """
    xs = np.asarray(xs, dtype=int)
    raw = np.fft.ifft(np.asarray(samples, dtype=complex))
    return raw[xs % grid.n_samples] * grid.radius ** xs.astype(float)


# Synthesizer -------------------------------------------------------------------------------------
def _window(window: tuple[int, int, int, int] | None) -> tuple[np.ndarray, np.ndarray]:
    if window is None:
        window = (DefaultWindow.X_MIN, DefaultWindow.X_MAX, DefaultWindow.Y_MIN, DefaultWindow.Y_MAX)
    x_min, x_max, y_min, y_max = (int(v) for v in window)
    if x_max < x_min or y_max < y_min:
        raise errors.SynthesisError(
            "<synthesize_field>\nEmpty window {}.".format((x_min, x_max, y_min, y_max))
        )
    return np.arange(x_min, x_max + 1), np.arange(y_min, y_max + 1)


class FieldSynthesizer:
    """Scattered field of a solved run: forcing, Wiener-Hopf halves, row
    transforms and lattice values on demand.
    """

    def __init__(
        self,
        problem: ScatteringProblem,
        solution: ReducedSolution | None = None,
        route: str = "auto",
    ) -> None:
        """Synthesize the solution of a run.

        :param problem: `<ScatteringProblem>` The run context.
        :param solution: `<ReducedSolution/None>` The reduced solution. Defaults to
            `None` (solved here).
        :param route: `<str>` Crack row route `'auto'`, `'matrix'` or `'sigma'`.
        """
        self._problem: ScatteringProblem = problem
        self._solution: ReducedSolution = solution or solve_reduced(problem)
        self._rhs: RhsFactors = build_rhs_factors(problem, self._solution)
        self._wh: WHSolution = wh_solution_on_contour(problem, self._rhs)
        self._rows: _RowBuilder = _RowBuilder(problem, self._wh, self._rhs, route)

    # Properties ---------------------------------------------------------------
    @property
    def problem(self) -> ScatteringProblem:
        """Access the run context `<ScatteringProblem>`."""
        return self._problem

    @property
    def scenario(self) -> ScatteringScenario:
        """Access the scenario `<ScatteringScenario>`."""
        return self._problem.scenario

    @property
    def solution(self) -> ReducedSolution:
        """Access the reduced solution `<ReducedSolution>`."""
        return self._solution

    @property
    def rhs(self) -> RhsFactors:
        """Access the forcing halves `<RhsFactors>`."""
        return self._rhs

    @property
    def wh(self) -> WHSolution:
        """Access the Wiener-Hopf halves `<WHSolution>`."""
        return self._wh

    @property
    def route(self) -> str:
        """Access the crack row route in use `<str>`."""
        return self._rows.route

    # Values -------------------------------------------------------------------
    def row(self, y: int) -> np.ndarray:
        """The row transform `u_y^F` on the contour `<ndarray[complex]>`."""
        return self._rows.row(int(y))

    def values(self, y: int, xs: list[int] | np.ndarray) -> np.ndarray:
        """Scattered values along row `y` `<ndarray[complex]>`."""
        return inverse_transform(self.row(y), self._problem.grid, xs)

    def field(self, window: tuple[int, int, int, int] | None = None) -> LatticeField:
        """The scattered field with the incident wave on a window `<LatticeField>`."""
        xs, ys = _window(window)
        values = np.array([self.values(int(y), xs) for y in ys])
        X, Y = np.meshgrid(xs, ys)
        return LatticeField(xs, ys, values, self._problem.incident(X, Y), "scattered")

    def defect_traces(self, xs: list[int] | np.ndarray) -> dict[str, np.ndarray]:
        """Total jump (cracks) or neighbour sum (constraints) of both defect
        rows at the columns `xs`, from the solved transforms `<dict>`.
        """
        xs = np.asarray(xs, dtype=int)
        grid = self._problem.grid
        full = self._wh.full
        n_sep = self.scenario.n_sep
        if self.scenario.is_crack:
            inc0 = self._problem.incident_jump(xs, 0)
            incN = self._problem.incident_jump(xs, n_sep)
        else:
            inc0 = self._problem.incident_sum(xs, 0)
            incN = self._problem.incident_sum(xs, n_sep)
        return {
            "lower": inverse_transform(full[0], grid, xs) + inc0,
            "upper": inverse_transform(full[1], grid, xs) + incN,
        }

    def __repr__(self) -> str:
        return "<%s (problem=%r, solution=%r, wh=%r)>" % (
            self.__class__.__name__,
            self._problem,
            self._solution,
            self._wh,
        )


def synthesize_field(
    problem: ScatteringProblem,
    solution: ReducedSolution | None = None,
    window: tuple[int, int, int, int] | None = None,
) -> LatticeField:
    """The scattered field of a run on a window `<LatticeField>`."""
    return FieldSynthesizer(problem, solution).field(window)


# Stagger split -----------------------------------------------------------------------------------
def stagger_perturbation(
    synth: FieldSynthesizer,
    window: tuple[int, int, int, int] | None = None,
) -> tuple[LatticeField, LatticeField]:
    """Split the scattered field into the aligned-pair part and the
    perturbation caused by the stagger. Their sum is the scattered field.
    """
    problem = synth.problem
    xs, ys = _window(window)
    corner = None
    if not problem.scenario.is_crack:
        corner = complex(synth.values(problem.scenario.n_sep, [-1])[0])
    fields = []
    for part in ("aligned", "perturbation"):
        rhs = build_rhs_factors(problem, synth.solution, part, corner)
        wh = wh_solution_on_contour(problem, rhs)
        rows = _RowBuilder(problem, wh, rhs, synth.route)
        values = np.array([inverse_transform(rows.row(int(y)), problem.grid, xs) for y in ys])
        if part == "aligned":
            X, Y = np.meshgrid(xs, ys)
            incident = problem.incident(X, Y)
        else:
            incident = None
        fields.append(LatticeField(xs, ys, values, incident, part))
    return fields[0], fields[1]


# Diagnostics -------------------------------------------------------------------------------------
def consistency_report(synth: FieldSynthesizer) -> dict[str, Any]:
    """Conditions the synthesized transforms must satisfy `<dict>`:

    - `segment`: `𝔠_x(e₂·𝐮^±) = χ_x - (incident trace)` over the segment.
    - `zq` (constraints): the constrained-row numerators vanish at `z_q`.
    - `constrained_rows` (constraints): `u^t = 0` on the constrained rows.
    - `routes` (cracks, `N >= 2`): both row routes agree.
    """
    problem = synth.problem
    scenario = problem.scenario
    grid = problem.grid
    solution = synth.solution
    xs = problem.segment
    report: dict[str, Any] = {"wh_residual": synth.wh.residual}
    if xs:
        half = synth.wh.plus if scenario.m_offset > 0 else synth.wh.minus
        coeffs = inverse_transform(half[1], grid, xs)
        if scenario.is_crack:
            inc = problem.incident_jump(np.array(xs), scenario.n_sep)
        else:
            inc = problem.incident_sum(np.array(xs), scenario.n_sep)
        report["segment"] = float(np.max(np.abs(coeffs - (solution.chi - inc))))
    else:
        report["segment"] = 0.0
    if scenario.is_crack:
        if scenario.n_sep >= 2:
            matrix = _crack_base_rows(problem, synth.wh.full, "matrix")
            sigma = _crack_base_rows(problem, synth.wh.full, "sigma")
            scale = max(1.0, float(np.max(np.abs(matrix[0]))))
            report["routes"] = float(
                max(np.max(np.abs(matrix[0] - sigma[0])), np.max(np.abs(matrix[1] - sigma[1])))
            ) / scale
        return report
    zq = problem.zq
    minus_at_zq = np.array([to_series(synth.wh.minus[i], grid).evaluate(zq) for i in range(2)])
    numerator_at_zq = np.array(
        [to_series(synth.rhs.numerator[i], grid).evaluate(zq) for i in range(2)]
    )
    report["zq"] = float(np.max(np.abs(numerator_at_zq + minus_at_zq)))
    span = np.arange(max(0, scenario.m_offset), max(0, scenario.m_offset) + 20)
    lower = synth.values(0, span) + problem.incident(span, 0)
    upper = synth.values(scenario.n_sep, span) + problem.incident(span, scenario.n_sep)
    report["constrained_rows"] = float(max(np.max(np.abs(lower)), np.max(np.abs(upper))))
    return report


def quadrature_check(synth: FieldSynthesizer) -> dict[str, float]:
    """Recompute `u^t_{-1,0}` and `u^t_{M-1,N}` by trapezoid quadrature of
    the synthesized constrained-row transforms and compare with the solved
    unknowns `<dict>`.
    """
    problem = synth.problem
    scenario = problem.scenario
    if scenario.is_crack:
        return {}
    solution: ConstraintSolution = synth.solution
    n_sep, m_offset = scenario.n_sep, scenario.m_offset
    s = complex(synth.values(0, [-1])[0] + problem.incident(-1, 0))
    t = complex(synth.values(n_sep, [m_offset - 1])[0] + problem.incident(m_offset - 1, n_sep))
    return {
        "u_m10": s,
        "u_Mm1N": t,
        "u_m10_deviation": abs(s - solution.u_m10),
        "u_Mm1N_deviation": abs(t - solution.u_Mm1N),
    }


def flip_check(
    problem: ScatteringProblem,
    synth: FieldSynthesizer | None = None,
    window: tuple[int, int, int, int] = (-8, 8, -4, 4),
) -> dict[str, Any]:
    """Compare a run with its mirror image (`Θ ↦ -Θ`, `M ↦ -M`, rows
    reflected across the middle of the defect pair, amplitude rephased).

    Reports the largest relative deviation of the segment unknowns, the
    corner values (constraints) and the total field on a window.
    """
    scenario = problem.scenario
    synth = synth or FieldSynthesizer(problem)
    mirror = problem.with_scenario(scenario.flipped(problem.wave))
    mirror_synth = FieldSynthesizer(mirror)
    m_offset, n_sep = scenario.m_offset, scenario.n_sep
    shift = n_sep - 1 if scenario.is_crack else n_sep
    report: dict[str, Any] = {"M": m_offset, "mirror_M": -m_offset}
    xs_b = mirror.segment
    scale = max(1.0, float(np.max(np.abs(synth.solution.unknowns))) if len(synth.solution) else 1.0)
    if xs_b:
        lower = synth.defect_traces(np.array(xs_b) + m_offset)["lower"]
        expected = -lower if scenario.is_crack else lower
        report["segment"] = float(np.max(np.abs(mirror_synth.solution.chi - expected))) / scale
    else:
        report["segment"] = 0.0
    if not scenario.is_crack:
        report["corners"] = max(
            abs(mirror_synth.solution.u_m10 - synth.solution.u_Mm1N),
            abs(mirror_synth.solution.u_Mm1N - synth.solution.u_m10),
        ) / scale
    x_min, x_max, y_min, y_max = window
    field_b = mirror_synth.field(window)
    field_a = synth.field((x_min + m_offset, x_max + m_offset, shift - y_max, shift - y_min))
    mapped = field_a.total[::-1, :]
    field_scale = max(1.0, float(np.max(np.abs(mapped))))
    report["field"] = float(np.max(np.abs(field_b.total - mapped))) / field_scale
    report["max_deviation"] = max(v for k, v in report.items() if k not in ("M", "mirror_M"))
    report["passed"] = report["max_deviation"] < Tolerances.FLIP
    return report
