# -*- coding: UTF-8 -*-
from __future__ import annotations
import numpy as np
from staggerwh import errors
from staggerwh.logs import logger
from staggerwh.kernel import eval_HRQ
from staggerwh.laurent import to_series, project_D
from staggerwh.crack import ReducedSolution, assemble_Ax, assemble_Finc, dense_solve
from staggerwh.problem import ScatteringProblem, J, J_INV, JE2
from staggerwh.scenario import ScatteringScenario
from staggerwh.settings import Tolerances

__all__ = [
    "ConstraintSolution",
    "uN_inc_plus",
    "constraint_vectors",
    "incident_halves",
    "auxiliary_halves",
    "assemble_J",
    "assemble_K",
    "assemble_Ginc",
    "boundary_sum_transform",
    "boundary_sum_direct",
    "assemble_constraint_system",
    "solve_constraint",
]


# Solution ----------------------------------------------------------------------------------------
class ConstraintSolution(ReducedSolution):
    """Reduced constraint solution: `w^t_{x,N}` on the segment followed by
    `u^t_{-1,0}` and `u^t_{M-1,N}`.
    """

    def __init__(
        self,
        segment: list[int],
        unknowns: np.ndarray,
        matrix: np.ndarray,
        rhs: np.ndarray,
        residual: float,
        condition: float,
        ginc: float = 0.0,
    ) -> None:
        super().__init__(segment, unknowns, matrix, rhs, residual, condition)
        self._ginc: float = float(ginc)

    @property
    def w_segment(self) -> np.ndarray:
        """Access `w^t_{x,N}` over the segment `<ndarray[complex]>`."""
        return self.chi

    @property
    def u_m10(self) -> complex:
        """Access `u^t_{-1,0}` `<complex>`."""
        return complex(self._unknowns[len(self._segment)])

    @property
    def u_Mm1N(self) -> complex:
        """Access `u^t_{M-1,N}` `<complex>`."""
        return complex(self._unknowns[len(self._segment) + 1])

    @property
    def ginc(self) -> float:
        """Access the largest `|𝒢^inc|` seen on the contour `<float>`."""
        return self._ginc

    def summary(self) -> dict:
        data = super().summary()
        data["u_m10"] = self.u_m10
        data["u_Mm1N"] = self.u_Mm1N
        data["ginc"] = self._ginc
        return data


# Incident pieces ---------------------------------------------------------------------------------
def uN_inc_plus(problem: ScatteringProblem) -> np.ndarray:
    """Transform over `x >= 0` of the incident wave on row `N`, `A e δ`."""
    return problem.amplitude * problem.e * problem.delta


def constraint_vectors(problem: ScatteringProblem) -> tuple[np.ndarray, np.ndarray]:
    """`b = -A[1; e]` (the prescribed scattered values on the constrained
    rows at `x = 0`) and `k = 𝐉b`.
    """
    b = -problem.amplitude * np.array([1.0, problem.e])
    return b, J @ b


def _diagonals(problem: ScatteringProblem) -> dict[str, np.ndarray]:
    suite = problem.suite
    return {
        "dm": np.array([suite.am, suite.bm]),
        "dp": np.array([suite.ap, suite.bp]),
        "dm0_inv": np.array([1.0 / suite.am_0, 1.0 / suite.bm_0])[:, None],
        "dp_inf": np.array([suite.ap_inf, suite.bp_inf])[:, None],
        "dmP_inv": np.array([1.0 / suite.am_P, 1.0 / suite.bm_P])[:, None],
    }


def incident_halves(problem: ScatteringProblem) -> tuple[np.ndarray, np.ndarray]:
    """Minus and plus halves of the incident part `c^inc` of the constraint
    forcing, each of shape `(2, K)`.
    """
    d = _diagonals(problem)
    _, k = constraint_vectors(problem)
    z = problem.grid.nodes
    zP = problem.zP
    qd = problem.Q_P * problem.delta
    dm_inv = 1.0 / d["dm"]
    minus = -(
        qd * (dm_inv - d["dmP_inv"])
        - z * dm_inv
        + z * d["dp_inf"]
        + (dm_inv - d["dm0_inv"]) / zP
    ) * k[:, None]
    plus = -(
        qd * d["dmP_inv"]
        - qd * d["dp"]
        + z * (d["dp"] - d["dp_inf"])
        + d["dm0_inv"] / zP
        - d["dp"] / zP
    ) * k[:, None]
    return minus, plus


def auxiliary_halves(
    problem: ScatteringProblem,
    a_vec: np.ndarray,
    t: complex,
    z_terms: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Minus and plus halves of the auxiliary forcing `c^aux` built from the
    constant vector `a`, the corner value `t` and, optionally, the linear
    `z b` terms. Each half has shape `(2, K)`.
    """
    d = _diagonals(problem)
    _, k = constraint_vectors(problem)
    z = problem.grid.nodes
    ja = (J @ np.asarray(a_vec, dtype=complex))[:, None]
    s_minus, s_plus, _ = problem.suite.difference_split(problem.scenario.m_offset)
    dm_inv = 1.0 / d["dm"]
    minus = -(dm_inv - d["dm0_inv"]) * ja + t * s_minus * JE2[:, None]
    plus = (d["dp"] - d["dm0_inv"]) * ja + t * s_plus * JE2[:, None]
    if z_terms:
        minus = minus - z * (dm_inv - d["dp_inf"]) * k[:, None]
        plus = plus + z * (d["dp"] - d["dp_inf"]) * k[:, None]
    return minus, plus


# Column functions --------------------------------------------------------------------------------
def assemble_J(problem: ScatteringProblem) -> np.ndarray:
    """The `u^t_{-1,0}` column function on the contour.

    `𝒥 = -½(-1/(α₋(0)α₊) + 1/(β₋(0)β₊))` for `M >= 0`, and
    `𝒥_N = -½(-α₋/α₋(0) + β₋/β₋(0))` for `M < 0`.
    """
    suite = problem.suite
    if problem.scenario.m_offset >= 0:
        return -0.5 * (-1.0 / (suite.am_0 * suite.ap) + 1.0 / (suite.bm_0 * suite.bp))
    return -0.5 * (-suite.am / suite.am_0 + suite.bm / suite.bm_0)


def assemble_K(problem: ScatteringProblem) -> np.ndarray:
    """The `u^t_{M-1,N}` column function on the contour, `-½` times the
    crack column function at `x = M` (`𝒦` for `M >= 0`, `𝒦_N` for `M < 0`).
    """
    return -0.5 * assemble_Ax(problem.scenario.m_offset, problem)


def assemble_Ginc(problem: ScatteringProblem) -> np.ndarray:
    """Incident terms of the segment conditions that are not carried by the
    reduced system, evaluated literally on the contour. They cancel in
    pairs, so the result is zero up to rounding.
    """
    d = _diagonals(problem)
    b, k = constraint_vectors(problem)
    z = problem.grid.nodes
    zP = problem.zP
    ja = (J @ (-b / zP))[:, None]
    kk = k[:, None]
    dm_inv = 1.0 / d["dm"]
    if problem.scenario.m_offset >= 0:
        aux = (d["dp"] - d["dm0_inv"]) * ja + z * (d["dp"] - d["dp_inf"]) * kk
        inc = -(z * (d["dp"] - d["dp_inf"]) + d["dm0_inv"] / zP - d["dp"] / zP) * kk
        row = J_INV @ ((aux + inc) / d["dp"])
    else:
        aux = -(dm_inv - d["dm0_inv"]) * ja - z * (dm_inv - d["dp_inf"]) * kk
        inc = -(-z * dm_inv + z * d["dp_inf"] + (dm_inv - d["dm0_inv"]) / zP) * kk
        row = J_INV @ (d["dm"] * (aux + inc))
    return row[1]


# Boundary sums -----------------------------------------------------------------------------------
def _check_rows(m: int, n: int, rows: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows, dtype=complex)
    if rows.shape != (3, n - m + 3):
        raise errors.StaggerWHInvalidValueError(
            "<boundary_sum>\nExpects rows of shape (3, {}), instead got {}.".format(
                n - m + 3, rows.shape
            )
        )
    return rows


def boundary_sum_transform(
    m: int,
    n: int,
    rows: np.ndarray,
    z: complex | np.ndarray,
    omega: complex,
) -> complex | np.ndarray:
    """Boundary-term form of `Σ_{x=m}^{n} z^{-x}(Δu + ω²u)_{x,N}`:

    `-Q Σ z^{-x} u_{x,N} + Σ z^{-x}(u_{x,N+1} + u_{x,N-1})
    + z^{-m}(u_{m-1,N} - z u_{m,N}) + z^{-n}(u_{n+1,N} - z^{-1} u_{n,N})`.

    :param rows: `<ndarray>` Shape `(3, n - m + 3)`: rows `N-1`, `N`, `N+1`
        sampled at `x = m-1, ..., n+1`.
    """
    z = np.asarray(z, dtype=complex)
    if n < m:
        return np.zeros_like(z) if z.ndim else 0j
    rows = _check_rows(m, n, rows)
    below, row, above = rows
    xs = np.arange(m, n + 1)
    powers = z[..., None] ** (-xs.astype(float))
    Q = eval_HRQ(z, omega)[2]
    inner = slice(1, n - m + 2)
    value = -Q * (powers @ row[inner]) + powers @ (above[inner] + below[inner])
    value = value + z ** (-float(m)) * (row[0] - z * row[1])
    value = value + z ** (-float(n)) * (row[-1] - row[-2] / z)
    return complex(value) if value.ndim == 0 else value


def boundary_sum_direct(
    m: int,
    n: int,
    rows: np.ndarray,
    z: complex | np.ndarray,
    omega: complex,
) -> complex | np.ndarray:
    """The defining sum `Σ_{x=m}^{n} z^{-x}(Δu + ω²u)_{x,N}` (same arguments
    as `boundary_sum_transform`).
    """
    z = np.asarray(z, dtype=complex)
    if n < m:
        return np.zeros_like(z) if z.ndim else 0j
    below, row, above = _check_rows(m, n, rows)
    helmholtz = (
        row[2:] + row[:-2] + above[1:-1] + below[1:-1]
        + (complex(omega) ** 2 - 4.0) * row[1:-1]
    )  # fmt: skip
    xs = np.arange(m, n + 1)
    value = z[..., None] ** (-xs.astype(float)) @ helmholtz
    return complex(value) if value.ndim == 0 else value


# Reduced system ----------------------------------------------------------------------------------
def _zq_conditions(problem: ScatteringProblem, unknowns: np.ndarray) -> np.ndarray:
    # W(z_q) + w⁻(z_q) + ℷ P(z_q) e₂, which must vanish since Q(z_q) = 0
    suite = problem.suite
    scenario = problem.scenario
    xs = problem.segment
    n = len(xs)
    chi, s, t = unknowns[:n], unknowns[n], unknowns[n + 1]
    zq, zP, m_offset = problem.zq, problem.zP, scenario.m_offset
    b, k = constraint_vectors(problem)
    a_vec = -s * np.array([1.0, 0.0]) - b / zP
    dm_q = np.array([1.0 / suite.am_q, 1.0 / suite.bm_q])
    dm0_inv = np.array([1.0 / suite.am_0, 1.0 / suite.bm_0])
    dp_inf = np.array([suite.ap_inf, suite.bp_inf])
    dmP_inv = np.array([1.0 / suite.am_P, 1.0 / suite.bm_P])
    c_inc = -(
        problem.Q_P * problem.delta_q * (dm_q - dmP_inv)
        - zq * dm_q
        + zq * dp_inf
        + (dm_q - dm0_inv) / zP
    ) * k
    c_aux = (
        -(dm_q - dm0_inv) * (J @ a_vec)
        - zq * (dm_q - dp_inf) * k
        + t * suite.difference_split(m_offset)[2] * JE2
    )
    c_minus = c_inc + c_aux + problem.stagger_at_zq(chi)
    w_minus = J_INV @ (np.array([suite.am_q, suite.bm_q]) * c_minus)
    W = a_vec + zq * b - zq ** (-float(m_offset)) * t * np.array([0.0, 1.0])
    p_value = sum(c * zq ** (-float(x)) for x, c in zip(xs, chi)) if n else 0.0
    return W + w_minus + scenario.stagger_sign * p_value * np.array([0.0, 1.0])


def _zq_rows(problem: ScatteringProblem, size: int) -> tuple[np.ndarray, np.ndarray]:
    # the conditions are affine in the unknowns
    base = _zq_conditions(problem, np.zeros(size, dtype=complex))
    rows = np.zeros((2, size), dtype=complex)
    for j in range(size):
        unit = np.zeros(size, dtype=complex)
        unit[j] = 1.0
        rows[:, j] = _zq_conditions(problem, unit) - base
    return rows, -base


def assemble_constraint_system(problem: ScatteringProblem) -> tuple[np.ndarray, np.ndarray]:
    """Matrix and right-hand side of the reduced constraint system.

    Unknowns are `[w^t_{x,N} for x ∈ 𝔻 (increasing), u^t_{-1,0}, u^t_{M-1,N}]`.
    The first `|M|` rows enforce the segment conditions, the last two the
    analyticity of the constrained-row transforms at `z_q`.

    :raises ReducedSystemError: The literal `𝒢^inc` does not vanish.
    """
    scenario = problem.scenario
    xs = problem.segment
    n = len(xs)
    size = n + 2
    matrix = np.zeros((size, size), dtype=complex)
    rhs = np.zeros(size, dtype=complex)
    grid = problem.grid
    if n:
        d_lo, d_hi = xs[0], xs[-1]
        sign = 1.0 if scenario.m_offset > 0 else -1.0
        for nu, x_nu in enumerate(xs):
            column = project_D(to_series(assemble_Ax(x_nu, problem), grid), d_lo, d_hi)
            matrix[:n, nu] = [column.coeff(x) for x in xs]
        j_col = project_D(to_series(assemble_J(problem), grid), d_lo, d_hi)
        k_col = project_D(to_series(assemble_K(problem), grid), d_lo, d_hi)
        matrix[:n, n] = [sign * 2.0 * j_col.coeff(x) for x in xs]
        matrix[:n, n + 1] = [sign * 2.0 * k_col.coeff(x) for x in xs]
        forcing = project_D(
            to_series(problem.Q_P * assemble_Finc(problem, uN_inc_plus(problem)), grid),
            d_lo,
            d_hi,
        )
        rhs[:n] = [forcing.coeff(x) for x in xs]
        if scenario.m_offset < 0:
            matrix[xs.index(scenario.m_offset), n + 1] -= 2.0
            rhs[:n] += 2.0 * problem.incident_sum(np.array(xs), scenario.n_sep)
    rows, values = _zq_rows(problem, size)
    matrix[n:] = rows
    rhs[n:] = values
    return matrix, rhs


def _check_ginc(problem: ScatteringProblem) -> float:
    ginc = float(np.max(np.abs(assemble_Ginc(problem))))
    scale = max(1.0, abs(problem.amplitude))
    if ginc >= Tolerances.GINC * scale:
        raise errors.ReducedSystemError(
            "<solve_constraint>\nIncident remainder does not vanish on the "
            "contour: max |G_inc| = {:.3e}.".format(ginc)
        )
    logger.debug("Incident remainder max |G_inc| = %.3e", ginc)
    return ginc


def solve_constraint(scenario: ScatteringScenario | ScatteringProblem) -> ConstraintSolution:
    """Solve the reduced constraint system.

    :param scenario: `<ScatteringScenario/ScatteringProblem>` A constraint-pair run.
    :raises SingularSystemError: The system is ill conditioned.
    :raises ReducedSystemError: The incident remainder check fails.
    """
    problem = scenario if isinstance(scenario, ScatteringProblem) else ScatteringProblem(scenario)
    if problem.scenario.is_crack:
        raise errors.StaggerWHInvalidValueError(
            "<solve_constraint>\nExpects a constraint-pair scenario, instead got 'crack'."
        )
    ginc = _check_ginc(problem)
    matrix, rhs = assemble_constraint_system(problem)
    unknowns, residual, condition = dense_solve(matrix, rhs, "solve_constraint")
    return ConstraintSolution(
        problem.segment, unknowns, matrix, rhs, residual, condition, ginc
    )
