# -*- coding: UTF-8 -*-
from __future__ import annotations
from typing import Any
import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator, spilu, gmres, bicgstab, spsolve
from pandas import DataFrame
from staggerwh import errors
from staggerwh.logs import logger
from staggerwh.scenario import ScatteringScenario, WaveVector, solve_dispersion, incident_field, defect_sites
from staggerwh.synthesis import LatticeField
from staggerwh.settings import Columns, DefaultOracle, Tolerances

__all__ = [
    "GridProblem",
    "OracleTraces",
    "default_ng",
    "solve_grid",
    "extract_traces",
    "self_convergence",
    "compare_fields",
    "compare_segments",
]


def default_ng(scenario: ScatteringScenario) -> int:
    """The default half-width `91 + |M|` `<int>`."""
    return DefaultOracle.NG_BASE + abs(scenario.m_offset)


# Grid problem ------------------------------------------------------------------------------------
class GridProblem:
    """The truncated lattice `[-Ng, Ng]²` with the defect pair, as a sparse
    complex system for the scattered field. The scattered field is zero
    outside the window.
    """

    def __init__(
        self,
        scenario: ScatteringScenario,
        ng: int | None = None,
        defects: bool = True,
        wave: WaveVector | None = None,
    ) -> None:
        """Assemble the grid operator and the incident forcing.

        :param scenario: `<ScatteringScenario>` The physical parameters.
        :param ng: `<int/None>` Window half-width. Defaults to `None` (`91 + |M|`).
        :param defects: `<bool>` Include the defect pair. With `False` the
            lattice is intact and the forcing vanishes. Defaults to `True`.
        :param wave: `<WaveVector/None>` A solved wave vector. Defaults to `None` (solved here).
        :raises WindowTooSmallError: The window does not contain both defect edges.
        """
        self._scenario: ScatteringScenario = scenario
        self._ng: int = default_ng(scenario) if ng is None else int(ng)
        need = max(scenario.n_sep, abs(scenario.m_offset)) + 2
        if self._ng < need:
            raise errors.WindowTooSmallError(
                "<{}>\nWindow half-width {} is below the required {} for N={}, M={}.".format(
                    self.__class__.__name__, self._ng, need, scenario.n_sep, scenario.m_offset
                )
            )
        self._defects: bool = bool(defects)
        self._wave: WaveVector = wave or solve_dispersion(
            scenario.omega, scenario.theta, scenario.validation
        )
        self._coords: np.ndarray = np.arange(-self._ng, self._ng + 1)
        self._assemble()

    # Assembly -----------------------------------------------------------------
    def _broken(self, x: np.ndarray, y: np.ndarray, dy: int) -> np.ndarray:
        """Vertical bonds from `(x, y)` to `(x, y + dy)` removed by the cracks."""
        s = self._scenario
        if not (self._defects and s.is_crack) or dy == 0:
            return np.zeros(x.shape, dtype=bool)
        n, m = s.n_sep, s.m_offset
        if dy < 0:
            return ((y == 0) & (x >= 0)) | ((y == n) & (x >= m))
        return ((y == -1) & (x >= 0)) | ((y == n - 1) & (x >= m))

    def _assemble(self) -> None:
        ng, size = self._ng, self._coords.size
        X, Y = np.meshgrid(self._coords, self._coords)
        x, y = X.ravel(), Y.ravel()
        index = (y + ng) * size + (x + ng)
        omega2 = self._scenario.omega ** 2
        incident = np.asarray(incident_field(self._scenario, self._wave, x, y))
        n_broken = np.zeros(x.size, dtype=int)
        rhs = np.zeros(x.size, dtype=complex)
        rows, cols, data = [], [], []
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            xn, yn = x + dx, y + dy
            broken = self._broken(x, y, dy)
            n_broken += broken
            if broken.any():
                nb_inc = incident_field(self._scenario, self._wave, xn[broken], yn[broken])
                np.add.at(rhs, np.nonzero(broken)[0], nb_inc - incident[broken])
            keep = ~broken & (np.abs(xn) <= ng) & (np.abs(yn) <= ng)
            rows.append(index[keep])
            cols.append((yn[keep] + ng) * size + (xn[keep] + ng))
            data.append(np.ones(int(keep.sum()), dtype=complex))
        rows.append(index)
        cols.append(index)
        data.append(omega2 - (4.0 - n_broken).astype(complex))

        matrix = sp.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(x.size, x.size),
        ).tocsr()
        if self._defects and not self._scenario.is_crack:
            fixed = defect_sites(self._scenario, x, y)
            # identity rows pin u = -u^inc on the constrained sites
            keep = sp.diags((~fixed).astype(float))
            matrix = (keep @ matrix + sp.diags(fixed.astype(complex))).tocsr()
            rhs = np.where(fixed, -incident, rhs)
            self._fixed: np.ndarray = fixed
        else:
            self._fixed = np.zeros(x.size, dtype=bool)
        self._matrix: sp.csr_matrix = matrix
        self._rhs: np.ndarray = rhs
        self._incident: np.ndarray = incident.reshape(size, size)
        logger.debug(
            "Grid operator: %d sites, %d non-zeros, %d constrained.",
            x.size,
            matrix.nnz,
            int(self._fixed.sum()),
        )

    # Properties ---------------------------------------------------------------
    @property
    def scenario(self) -> ScatteringScenario:
        """Access the scenario `<ScatteringScenario>`."""
        return self._scenario

    @property
    def wave(self) -> WaveVector:
        """Access the wave vector `<WaveVector>`."""
        return self._wave

    @property
    def ng(self) -> int:
        """Access the window half-width `<int>`."""
        return self._ng

    @property
    def defects(self) -> bool:
        """Whether the defect pair is present `<bool>`."""
        return self._defects

    @property
    def coords(self) -> np.ndarray:
        """Access the window coordinates `-Ng..Ng` `<ndarray[int]>`."""
        return self._coords

    @property
    def matrix(self) -> sp.csr_matrix:
        """Access the sparse operator `<csr_matrix>`."""
        return self._matrix

    @property
    def rhs(self) -> np.ndarray:
        """Access the forcing vector `<ndarray[complex]>`."""
        return self._rhs

    @property
    def incident(self) -> np.ndarray:
        """Access the incident wave on the window `<ndarray[complex]>`."""
        return self._incident

    def residual(self, solution: np.ndarray) -> float:
        """Relative residual `|A u - b| / |b|` `<float>`."""
        norm = float(np.linalg.norm(self._rhs))
        if norm == 0.0:
            return float(np.linalg.norm(self._matrix @ solution))
        return float(np.linalg.norm(self._matrix @ solution - self._rhs)) / norm

    def __repr__(self) -> str:
        return "<%s (ng=%d, defects=%s, sites=%d)>" % (
            self.__class__.__name__,
            self._ng,
            self._defects,
            self._rhs.size,
        )


# Solve -------------------------------------------------------------------------------------------
def _iterative(grid: GridProblem, solver: str, rtol: float) -> tuple[np.ndarray, int]:
    matrix = grid.matrix
    ilu = spilu(
        matrix.tocsc(),
        drop_tol=DefaultOracle.ILU_DROP_TOL,
        fill_factor=DefaultOracle.ILU_FILL_FACTOR,
    )
    precond = LinearOperator(matrix.shape, ilu.solve, dtype=complex)
    if solver == "gmres":
        return gmres(
            matrix,
            grid.rhs,
            rtol=rtol,
            atol=0.0,
            restart=DefaultOracle.RESTART,
            maxiter=DefaultOracle.MAX_ITER,
            M=precond,
        )
    return bicgstab(
        matrix, grid.rhs, rtol=rtol, atol=0.0, maxiter=DefaultOracle.MAX_ITER, M=precond
    )


def solve_grid(
    grid: GridProblem | ScatteringScenario,
    ng: int | None = None,
    solver: str = DefaultOracle.SOLVER,
    tolerance: float = Tolerances.ORACLE_RESIDUAL,
) -> LatticeField:
    """Solve the truncated grid problem for the scattered field.

    Iterative solves use an incomplete-LU preconditioner. When they do not
    reach the tolerance the sparse direct solver takes over.

    :param grid: `<GridProblem/ScatteringScenario>` The assembled grid, or a scenario.
    :param ng: `<int/None>` Half-width when a scenario is given. Defaults to `None`.
    :param solver: `<str>` `'gmres'`, `'bicgstab'` or `'direct'`. Defaults to `'gmres'`.
    :param tolerance: `<float>` Relative residual bound. Defaults to `1e-8`.
    :raises IterationDivergenceError: No solver reaches the tolerance.
    """
    if not isinstance(grid, GridProblem):
        grid = GridProblem(grid, ng)
    if solver not in DefaultOracle.SOLVERS:
        raise errors.StaggerWHInvalidValueError(
            "<solve_grid>\nInvalid solver {}, available options: {}.".format(
                repr(solver), sorted(DefaultOracle.SOLVERS)
            )
        )
    solution = None
    if solver != "direct":
        try:
            solution, info = _iterative(grid, solver, tolerance * 1e-2)
        except RuntimeError as err:
            logger.warning("Incomplete LU failed (%s), using the direct solver.", err)
            solution, info = None, -1
        if solution is not None and (info != 0 or grid.residual(solution) >= tolerance):
            logger.warning(
                "%s stopped with info=%d and residual %.3e, using the direct solver.",
                solver,
                info,
                grid.residual(solution),
            )
            solution = None
    if solution is None:
        solution = spsolve(grid.matrix.tocsc(), grid.rhs)
    residual = grid.residual(solution)
    if not np.all(np.isfinite(solution)) or residual >= tolerance:
        raise errors.IterationDivergenceError(
            "<solve_grid>\nGrid residual {:.3e} exceeds {:.0e}.".format(residual, tolerance)
        )
    logger.info("Grid solve on [-%d, %d]^2: residual %.3e", grid.ng, grid.ng, residual)
    size = grid.coords.size
    return LatticeField(
        grid.coords,
        grid.coords,
        np.asarray(solution).reshape(size, size),
        grid.incident,
        "oracle",
    )


# Traces ------------------------------------------------------------------------------------------
class OracleTraces:
    """Segment traces and corner values read off a grid solution."""

    def __init__(self, segment: list[int], chi: np.ndarray, u_m10: complex, u_Mm1N: complex) -> None:
        self._segment: list[int] = list(segment)
        self._chi: np.ndarray = np.asarray(chi, dtype=complex)
        self._u_m10: complex = complex(u_m10)
        self._u_Mm1N: complex = complex(u_Mm1N)

    @property
    def segment(self) -> list[int]:
        """Access the segment indices `<list[int]>`."""
        return self._segment

    @property
    def chi(self) -> np.ndarray:
        """Access `v^t_{x,N}` (cracks) or `w^t_{x,N}` (constraints) `<ndarray[complex]>`."""
        return self._chi

    @property
    def u_m10(self) -> complex:
        """Access `u^t_{-1,0}` `<complex>`."""
        return self._u_m10

    @property
    def u_Mm1N(self) -> complex:
        """Access `u^t_{M-1,N}` `<complex>`."""
        return self._u_Mm1N

    def to_frame(self) -> DataFrame:
        """Segment table with columns `x, re, im, abs` `<DataFrame>`."""
        return DataFrame(
            {
                "x": np.array(self._segment, dtype=int),
                "re": self._chi.real,
                "im": self._chi.imag,
                "abs": np.abs(self._chi),
            }
        )[Columns.SEGMENT]

    def __repr__(self) -> str:
        return "<%s (segment=%s)>" % (self.__class__.__name__, self._segment)


def extract_traces(field: LatticeField, scenario: ScatteringScenario) -> OracleTraces:
    """Read the segment traces off a total field: `v^t_{x,N} = u^t_{x,N} - u^t_{x,N-1}`
    for cracks, `w^t_{x,N} = u^t_{x,N+1} + u^t_{x,N-1}` for constraints, and
    the corners `u^t_{-1,0}`, `u^t_{M-1,N}`.

    :raises WindowTooSmallError: The window misses a required site.
    """
    xs = list(scenario.segment)
    n, m = scenario.n_sep, scenario.m_offset
    if xs:
        if scenario.is_crack:
            chi = field.row(n, xs, True) - field.row(n - 1, xs, True)
        else:
            chi = field.row(n + 1, xs, True) + field.row(n - 1, xs, True)
    else:
        chi = np.zeros(0, dtype=complex)
    return OracleTraces(xs, chi, field.at(-1, 0, True), field.at(m - 1, n, True))


def self_convergence(
    scenario: ScatteringScenario,
    ng: int | None = None,
    extra: int = 20,
    solver: str = DefaultOracle.SOLVER,
) -> dict[str, Any]:
    """Compare the segment traces of the `Ng` and `Ng + extra` grids `<dict>`.

    The reported `segment` deviation is the largest difference relative to
    the largest trace of the wider grid.
    """
    ng = default_ng(scenario) if ng is None else int(ng)
    wave = solve_dispersion(scenario.omega, scenario.theta, scenario.validation)
    traces = []
    for width in (ng, ng + extra):
        field = solve_grid(GridProblem(scenario, width, wave=wave), solver=solver)
        traces.append(extract_traces(field, scenario))
    narrow, wide = traces
    values_n = np.append(narrow.chi, [narrow.u_m10, narrow.u_Mm1N])
    values_w = np.append(wide.chi, [wide.u_m10, wide.u_Mm1N])
    scale = max(float(np.max(np.abs(values_w))), np.finfo(float).tiny)
    deviation = float(np.max(np.abs(values_n - values_w))) / scale
    logger.info("Grid self-convergence %d vs %d: %.3e", ng, ng + extra, deviation)
    return {"ng": ng, "ng_wide": ng + extra, "segment": deviation}


def compare_fields(first: DataFrame, second: DataFrame) -> DataFrame:
    """Per-site errors of two field tables on their common sites.

    Columns `x, y, abs_err, rel_err`, where `rel_err` is relative to the
    largest `|u|` of the second table.
    """
    merged = first.merge(second, on=["x", "y"], suffixes=("_a", "_b"))
    if merged.empty:
        raise errors.StaggerWHInvalidValueError(
            "<compare_fields>\nThe two tables share no sites."
        )
    merged = merged.sort_values(["y", "x"]).reset_index(drop=True)
    diff = (merged["re_a"] - merged["re_b"]) + 1j * (merged["im_a"] - merged["im_b"])
    abs_err = np.abs(diff.to_numpy())
    scale = float(np.max(np.hypot(merged["re_b"], merged["im_b"])))
    rel_err = abs_err / scale if scale > 0 else abs_err
    return DataFrame(
        {"x": merged["x"], "y": merged["y"], "abs_err": abs_err, "rel_err": rel_err}
    )[Columns.COMPARE]


def compare_segments(first: DataFrame, second: DataFrame) -> DataFrame:
    """Per-index errors of two segment tables (`x, re, im, ...`).

    Columns `x, abs_err, rel_err`, `rel_err` relative to `|χ_x|` of the
    second table.
    """
    merged = first.merge(second, on="x", suffixes=("_a", "_b"))
    merged = merged.sort_values("x").reset_index(drop=True)
    diff = (merged["re_a"] - merged["re_b"]) + 1j * (merged["im_a"] - merged["im_b"])
    abs_err = np.abs(diff.to_numpy())
    ref = np.hypot(merged["re_b"], merged["im_b"]).to_numpy()
    rel_err = np.divide(abs_err, ref, out=abs_err.copy(), where=ref > 0)
    return DataFrame({"x": merged["x"], "abs_err": abs_err, "rel_err": rel_err})[
        Columns.COMPARE_SEGMENT
    ]
