# -*- coding: UTF-8 -*-
import numpy as np
import pytest
from staggerwh import errors
from staggerwh.oracle import (
    GridProblem,
    compare_fields,
    compare_segments,
    default_ng,
    extract_traces,
    solve_grid,
)
from conftest import OMEGA, ORACLE_NG, desk_scenario


def _per_component(reduced: np.ndarray, oracle: np.ndarray) -> float:
    return float(np.max(np.abs(reduced - oracle) / np.abs(oracle)))


class TestGrid:
    def test_default_ng(self) -> None:
        assert default_ng(desk_scenario(m_offset=-3)) == 94

    def test_window_too_small(self) -> None:
        with pytest.raises(errors.WindowTooSmallError):
            GridProblem(desk_scenario(m_offset=3), ng=6)

    def test_intact_lattice(self) -> None:
        grid = GridProblem(desk_scenario(m_offset=3), ng=12, defects=False)
        assert not np.any(grid.rhs)
        field = solve_grid(grid)
        assert not np.any(field.values)

    def test_operator(self) -> None:
        grid = GridProblem(desk_scenario("crack", 2, n_sep=2), ng=8)
        assert grid.matrix.shape == (17 * 17, 17 * 17)
        # the site (0, 0) lost its bond to (0, -1)
        size = grid.coords.size
        k = 8 * size + 8
        assert grid.matrix[k, k] == pytest.approx(OMEGA**2 - 3.0)
        assert grid.matrix[k, k - size] == 0.0
        assert grid.rhs[k] == pytest.approx(grid.incident[7, 8] - grid.incident[8, 8])

    def test_invalid_solver(self) -> None:
        with pytest.raises(errors.StaggerWHInvalidValueError):
            solve_grid(desk_scenario(m_offset=3), ng=10, solver="jacobi")

    @pytest.mark.parametrize("solver", ["gmres", "bicgstab", "direct"])
    def test_solvers_agree(self, solver: str) -> None:
        grid = GridProblem(desk_scenario("constraint", 2, n_sep=3), ng=15)
        field = solve_grid(grid, solver=solver)
        reference = solve_grid(grid, solver="direct")
        assert np.max(np.abs(field.values - reference.values)) < 1e-6 * np.max(np.abs(reference.values))
        assert grid.residual(field.values.ravel()) < 1e-8

    def test_constrained_sites(self) -> None:
        scenario = desk_scenario("constraint", -2, n_sep=3)
        field = solve_grid(scenario, ng=20)
        assert field.label == "oracle"
        assert field.constrained_residual(scenario) < 1e-6
        assert field.helmholtz_residual(OMEGA, scenario) < 1e-6


class TestAgainstReduced:
    @pytest.mark.parametrize("kind, m_offset", [("crack", 3), ("crack", -3), ("constraint", 3), ("constraint", -3)])
    def test_segment(self, synth_of, kind: str, m_offset: int) -> None:
        synth = synth_of(kind, m_offset)
        scenario = synth.scenario
        traces = extract_traces(solve_grid(scenario, ng=ORACLE_NG), scenario)
        assert _per_component(synth.solution.chi, traces.chi) <= 0.05
        if kind == "constraint":
            corners = np.array([synth.solution.u_m10, synth.solution.u_Mm1N])
            assert _per_component(corners, np.array([traces.u_m10, traces.u_Mm1N])) <= 0.05
            window = synth.field((-10, 10, -10, 10))
            assert window.constrained_residual(scenario) < 1e-6


class TestCompare:
    def test_identical_fields(self, synth_of) -> None:
        frame = synth_of("crack", 3).field((-4, 4, -2, 6)).to_frame()
        errors_ = compare_fields(frame, frame)
        assert list(errors_.columns) == ["x", "y", "abs_err", "rel_err"]
        assert len(errors_) == len(frame)
        assert errors_["abs_err"].max() == 0.0

    def test_partial_overlap(self, synth_of) -> None:
        field = synth_of("crack", 3).field((-4, 4, -2, 6))
        small = field.subwindow(0, 4, 0, 2).to_frame()
        errors_ = compare_fields(field.to_frame(), small)
        assert len(errors_) == 15
        with pytest.raises(errors.StaggerWHInvalidValueError):
            compare_fields(small, field.subwindow(-4, -1, -2, -1).to_frame())

    def test_segments(self, synth_of) -> None:
        frame = synth_of("crack", 3).solution.to_frame()
        shifted = frame.copy()
        shifted["re"] = shifted["re"] * 1.1
        shifted["im"] = shifted["im"] * 1.1
        result = compare_segments(shifted, frame)
        assert list(result.columns) == ["x", "abs_err", "rel_err"]
        assert np.allclose(result["rel_err"], 0.1)
