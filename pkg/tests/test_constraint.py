# -*- coding: UTF-8 -*-
import numpy as np
import pytest
from staggerwh import errors
from staggerwh.constraint import (
    assemble_Ginc,
    boundary_sum_direct,
    boundary_sum_transform,
    constraint_vectors,
    solve_constraint,
)
from staggerwh.synthesis import consistency_report, quadrature_check
from conftest import OMEGA


class TestConstraint:
    @pytest.mark.parametrize("m_offset", [3, 0, -2])
    def test_reduced_system(self, problem_of, m_offset: int) -> None:
        solution = solve_constraint(problem_of("constraint", m_offset))
        assert len(solution) == abs(m_offset) + 2
        assert solution.residual < 1e-8
        assert solution.ginc < 1e-8
        summary = solution.summary()
        assert summary["u_m10"] == solution.u_m10
        assert summary["u_Mm1N"] == solution.u_Mm1N

    def test_incident_remainder(self, problem_of) -> None:
        problem = problem_of("constraint", 3)
        assert np.max(np.abs(assemble_Ginc(problem))) < 1e-8

    def test_constraint_vectors(self, problem_of) -> None:
        problem = problem_of("constraint", 3)
        b, k = constraint_vectors(problem)
        assert b[0] == pytest.approx(-problem.incident(0, 0))
        assert b[1] == pytest.approx(-problem.incident(0, problem.scenario.n_sep))
        assert np.linalg.norm(k) == pytest.approx(np.linalg.norm(b))

    @pytest.mark.parametrize("m_offset", [3, 0, -2])
    def test_conditions(self, synth_of, m_offset: int) -> None:
        synth = synth_of("constraint", m_offset)
        report = consistency_report(synth)
        scale = max(1.0, float(np.max(np.abs(synth.solution.unknowns))))
        assert report["segment"] < 1e-6 * scale
        assert report["zq"] < 1e-8 * scale
        assert report["constrained_rows"] < 1e-8 * scale

    @pytest.mark.parametrize("m_offset", [3, -2])
    def test_quadrature(self, synth_of, m_offset: int) -> None:
        check = quadrature_check(synth_of("constraint", m_offset))
        assert check["u_m10_deviation"] < 1e-6
        assert check["u_Mm1N_deviation"] < 1e-6
        assert quadrature_check(synth_of("crack", m_offset)) == {}

    @pytest.mark.parametrize("m_offset", [3, -3])
    def test_amplitude_linearity(self, problem_of, m_offset: int) -> None:
        problem = problem_of("constraint", m_offset)
        single = solve_constraint(problem).unknowns
        double = solve_constraint(problem.with_scenario(problem.scenario.with_amplitude(2.0))).unknowns
        assert np.max(np.abs(double - 2.0 * single)) < 1e-10 * max(1.0, float(np.max(np.abs(single))))

    def test_wrong_kind(self, problem_of) -> None:
        with pytest.raises(errors.StaggerWHInvalidValueError):
            solve_constraint(problem_of("crack", 3))


class TestBoundaryForm:
    @pytest.mark.parametrize("m, n", [(0, 0), (-3, 4), (2, 9)])
    def test_transform_matches_sum(self, m: int, n: int) -> None:
        rng = np.random.default_rng(abs(m) + n)
        shape = (3, n - m + 3)
        rows = rng.normal(size=shape) + 1j * rng.normal(size=shape)
        z = np.array([0.9, 1.1j, 0.7 - 0.8j, 1.3 * np.exp(2.0j)])
        direct = boundary_sum_direct(m, n, rows, z, OMEGA)
        transform = boundary_sum_transform(m, n, rows, z, OMEGA)
        assert np.max(np.abs(direct - transform)) < 1e-10
        assert boundary_sum_transform(m, n, rows, 0.9, OMEGA) == pytest.approx(direct[0])

    def test_empty_range(self) -> None:
        assert boundary_sum_direct(3, 2, np.zeros((3, 2)), 1.0, OMEGA) == 0j
        assert np.all(boundary_sum_transform(3, 2, np.zeros((3, 2)), np.ones(3), OMEGA) == 0)

    def test_bad_shape(self) -> None:
        with pytest.raises(errors.StaggerWHInvalidValueError):
            boundary_sum_direct(0, 2, np.zeros((3, 4)), 1.0, OMEGA)
