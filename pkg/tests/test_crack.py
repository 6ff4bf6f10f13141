# -*- coding: UTF-8 -*-
import numpy as np
import pytest
from staggerwh import errors
from staggerwh.crack import dense_solve, incident_jump_plus, solve_crack
from staggerwh.synthesis import consistency_report
from conftest import desk_scenario


class TestCrack:
    @pytest.mark.parametrize("m_offset", [3, -2])
    def test_reduced_system(self, problem_of, m_offset: int) -> None:
        solution = solve_crack(problem_of("crack", m_offset))
        assert len(solution) == abs(m_offset)
        assert solution.residual < 1e-8
        assert solution.condition < 1e12
        assert list(solution.to_frame()["x"]) == list(desk_scenario(m_offset=m_offset).segment)

    def test_aligned(self, problem_of) -> None:
        solution = solve_crack(problem_of("crack", 0))
        assert len(solution) == 0
        assert solution.segment_values() == {}

    @pytest.mark.parametrize("m_offset", [3, -2])
    def test_segment_conditions(self, synth_of, m_offset: int) -> None:
        synth = synth_of("crack", m_offset)
        report = consistency_report(synth)
        scale = max(1.0, float(np.max(np.abs(synth.solution.chi))))
        assert report["segment"] < 1e-6 * scale
        assert report["routes"] < 1e-8
        assert report["wh_residual"] < 1e-8

    @pytest.mark.parametrize("m_offset", [3, -3])
    def test_amplitude_linearity(self, problem_of, m_offset: int) -> None:
        problem = problem_of("crack", m_offset)
        single = solve_crack(problem).chi
        double = solve_crack(problem.with_scenario(problem.scenario.with_amplitude(2.0))).chi
        assert np.max(np.abs(double - 2.0 * single)) < 1e-10 * max(1.0, float(np.max(np.abs(single))))

    def test_wrong_kind(self, problem_of) -> None:
        with pytest.raises(errors.StaggerWHInvalidValueError):
            solve_crack(problem_of("constraint", 3))

    def test_incident_jump(self, problem_of) -> None:
        problem = problem_of("crack", 3)
        v0, vN = incident_jump_plus(problem.scenario, problem.wave)
        z = problem.grid.nodes[:8]
        expected = sum(problem.incident_jump(x, 0) * z ** (-float(x)) for x in range(400))
        assert np.max(np.abs(v0(z) - expected)) < 1e-8
        assert np.allclose(vN(z), problem.e * v0(z))
        with pytest.raises(errors.PoleOnContourError):
            v0(np.array([abs(problem.zP)]))

    def test_singular(self) -> None:
        with pytest.raises(errors.SingularSystemError):
            dense_solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 0.0]), "test")
        x, residual, condition = dense_solve(np.eye(2) * 2.0, np.array([2.0, 4.0j]), "test")
        assert np.allclose(x, [1.0, 2.0j])
        assert residual == 0.0
        assert condition == pytest.approx(1.0)
