# -*- coding: UTF-8 -*-
import numpy as np
import pytest
from staggerwh import errors
from staggerwh.laurent import ContourGrid
from staggerwh.problem import ScatteringProblem
from staggerwh.synthesis import (
    FieldSynthesizer,
    LatticeField,
    flip_check,
    inverse_transform,
    stagger_perturbation,
    synthesize_field,
)
from conftest import OMEGA, desk_scenario

WINDOW = (-12, 12, -4, 9)
CASES = [("crack", 3), ("crack", -2), ("constraint", 3), ("constraint", -2)]
FLIP_CASES = [(kind, m) for kind in ("crack", "constraint") for m in (2, -2, 3, -3)]


def _free_rows(synth: FieldSynthesizer) -> list[int]:
    # rows whose lattice equation involves no broken bond or constrained site
    n_sep = synth.scenario.n_sep
    hi = n_sep - 1 if synth.scenario.is_crack else n_sep
    return [-3, -2] + list(range(1, hi)) + [hi + 2, hi + 3]


class TestRows:
    @pytest.mark.parametrize("kind, m_offset", CASES)
    def test_row_recurrence(self, synth_of, kind: str, m_offset: int) -> None:
        synth = synth_of(kind, m_offset)
        Q = synth.problem.bundle.Q
        scale = max(1.0, float(np.max(np.abs(synth.row(0)))))
        for y in _free_rows(synth):
            res = Q * synth.row(y) - synth.row(y + 1) - synth.row(y - 1)
            assert np.max(np.abs(res)) < 1e-8 * scale, y

    @pytest.mark.parametrize("kind, m_offset", CASES)
    def test_wh_residual(self, synth_of, kind: str, m_offset: int) -> None:
        assert synth_of(kind, m_offset).wh.residual < 1e-8

    def test_routes(self, problem_of) -> None:
        problem = problem_of("crack", 3)
        matrix = FieldSynthesizer(problem, route="matrix")
        sigma = FieldSynthesizer(problem, matrix.solution, route="sigma")
        assert matrix.route == "matrix" and sigma.route == "sigma"
        xs = np.arange(-10, 11)
        for y in (-2, 0, 2, 4, 7):
            a, b = matrix.values(y, xs), sigma.values(y, xs)
            assert np.max(np.abs(a - b)) < 1e-8

    def test_single_row_gap(self) -> None:
        problem = ScatteringProblem(desk_scenario("crack", 2, n_sep=1))
        synth = FieldSynthesizer(problem)
        assert synth.route == "sigma"
        with pytest.raises(errors.SynthesisError):
            FieldSynthesizer(problem, synth.solution, route="matrix")

    def test_inverse_transform(self) -> None:
        grid = ContourGrid(1.2, 256)
        z = grid.nodes
        samples = 2.0 * z**-3 - 1j * z**2
        values = inverse_transform(samples, grid, [-2, -1, 0, 3, 4])
        assert np.allclose(values, [-1j, 0, 0, 2.0, 0], atol=1e-12)


class TestField:
    @pytest.mark.parametrize("kind, m_offset", CASES)
    def test_helmholtz(self, synth_of, kind: str, m_offset: int) -> None:
        synth = synth_of(kind, m_offset)
        field = synth.field(WINDOW)
        assert field.helmholtz_residual(OMEGA, synth.scenario) < 1e-6
        if kind == "constraint":
            assert field.constrained_residual(synth.scenario) < 1e-8
        else:
            assert field.constrained_residual(synth.scenario) == 0.0

    @pytest.mark.parametrize("kind, m_offset", CASES)
    def test_stagger_split(self, synth_of, kind: str, m_offset: int) -> None:
        synth = synth_of(kind, m_offset)
        field = synth.field(WINDOW)
        aligned, perturbation = stagger_perturbation(synth, WINDOW)
        scale = max(1.0, float(np.max(np.abs(field.values))))
        assert np.max(np.abs(aligned.values + perturbation.values - field.values)) < 1e-8 * scale
        assert np.allclose(aligned.incident, field.incident)
        assert not np.any(perturbation.incident)
        assert (aligned + perturbation).label == "aligned"

    @pytest.mark.parametrize("kind", ["crack", "constraint"])
    def test_aligned_has_no_perturbation(self, synth_of, kind: str) -> None:
        _, perturbation = stagger_perturbation(synth_of(kind, 0), WINDOW)
        assert np.max(np.abs(perturbation.values)) < 1e-8

    @pytest.mark.parametrize("kind, m_offset", FLIP_CASES)
    def test_flip(self, problem_of, synth_of, kind: str, m_offset: int) -> None:
        report = flip_check(problem_of(kind, m_offset), synth_of(kind, m_offset))
        assert report["mirror_M"] == -m_offset
        assert report["passed"], report

    @pytest.mark.parametrize("kind", ["crack", "constraint"])
    def test_contour_independence(self, problem_of, synth_of, kind: str) -> None:
        problem = problem_of(kind, 3)
        lo, hi = problem.bounds
        other = FieldSynthesizer(problem.with_radius(lo**0.7 * hi**0.3))
        window = (-10, 10, -3, problem.scenario.n_sep + 3)
        a = synth_of(kind, 3).field(window).values
        b = other.field(window).values
        assert np.max(np.abs(a - b)) < 1e-8 * max(1.0, float(np.max(np.abs(a))))

    @pytest.mark.parametrize("kind", ["crack", "constraint"])
    def test_zero_amplitude(self, kind: str) -> None:
        problem = ScatteringProblem(desk_scenario(kind, 2, amplitude=0.0))
        field = synthesize_field(problem, window=(-5, 5, -2, 7))
        assert not np.any(np.abs(field.values) > 1e-14)
        assert not np.any(field.incident)

    def test_defect_traces(self, synth_of) -> None:
        synth = synth_of("crack", 3)
        xs = np.array(synth.problem.segment)
        traces = synth.defect_traces(xs)
        assert np.allclose(traces["upper"], synth.solution.chi, atol=1e-6)


class TestLatticeField:
    @pytest.fixture
    def field(self) -> LatticeField:
        xs, ys = np.arange(-2, 3), np.arange(0, 3)
        values = np.arange(15).reshape(3, 5) * (1 + 0.5j)
        return LatticeField(xs, ys, values, np.full((3, 5), 2.0 + 0j), "demo")

    def test_access(self, field: LatticeField) -> None:
        assert field.at(-2, 0) == 0j
        assert field.at(2, 2, total=True) == 14 * (1 + 0.5j) + 2.0
        assert np.allclose(field.row(1, [-1, 0]), [6 * (1 + 0.5j), 7 * (1 + 0.5j)])
        with pytest.raises(errors.WindowTooSmallError):
            field.at(3, 0)

    def test_subwindow(self, field: LatticeField) -> None:
        sub = field.subwindow(0, 1, 1, 2)
        assert sub.values.shape == (2, 2)
        assert sub.at(1, 2) == field.at(1, 2)

    def test_frame(self, field: LatticeField) -> None:
        frame = field.to_frame()
        assert list(frame.columns) == ["x", "y", "re", "im", "abs", "re_total"]
        again = LatticeField.from_frame(frame)
        assert np.allclose(again.values, field.values)
        assert np.allclose(again.total.real, field.total.real)
        with pytest.raises(errors.SynthesisError):
            LatticeField.from_frame(frame.iloc[1:])

    def test_shape_mismatch(self) -> None:
        with pytest.raises(errors.SynthesisError):
            LatticeField(np.arange(3), np.arange(2), np.zeros((3, 2)))
