# -*- coding: UTF-8 -*-
import numpy as np
import pytest
from staggerwh import errors
from staggerwh.laurent import (
    ContourGrid,
    LaurentSeries,
    sample,
    to_series,
    split_additive,
    shift_split_minus,
    shift_split_plus,
    project_D,
    choose_contour,
    contour_bounds,
)


@pytest.fixture(scope="module")
def grid() -> ContourGrid:
    return ContourGrid(0.9, 256)


def _pointwise_error(values: np.ndarray, expected: np.ndarray) -> float:
    return float(np.max(np.abs(values - expected))) / max(1.0, float(np.max(np.abs(expected))))


class TestLaurent:
    def test_grid_validation(self) -> None:
        with pytest.raises(errors.InvalidContourError):
            ContourGrid(1.0, 100)
        with pytest.raises(errors.InvalidContourError):
            ContourGrid(1.0, 128)
        with pytest.raises(errors.InvalidContourError):
            ContourGrid(-1.0, 256)
        assert ContourGrid(1.0, 256).n_samples == 256

    def test_monomial(self, grid: ContourGrid) -> None:
        series = to_series(grid.nodes ** -3.0, grid)
        assert series.coeff(3) == pytest.approx(1.0, abs=1e-12)
        near = series.window(-20, 20)
        rest = np.delete(near.coeffs, 3 - near.m_lo)
        assert np.max(np.abs(rest)) < 1e-12

    def test_constant(self, grid: ContourGrid) -> None:
        series = to_series(sample(2.5 - 1j, grid), grid)
        assert series.coeff(0) == pytest.approx(2.5 - 1j, abs=1e-12)
        assert np.max(np.abs(series.window(1, 20).coeffs)) < 1e-12

    def test_radius_independent_coefficients(self) -> None:
        fn = lambda z: 1.0 / (1.0 - 0.3 / z) + 0.5 * z / (1.0 - 0.2 * z)  # noqa: E731
        a = to_series(sample(fn, ContourGrid(0.8, 512)), ContourGrid(0.8, 512))
        b = to_series(sample(fn, ContourGrid(1.2, 512)), ContourGrid(1.2, 512))
        for m in range(-6, 7):
            assert abs(a.coeff(m) - b.coeff(m)) < 1e-12

    def test_samples_roundtrip(self, grid: ContourGrid) -> None:
        series = LaurentSeries([1.0, -2.0j, 0.5, 0.25], -2, grid)
        z = grid.nodes
        direct = z**2 - 2j * z + 0.5 + 0.25 / z
        assert np.max(np.abs(series.to_samples() - direct)) < 1e-12
        assert series.evaluate(0.3 + 0.1j) == pytest.approx(
            (0.3 + 0.1j) ** 2 - 2j * (0.3 + 0.1j) + 0.5 + 0.25 / (0.3 + 0.1j), abs=1e-13
        )

    def test_limits(self, grid: ContourGrid) -> None:
        plus = LaurentSeries([2.0, 1.0, 0.5], 0, grid)
        minus = LaurentSeries([0.5, 1.0, 3.0], -2, grid)
        assert plus.at_infinity() == 2.0
        assert minus.at_zero() == 3.0
        with pytest.raises(errors.LaurentError):
            minus.at_infinity()
        with pytest.raises(errors.LaurentError):
            plus.at_zero()

    def test_split_additive(self, grid: ContourGrid) -> None:
        series = LaurentSeries(np.arange(1, 8), -3, grid)
        plus, minus = split_additive(series)
        assert plus.m_lo == 0 and plus.m_hi == 3
        assert minus.m_lo == -3 and minus.m_hi == -1
        total = plus + minus
        assert np.allclose(total.coeffs, series.coeffs)

    @pytest.mark.parametrize("seed", range(20))
    def test_shift_split_minus(self, grid: ContourGrid, seed: int) -> None:
        rng = np.random.default_rng(seed)
        m = seed % 9
        fminus = LaurentSeries(rng.normal(size=12) + 1j * rng.normal(size=12), -11, grid)
        plus, minus = shift_split_minus(fminus, m)
        assert plus.m_lo >= 0 and plus.m_hi <= m
        assert minus.m_hi <= -1
        expected = fminus.to_samples() * grid.nodes ** (-float(m))
        assert _pointwise_error(plus.to_samples() + minus.to_samples(), expected) < 1e-12

    @pytest.mark.parametrize("seed", range(20))
    def test_shift_split_plus(self, grid: ContourGrid, seed: int) -> None:
        rng = np.random.default_rng(100 + seed)
        m = seed % 9
        Fplus = LaurentSeries(rng.normal(size=12) + 1j * rng.normal(size=12), 0, grid)
        plus, minus = shift_split_plus(Fplus, m)
        assert plus.m_lo >= 0
        assert minus.m_lo >= -m and minus.m_hi <= -1
        expected = Fplus.to_samples() * grid.nodes ** float(m)
        assert _pointwise_error(plus.to_samples() + minus.to_samples(), expected) < 1e-12

    def test_shift_split_rejects(self, grid: ContourGrid) -> None:
        with pytest.raises(errors.LaurentError):
            shift_split_minus(LaurentSeries([1.0, 1.0], 0, grid), 1)
        with pytest.raises(errors.LaurentError):
            shift_split_plus(LaurentSeries([1.0, 1.0], -1, grid), 1)

    def test_project(self, grid: ContourGrid) -> None:
        series = LaurentSeries(np.arange(10), -5, grid)
        window = project_D(series, -2, 1)
        assert window.to_dict() == {-2: 3, -1: 4, 0: 5, 1: 6}

    def test_choose_contour(self) -> None:
        lo, hi = contour_bounds(0.8, 1.3, 0.2, 0.85)
        assert lo == pytest.approx(0.851)
        assert hi == pytest.approx(1.3)
        assert choose_contour(0.8, 1.3, 0.2, 0.85) == pytest.approx(np.sqrt(lo * hi))
        assert choose_contour(0.8, 1.3, 0.2, 0.85, 1.0) == 1.0
        with pytest.raises(errors.InvalidContourError):
            choose_contour(0.8, 1.3, 0.2, 0.85, 0.84)
        with pytest.raises(errors.EmptyAnnulusError):
            contour_bounds(0.9, 0.95, 0.2, 0.99)
