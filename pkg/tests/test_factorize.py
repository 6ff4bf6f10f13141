# -*- coding: UTF-8 -*-
import numpy as np
import pytest
from staggerwh import errors
from staggerwh.laurent import ContourGrid, to_series
from staggerwh.kernel import KernelBundle
from staggerwh.factorize import (
    FactorSuite,
    cauchy_factorize,
    winding_number,
    kernel_sqrt_factors,
    chebyshev_tilde_factors,
    required_samples,
)
from staggerwh.scenario import solve_dispersion
from conftest import KERNEL_OMEGA, OMEGA, THETA_DEG


@pytest.fixture(scope="module")
def bundle() -> KernelBundle:
    return KernelBundle(KERNEL_OMEGA, ContourGrid(1.0, 2048))


def _constant_ratio(a: np.ndarray, b: np.ndarray) -> float:
    ratio = a / b
    return float(np.max(np.abs(ratio - ratio[0])) / abs(ratio[0]))


class TestCauchy:
    def test_rational(self) -> None:
        a, b = 0.3, 0.2
        grid = ContourGrid(1.0, 512)
        z = grid.nodes
        pair = cauchy_factorize((1 - a / z) * (1 - b * z), grid, "rational")
        assert np.max(np.abs(pair.plus_samples - (1 - a / z))) < 1e-10
        assert np.max(np.abs(pair.minus_samples - (1 - b * z))) < 1e-10
        assert pair.plus_at_infinity == pytest.approx(1.0, abs=1e-12)
        assert pair.minus_at_zero == pytest.approx(1.0, abs=1e-12)
        assert pair.plus_at(2.0) == pytest.approx(1 - a / 2.0, abs=1e-10)
        assert pair.minus_at(0.5) == pytest.approx(1 - b * 0.5, abs=1e-10)
        plus = pair.plus
        assert plus.coeff(1) == pytest.approx(-a, abs=1e-10)
        assert np.max(np.abs(plus.window(2, 50).coeffs)) < 1e-10

    def test_winding(self) -> None:
        grid = ContourGrid(1.0, 256)
        assert winding_number(grid.nodes) == 1
        assert winding_number(1.0 / grid.nodes**2) == -2
        with pytest.raises(errors.WindingNonZeroError):
            cauchy_factorize(grid.nodes, grid)

    def test_vanishing(self) -> None:
        grid = ContourGrid(1.0, 256)
        samples = np.ones(256, dtype=complex)
        samples[7] = 0.0
        with pytest.raises(errors.VanishingSampleError):
            cauchy_factorize(samples, grid)

    @pytest.mark.parametrize("n_sep", [2, 3, 5, 25])
    @pytest.mark.parametrize("kind", ["crack", "constraint"])
    def test_product(self, bundle: KernelBundle, n_sep: int, kind: str) -> None:
        wave = solve_dispersion(KERNEL_OMEGA, np.radians(THETA_DEG))
        suite = FactorSuite(bundle, n_sep, kind, wave.zP)
        res = suite.product_residuals()
        assert res["alpha"] < 1e-8
        assert res["beta"] < 1e-8
        assert suite.tail_mass() < 1e-6


class TestClosedForms:
    def test_kernel_sqrt(self, bundle: KernelBundle) -> None:
        closed = kernel_sqrt_factors(bundle)
        ratio = closed["h_plus"] * closed["h_minus"] / bundle.h
        assert np.max(np.abs(ratio - ratio[0])) < 1e-10
        assert abs(ratio[0]) == pytest.approx(1.0, abs=1e-10)
        numeric = cauchy_factorize(bundle.Lk, bundle.grid, "h/r")
        assert _constant_ratio(closed["Lk_plus"], numeric.plus_samples) < 1e-8
        assert _constant_ratio(closed["Lk_minus"], numeric.minus_samples) < 1e-8

    @pytest.mark.parametrize("n_sep", [1, 2, 3, 6])
    def test_chebyshev(self, bundle: KernelBundle, n_sep: int) -> None:
        lamN = bundle.lam_power(n_sep)
        tilde = chebyshev_tilde_factors(n_sep, bundle)
        assert np.max(np.abs(tilde["alpha_plus"] * tilde["alpha_minus"] - (1 - lamN))) < 1e-8
        assert np.max(np.abs(tilde["beta_plus"] * tilde["beta_minus"] - (1 + lamN))) < 1e-8
        alpha = cauchy_factorize(1 - lamN, bundle.grid, "alpha~")
        beta = cauchy_factorize(1 + lamN, bundle.grid, "beta~")
        assert _constant_ratio(tilde["alpha_plus"], alpha.plus_samples) < 1e-6
        assert _constant_ratio(tilde["beta_minus"], beta.minus_samples) < 1e-6
        # the plus factor carries no positive powers of z
        series = to_series(tilde["alpha_plus"], bundle.grid)
        assert np.max(np.abs(series.window(-40, -1).coeffs)) < 1e-8

    def test_chebyshev_rejects(self, bundle: KernelBundle) -> None:
        with pytest.raises(errors.StaggerWHInvalidValueError):
            chebyshev_tilde_factors(0, bundle)


class TestSuite:
    @pytest.fixture(scope="class")
    def suite(self) -> FactorSuite:
        wave = solve_dispersion(OMEGA, np.radians(THETA_DEG))
        return FactorSuite(KernelBundle(OMEGA, ContourGrid(1.0, 1024)), 4, "crack", wave.zP)

    @pytest.mark.parametrize("x", [0, 2, 5])
    def test_shift_minus(self, suite: FactorSuite, x: int) -> None:
        z = suite.grid.nodes
        phi_plus, phi_minus, psi_plus, psi_minus = suite.shift_minus(x)
        expected = z ** (-float(x)) / suite.am
        total = phi_plus.to_samples() + phi_minus.to_samples()
        assert np.max(np.abs(total - expected)) < 1e-9
        expected = z ** (-float(x)) / suite.bm
        total = psi_plus.to_samples() + psi_minus.to_samples()
        assert np.max(np.abs(total - expected)) < 1e-9

    @pytest.mark.parametrize("m", [1, 3])
    def test_shift_plus(self, suite: FactorSuite, m: int) -> None:
        z = suite.grid.nodes
        Phi_plus, Phi_minus, _, _ = suite.shift_plus(m)
        total = Phi_plus.to_samples() + Phi_minus.to_samples()
        assert np.max(np.abs(total - suite.ap * z ** float(m))) < 1e-9
        assert Phi_minus.m_lo >= -m

    @pytest.mark.parametrize("x", [-3, -1, 0, 2])
    def test_difference_split(self, suite: FactorSuite, x: int) -> None:
        z = suite.grid.nodes
        minus, plus, _ = suite.difference_split(x)
        expected = (1.0 / suite.am - suite.ap) * z ** (-float(x))
        assert np.max(np.abs(minus[0] + plus[0] - expected)) < 1e-9

    def test_required_samples(self) -> None:
        assert required_samples(3) == 4096
        assert required_samples(0, 128) == 256
        assert required_samples(-300, 1024) == 8192
