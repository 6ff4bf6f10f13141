# -*- coding: UTF-8 -*-
import numpy as np
import pytest
from staggerwh import errors
from staggerwh.laurent import ContourGrid
from staggerwh.kernel import (
    KernelBundle,
    eval_HRQ,
    lam,
    int_power,
    distinguished_zeros,
    alpha_beta,
)
from conftest import KERNEL_OMEGA, OMEGA


@pytest.fixture(scope="module")
def bundle() -> KernelBundle:
    return KernelBundle(KERNEL_OMEGA, ContourGrid(1.0, 1024))


class TestKernel:
    def test_identities_on_unit_circle(self, bundle: KernelBundle) -> None:
        res = bundle.identity_residuals()
        assert res["lam_plus_inverse_minus_Q"] < 1e-10
        assert res["lam_ratio_minus_h_over_r"] < 1e-10
        assert res["h_squared_minus_H"] < 1e-12
        assert res["r_squared_minus_R"] < 1e-12
        assert res["lam_modulus_excess"] == 0.0

    def test_root_signs(self, bundle: KernelBundle) -> None:
        assert np.all(bundle.h.real > 0)
        assert np.all(bundle.r.real > 0)
        assert np.all(bundle.h.imag * bundle.r.imag >= 0)

    def test_zero_argument(self) -> None:
        with pytest.raises(errors.ZeroArgumentError):
            eval_HRQ(0.0, OMEGA)

    def test_symbols(self) -> None:
        z = 0.7 + 0.2j
        H, R, Q = eval_HRQ(z, OMEGA)
        assert H == pytest.approx(2 - z - 1 / z - OMEGA**2)
        assert R - H == pytest.approx(4.0)
        assert Q - H == pytest.approx(2.0)

    def test_distinguished_zeros(self) -> None:
        z_h, z_r, z_q = distinguished_zeros(OMEGA)
        for z, c in ((z_h, 2.0), (z_r, 6.0), (z_q, 4.0)):
            assert abs(z) < 1.0
            assert abs(z + 1 / z - (c - OMEGA**2)) < 1e-12
        with pytest.raises(errors.StaggerWHInvalidValueError):
            distinguished_zeros(0.9)

    def test_unit_root(self) -> None:
        # 2 - ω² = 2cos(1) puts z_h on the unit circle
        omega = np.sqrt(2.0 - 2.0 * np.cos(1.0))
        with pytest.raises(errors.UnitModulusRootError):
            distinguished_zeros(omega, validation=True)

    def test_lam_scalar(self) -> None:
        z = 1.1 * np.exp(0.4j)
        value = lam(z, OMEGA)
        _, _, Q = eval_HRQ(z, OMEGA)
        assert abs(value + 1 / value - Q) < 1e-12
        assert abs(value) <= 1.0

    def test_int_power(self) -> None:
        base = np.array([0.5 + 0.5j, -1.2, 2j])
        assert np.allclose(int_power(base, 7), base**7)
        assert int_power(0.3 + 0.1j, 0) == 1.0

    @pytest.mark.parametrize("kind", ["crack", "constraint"])
    def test_diagonalization(self, bundle: KernelBundle, kind: str) -> None:
        alpha, beta = bundle.alpha_beta(5, kind)
        J = np.array([[1.0, -1.0], [1.0, 1.0]]) / np.sqrt(2.0)
        Jinv = np.linalg.inv(J)
        D = np.zeros((bundle.grid.n_samples, 2, 2), dtype=complex)
        D[:, 0, 0] = alpha
        D[:, 1, 1] = beta
        rebuilt = np.einsum("ij,kjl,lm->kim", Jinv, D, J)
        kernel = np.moveaxis(bundle.kernel_matrix(5, kind), -1, 0)
        assert np.max(np.abs(rebuilt - kernel)) < 1e-12

    def test_alpha_beta_pointwise(self, bundle: KernelBundle) -> None:
        z = bundle.grid.nodes[::64]
        a, b = alpha_beta(z, KERNEL_OMEGA, 3, "crack")
        a2, b2 = bundle.alpha_beta(3, "crack")
        assert np.allclose(a, a2[::64], atol=1e-13)
        assert np.allclose(b, b2[::64], atol=1e-13)
        with pytest.raises(errors.StaggerWHInvalidValueError):
            alpha_beta(z, KERNEL_OMEGA, 0, "crack")

    def test_kernel_table(self, bundle: KernelBundle) -> None:
        frame = bundle.to_frame(5, "crack")
        assert len(frame) == bundle.grid.n_samples
        assert {"z_re", "lam_im", "alpha_re", "beta_im"} <= set(frame.columns)
