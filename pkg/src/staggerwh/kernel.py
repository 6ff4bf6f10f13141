# -*- coding: UTF-8 -*-
from __future__ import annotations
import numpy as np
from pandas import DataFrame
from staggerwh import errors
from staggerwh.laurent import ContourGrid
from staggerwh.settings import DefectKind, DefaultKernel

__all__ = [
    "KernelBundle",
    "eval_HRQ",
    "branch_sqrt",
    "lam",
    "int_power",
    "distinguished_zeros",
    "scalar_kernels",
    "alpha_beta",
]


# Symbol functions --------------------------------------------------------------------------------
def eval_HRQ(z: complex | np.ndarray, omega: complex) -> tuple:
    """Lattice symbols `H = 2 - z - 1/z - ω²`, `R = H + 4`, `Q = H + 2`.

    :raises ZeroArgumentError: Evaluated at `z = 0`.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise errors.ZeroArgumentError("<eval_HRQ>\nThe symbols are singular at z = 0.")
    H = 2.0 - z - 1.0 / z - complex(omega) ** 2
    if H.ndim == 0:
        H = complex(H)
    return H, H + 4.0, H + 2.0


def branch_sqrt(z: complex | np.ndarray, omega: complex) -> tuple:
    """Square roots `h = √H`, `r = √R` on the principal branch.

    Off the cut `H ∈ (-∞, 0)` both roots have positive real part and, since
    `Im R = Im H`, imaginary parts of the same sign.

    :raises OnBranchCutError: `H` lies on the negative real axis.
    """
    H, R, _ = eval_HRQ(z, omega)
    H_arr = np.asarray(H)
    scale = np.maximum(1.0, np.abs(H_arr))
    on_cut = (
        (H_arr.real < 0)
        & (np.abs(H_arr.imag) <= DefaultKernel.BRANCH_CUT_TOL * scale)
        & (np.abs(H_arr) > DefaultKernel.ZERO_TOL)
    )
    if np.any(on_cut):
        raise errors.OnBranchCutError(
            "<branch_sqrt>\n{} evaluation point(s) lie on the branch cut of "
            "sqrt(H) (omega={}).".format(int(np.count_nonzero(on_cut)), omega)
        )
    h = np.sqrt(H_arr)
    r = np.sqrt(np.asarray(R))
    clash = (np.sign(h.imag) * np.sign(r.imag)) < 0
    if np.any(clash):
        raise errors.OnBranchCutError(
            "<branch_sqrt>\nSign conditions of sqrt(H), sqrt(R) violated at {} "
            "point(s) (omega={}).".format(int(np.count_nonzero(clash)), omega)
        )
    if h.ndim == 0:
        return complex(h), complex(r)
    return h, r


def lam(z: complex | np.ndarray, omega: complex) -> complex | np.ndarray:
    """The bounded root `λ = (r - h)/(r + h)` of `λ + 1/λ = Q`."""
    h, r = branch_sqrt(z, omega)
    return (r - h) / (r + h)


def int_power(values: complex | np.ndarray, n: int) -> complex | np.ndarray:
    """`values**n` for an integer `n >= 0` by repeated squaring."""
    result = np.ones_like(np.asarray(values, dtype=complex))
    base = np.asarray(values, dtype=complex)
    while n > 0:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    if result.ndim == 0:
        return complex(result)
    return result


def _small_root(c: complex, label: str) -> complex:
    # root of z + 1/z = c inside the unit circle
    disc = np.sqrt(complex(c) * c - 4.0)
    roots = ((c + disc) / 2.0, (c - disc) / 2.0)
    z = min(roots, key=abs)
    if abs(abs(z) - 1.0) < DefaultKernel.UNIT_ROOT_TOL:
        raise errors.UnitModulusRootError(
            "<distinguished_zeros>\nThe zero {} = {} lies on the unit circle.".format(
                label, z
            )
        )
    return complex(z)


def distinguished_zeros(omega: complex, validation: bool = False) -> tuple[complex, complex, complex]:
    """Zeros `(z_h, z_r, z_q)` of `H`, `R`, `Q` inside the unit circle.

    Each solves `z + 1/z = c` with `c = 2 - ω²`, `6 - ω²`, `4 - ω²`.

    :raises UnitModulusRootError: A root sits on the unit circle (real ω only).
    """
    omega = complex(omega)
    if omega.imag <= 0 and not validation:
        raise errors.StaggerWHInvalidValueError(
            "<distinguished_zeros>\nExpects Im(omega) > 0, instead got {}.".format(omega)
        )
    w2 = omega * omega
    return (
        _small_root(2.0 - w2, "z_h"),
        _small_root(6.0 - w2, "z_r"),
        _small_root(4.0 - w2, "z_q"),
    )


def scalar_kernels(z: complex | np.ndarray, omega: complex) -> tuple:
    """The scalar kernels `ℒ_k = h/r` and `ℒ_c = Q/(rh)`.

    :raises KernelDivisionByZeroError: Evaluated at a zero of `h` or `r`.
    """
    h, r = branch_sqrt(z, omega)
    _, _, Q = eval_HRQ(z, omega)
    if np.any(np.asarray(r) == 0) or np.any(np.asarray(h) == 0):
        raise errors.KernelDivisionByZeroError(
            "<scalar_kernels>\nThe kernels are singular at the zeros of h and r."
        )
    return h / r, Q / (r * h)


def alpha_beta(z: complex | np.ndarray, omega: complex, n_sep: int, kind: str) -> tuple:
    """Diagonal entries `α = ℒ(1 - λ^N)`, `β = ℒ(1 + λ^N)` of the
    diagonalized 2x2 kernel, with `ℒ = ℒ_k` for cracks and `ℒ_c` for
    constraints.
    """
    if n_sep < 1:
        raise errors.StaggerWHInvalidValueError(
            "<alpha_beta>\nExpects N >= 1, instead got {}.".format(n_sep)
        )
    Lk, Lc = scalar_kernels(z, omega)
    L = Lk if kind == DefectKind.CRACK else Lc
    lamN = int_power(lam(z, omega), n_sep)
    return L * (1.0 - lamN), L * (1.0 + lamN)


# Kernel bundle -----------------------------------------------------------------------------------
class KernelBundle:
    """Lattice symbols and their square roots sampled on a contour, with
    the distinguished zeros `z_h`, `z_r`, `z_q`.
    """

    def __init__(self, omega: complex, grid: ContourGrid, validation: bool = False) -> None:
        """Evaluate the symbol functions on `grid`.

        :param omega: `<complex>` The frequency.
        :param grid: `<ContourGrid>` The sampling contour.
        :param validation: `<bool>` Admit real frequencies. Defaults to `False`.
        """
        self._omega: complex = complex(omega)
        self._grid: ContourGrid = grid
        self._zh, self._zr, self._zq = distinguished_zeros(self._omega, validation)
        z = grid.nodes
        self._H, self._R, self._Q = eval_HRQ(z, self._omega)
        self._h, self._r = branch_sqrt(z, self._omega)
        self._lam: np.ndarray = (self._r - self._h) / (self._r + self._h)
        if np.min(np.abs(self._Q)) == 0:
            raise errors.KernelDivisionByZeroError(
                "<{}>\nQ vanishes on the contour {!r}.".format(self.__class__.__name__, grid)
            )
        self._Lk, self._Lc = scalar_kernels(z, self._omega)
        for arr in (self._H, self._R, self._Q, self._h, self._r, self._lam, self._Lk, self._Lc):
            arr.setflags(write=False)
        self._lam_powers: dict[int, np.ndarray] = {}

    # Properties ---------------------------------------------------------------
    @property
    def omega(self) -> complex:
        """Access the frequency `<complex>`."""
        return self._omega

    @property
    def omega2(self) -> complex:
        """Access `ω²` `<complex>`."""
        return self._omega * self._omega

    @property
    def grid(self) -> ContourGrid:
        """Access the sampling contour `<ContourGrid>`."""
        return self._grid

    @property
    def z_h(self) -> complex:
        """Access the zero of `H` inside the unit circle `<complex>`."""
        return self._zh

    @property
    def z_r(self) -> complex:
        """Access the zero of `R` inside the unit circle `<complex>`."""
        return self._zr

    @property
    def z_q(self) -> complex:
        """Access the zero of `Q` inside the unit circle `<complex>`."""
        return self._zq

    @property
    def R_L(self) -> float:
        """Access `max(|z_h|, |z_r|)`, the inner radius of the kernel annulus `<float>`."""
        return max(abs(self._zh), abs(self._zr))

    @property
    def H(self) -> np.ndarray:
        """Access `H` on the contour `<ndarray[complex]>`."""
        return self._H

    @property
    def R(self) -> np.ndarray:
        """Access `R` on the contour `<ndarray[complex]>`."""
        return self._R

    @property
    def Q(self) -> np.ndarray:
        """Access `Q` on the contour `<ndarray[complex]>`."""
        return self._Q

    @property
    def h(self) -> np.ndarray:
        """Access `h = √H` on the contour `<ndarray[complex]>`."""
        return self._h

    @property
    def r(self) -> np.ndarray:
        """Access `r = √R` on the contour `<ndarray[complex]>`."""
        return self._r

    @property
    def lam(self) -> np.ndarray:
        """Access `λ` on the contour `<ndarray[complex]>`."""
        return self._lam

    @property
    def Lk(self) -> np.ndarray:
        """Access `ℒ_k = h/r` on the contour `<ndarray[complex]>`."""
        return self._Lk

    @property
    def Lc(self) -> np.ndarray:
        """Access `ℒ_c = Q/(rh)` on the contour `<ndarray[complex]>`."""
        return self._Lc

    # Derived samples ----------------------------------------------------------
    def lam_power(self, n: int) -> np.ndarray:
        """`λ^n` on the contour, cached per exponent `<ndarray[complex]>`."""
        if n not in self._lam_powers:
            self._lam_powers[n] = int_power(self._lam, n)
        return self._lam_powers[n]

    def scalar_kernel(self, kind: str) -> np.ndarray:
        """`ℒ_k` for cracks, `ℒ_c` for constraints `<ndarray[complex]>`."""
        return self._Lk if kind == DefectKind.CRACK else self._Lc

    def alpha_beta(self, n_sep: int, kind: str) -> tuple[np.ndarray, np.ndarray]:
        """`(α, β)` on the contour for separation `n_sep` and defect `kind`."""
        L = self.scalar_kernel(kind)
        lamN = self.lam_power(n_sep)
        return L * (1.0 - lamN), L * (1.0 + lamN)

    def kernel_matrix(self, n_sep: int, kind: str) -> np.ndarray:
        """The 2x2 kernel `ℒ[[1, λ^N], [λ^N, 1]]` on the contour, shape `(2, 2, K)`."""
        L = self.scalar_kernel(kind)
        lamN = self.lam_power(n_sep)
        return np.array([[L, L * lamN], [L * lamN, L]])

    def identity_residuals(self) -> dict[str, float]:
        """Max-norm residuals of the pointwise symbol identities `<dict>`."""
        lam_ = self._lam
        return {
            "lam_plus_inverse_minus_Q": float(np.max(np.abs(lam_ + 1.0 / lam_ - self._Q))),
            "lam_ratio_minus_h_over_r": float(
                np.max(np.abs((1.0 - lam_) / (1.0 + lam_) - self._h / self._r))
            ),
            "h_squared_minus_H": float(np.max(np.abs(self._h**2 - self._H))),
            "r_squared_minus_R": float(np.max(np.abs(self._r**2 - self._R))),
            "lam_modulus_excess": float(max(0.0, np.max(np.abs(lam_)) - 1.0)),
        }

    def to_frame(self, n_sep: int, kind: str) -> DataFrame:
        """Per-node table of `z, H, h, r, λ, α, β` `<DataFrame>`."""
        alpha, beta = self.alpha_beta(n_sep, kind)
        data = {}
        for name, arr in (
            ("z", self._grid.nodes), ("H", self._H), ("h", self._h), ("r", self._r),
            ("lam", self._lam), ("alpha", alpha), ("beta", beta),
        ):  # fmt: skip
            data[name + "_re"] = arr.real
            data[name + "_im"] = arr.imag
        return DataFrame(data)

    def __repr__(self) -> str:
        return "<%s (omega=%s, z_h=%s, z_r=%s, z_q=%s, grid=%r)>" % (
            self.__class__.__name__,
            self._omega,
            self._zh,
            self._zr,
            self._zq,
            self._grid,
        )
