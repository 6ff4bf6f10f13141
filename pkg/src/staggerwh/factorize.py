# -*- coding: UTF-8 -*-
from __future__ import annotations
from math import pi
import numpy as np
from staggerwh import errors
from staggerwh.logs import logger
from staggerwh.kernel import KernelBundle
from staggerwh.laurent import (
    ContourGrid,
    LaurentSeries,
    to_series,
    shift_split_minus,
    shift_split_plus,
)
from staggerwh.settings import DefaultContour, DefaultKernel

__all__ = [
    "FactorPair",
    "FactorSuite",
    "cauchy_factorize",
    "winding_number",
    "quadratic_sqrt_factors",
    "kernel_sqrt_factors",
    "chebyshev_tilde_factors",
    "build_factor_suite",
]


# Factor pair -------------------------------------------------------------------------------------
class FactorPair:
    """Multiplicative Wiener-Hopf factors `f = f₊ f₋` of a function sampled
    on a contour, stored as the additive halves of `log f`.

    The plus half holds indices `m >= 0` (analytic outside the contour),
    the minus half indices `m <= 0` (analytic inside). The constant of
    `log f` is shared equally between them.
    """

    def __init__(
        self,
        plus_log: LaurentSeries,
        minus_log: LaurentSeries,
        grid: ContourGrid,
        source: str = "f",
    ) -> None:
        self._plus_log: LaurentSeries = plus_log
        self._minus_log: LaurentSeries = minus_log
        self._grid: ContourGrid = grid
        self._source: str = source
        self._plus_samples: np.ndarray = np.exp(plus_log.to_samples(grid))
        self._minus_samples: np.ndarray = np.exp(minus_log.to_samples(grid))
        self._plus_samples.setflags(write=False)
        self._minus_samples.setflags(write=False)

    # Properties ---------------------------------------------------------------
    @property
    def source(self) -> str:
        """Access the label of the factored function `<str>`."""
        return self._source

    @property
    def grid(self) -> ContourGrid:
        """Access the contour `<ContourGrid>`."""
        return self._grid

    @property
    def plus_log(self) -> LaurentSeries:
        """Access the plus half of `log f` `<LaurentSeries>`."""
        return self._plus_log

    @property
    def minus_log(self) -> LaurentSeries:
        """Access the minus half of `log f` `<LaurentSeries>`."""
        return self._minus_log

    @property
    def plus_samples(self) -> np.ndarray:
        """Access `f₊` on the contour `<ndarray[complex]>`."""
        return self._plus_samples

    @property
    def minus_samples(self) -> np.ndarray:
        """Access `f₋` on the contour `<ndarray[complex]>`."""
        return self._minus_samples

    @property
    def plus_at_infinity(self) -> complex:
        """Access `f₊(∞)` `<complex>`."""
        return complex(np.exp(self._plus_log.coeff(0)))

    @property
    def minus_at_zero(self) -> complex:
        """Access `f₋(0)` `<complex>`."""
        return complex(np.exp(self._minus_log.coeff(0)))

    # Series -------------------------------------------------------------------
    @property
    def plus(self) -> LaurentSeries:
        """The plus factor as a series in `z^{-1}` `<LaurentSeries>`."""
        return self._factor_series(self._plus_samples, plus=True)

    @property
    def minus(self) -> LaurentSeries:
        """The minus factor as a series in `z` `<LaurentSeries>`."""
        return self._factor_series(self._minus_samples, plus=False)

    def reciprocal_plus(self) -> LaurentSeries:
        """`1/f₊` as a series in `z^{-1}` `<LaurentSeries>`."""
        return self._factor_series(1.0 / self._plus_samples, plus=True)

    def reciprocal_minus(self) -> LaurentSeries:
        """`1/f₋` as a series in `z` `<LaurentSeries>`."""
        return self._factor_series(1.0 / self._minus_samples, plus=False)

    def _factor_series(self, samples: np.ndarray, plus: bool) -> LaurentSeries:
        series = to_series(samples, self._grid)
        half = self._grid.n_samples // 2
        if plus:
            return series.window(0, half - 1)
        return series.window(-half, 0)

    # Evaluation ---------------------------------------------------------------
    def plus_at(self, z: complex | np.ndarray) -> complex | np.ndarray:
        """`f₊(z)` for `|z| >= ρ`."""
        return np.exp(self._plus_log.evaluate(z))

    def minus_at(self, z: complex | np.ndarray) -> complex | np.ndarray:
        """`f₋(z)` for `|z| <= ρ`."""
        return np.exp(self._minus_log.evaluate(z))

    def product_residual(self, source_samples: np.ndarray) -> float:
        """`max |f₊ f₋ / f - 1|` on the contour `<float>`."""
        ratio = self._plus_samples * self._minus_samples / np.asarray(source_samples)
        return float(np.max(np.abs(ratio - 1.0)))

    def tail_mass(self) -> float:
        """Relative coefficient mass of `log f` beyond `|m| >= K/4` `<float>`."""
        quarter = self._grid.n_samples // 4
        total = np.sum(np.abs(self._plus_log.coeffs)) + np.sum(np.abs(self._minus_log.coeffs))
        tail = np.sum(np.abs(self._plus_log.window(quarter, self._plus_log.m_hi).coeffs))
        tail += np.sum(np.abs(self._minus_log.window(self._minus_log.m_lo, -quarter).coeffs))
        return float(tail / total) if total else 0.0

    def __repr__(self) -> str:
        return "<%s (source='%s', grid=%r)>" % (
            self.__class__.__name__,
            self._source,
            self._grid,
        )


# Scalar factorization ----------------------------------------------------------------------------
def winding_number(samples: np.ndarray) -> int:
    """Index of the sampled closed curve around the origin `<int>`."""
    phase = np.unwrap(np.angle(np.append(samples, samples[0])))
    return int(round((phase[-1] - phase[0]) / (2.0 * pi)))


def cauchy_factorize(samples: np.ndarray, grid: ContourGrid, source: str = "f") -> FactorPair:
    """Factor `f = f₊ f₋` through the additive split of `log f`.

    :param samples: `<ndarray[complex]>` Values of `f` at the contour nodes.
    :param grid: `<ContourGrid>` The contour.
    :param source: `<str>` A label for diagnostics. Defaults to `'f'`.
    :raises VanishingSampleError: `f` vanishes at a node.
    :raises WindingNonZeroError: `f` has a nonzero index along the contour.
    """
    samples = np.asarray(samples, dtype=complex)
    modulus = np.abs(samples)
    if not np.all(np.isfinite(samples)) or np.any(modulus == 0):
        raise errors.VanishingSampleError(
            "<cauchy_factorize>\n'{}' vanishes or is not finite on {!r}.".format(source, grid)
        )
    index = winding_number(samples)
    if index != 0:
        raise errors.WindingNonZeroError(
            "<cauchy_factorize>\n'{}' has winding number {} on {!r}; the "
            "factorization requires index zero.".format(source, index, grid)
        )
    log_f = np.log(modulus) + 1j * np.unwrap(np.angle(samples))
    series = to_series(log_f, grid)
    half_const = 0.5 * series.coeff(0)
    plus_log = series.window(1, series.m_hi) + LaurentSeries([half_const], 0, grid)
    minus_log = series.window(series.m_lo, -1) + LaurentSeries([half_const], 0, grid)
    return FactorPair(plus_log, minus_log, grid, source)


# Closed forms ------------------------------------------------------------------------------------
def quadratic_sqrt_factors(z0: complex, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Factors of `√((1/z₀)(1 - z₀/z)(1 - z₀z))` for `|z₀| < |z| < 1/|z₀|`:
    `(1/z₀)^{1/4}(1 - z₀/z)^{1/2}` and `(1/z₀)^{1/4}(1 - z₀z)^{1/2}`.
    """
    const = (1.0 / complex(z0)) ** 0.25
    return const * np.sqrt(1.0 - z0 / z), const * np.sqrt(1.0 - z0 * z)


def kernel_sqrt_factors(bundle: KernelBundle) -> dict[str, np.ndarray]:
    """Closed-form factors `h±`, `r±` on the contour and the resulting
    `ℒ_k± = h±/r±` `<dict>`.
    """
    z = bundle.grid.nodes
    h_plus, h_minus = quadratic_sqrt_factors(bundle.z_h, z)
    r_plus, r_minus = quadratic_sqrt_factors(bundle.z_r, z)
    return {
        "h_plus": h_plus,
        "h_minus": h_minus,
        "r_plus": r_plus,
        "r_minus": r_minus,
        "Lk_plus": h_plus / r_plus,
        "Lk_minus": h_minus / r_minus,
    }


def _chebyshev_root(s: complex) -> complex:
    # root g of g + 1/g = s inside the unit circle
    disc = np.sqrt(complex(s) * s - 4.0)
    g = min(((s - disc) / 2.0, (s + disc) / 2.0), key=abs)
    if abs(abs(g) - 1.0) < DefaultKernel.UNIT_ROOT_TOL:
        raise errors.RootSelectionAmbiguousError(
            "<chebyshev_tilde_factors>\nBoth roots of g + 1/g = {} lie on the "
            "unit circle.".format(s)
        )
    return complex(g)


def _product_factors(shifts: list[float], omega2: complex, z: np.ndarray) -> tuple:
    # Π (H + shift) = Π (1/g)(1 - g/z)(1 - gz), split symmetrically
    plus = np.ones_like(z)
    minus = np.ones_like(z)
    for shift in shifts:
        g = _chebyshev_root(2.0 + shift - omega2)
        scale = g**-0.5
        plus = plus * scale * (1.0 - g / z)
        minus = minus * scale * (1.0 - g * z)
    return plus, minus


def chebyshev_tilde_factors(n_sep: int, bundle: KernelBundle) -> dict[str, np.ndarray]:
    """Factors of `α̃ = 1 - λ^N` and `β̃ = 1 + λ^N` from their product forms

    `α̃ = (h/r) 2^N Π_{j<=(N-1)/2} (H + 4 sin²(jπ/N)) / (R^{⌊(N-1)/2⌋} (1 + h/r)^N)`,
    `β̃ = 2^N Π_{j<=N/2} (H + 4 sin²((2j-1)π/2N)) / (R^{⌊N/2⌋} (1 + h/r)^N)`.

    The polynomial pieces factor in closed form; `h/r` and `1 + h/r` are
    factored numerically. Returns contour samples keyed `alpha_plus`,
    `alpha_minus`, `beta_plus`, `beta_minus`.
    """
    if n_sep < 1:
        raise errors.StaggerWHInvalidValueError(
            "<chebyshev_tilde_factors>\nExpects N >= 1, instead got {}.".format(n_sep)
        )
    grid = bundle.grid
    z = grid.nodes
    omega2 = bundle.omega2
    hr = cauchy_factorize(bundle.Lk, grid, "h/r")
    one_hr = cauchy_factorize(1.0 + bundle.Lk, grid, "1+h/r")
    r_plus = bundle.z_r**-0.5 * (1.0 - bundle.z_r / z)
    r_minus = bundle.z_r**-0.5 * (1.0 - bundle.z_r * z)
    n1, n2 = (n_sep - 1) // 2, n_sep // 2
    a_plus, a_minus = _product_factors(
        [4.0 * np.sin(j * pi / n_sep) ** 2 for j in range(1, n1 + 1)], omega2, z
    )
    b_plus, b_minus = _product_factors(
        [4.0 * np.sin((2 * j - 1) * pi / (2 * n_sep)) ** 2 for j in range(1, n2 + 1)],
        omega2,
        z,
    )
    two = 2.0 ** (0.5 * n_sep)
    op_plus = one_hr.plus_samples**n_sep
    op_minus = one_hr.minus_samples**n_sep
    return {
        "alpha_plus": hr.plus_samples * two * a_plus / (r_plus**n1 * op_plus),
        "alpha_minus": hr.minus_samples * two * a_minus / (r_minus**n1 * op_minus),
        "beta_plus": two * b_plus / (r_plus**n2 * op_plus),
        "beta_minus": two * b_minus / (r_minus**n2 * op_minus),
    }


# Factor suite ------------------------------------------------------------------------------------
class FactorSuite:
    """Factors of the diagonal kernel entries `α`, `β` with the series,
    shift-splits and point values used by the reduced systems and the
    field synthesis.
    """

    def __init__(self, bundle: KernelBundle, n_sep: int, kind: str, zP: complex) -> None:
        """Factor `α` and `β` on the contour of `bundle`.

        :param bundle: `<KernelBundle>` Kernel samples on the contour.
        :param n_sep: `<int>` The vertical separation N.
        :param kind: `<str>` The defect kind.
        :param zP: `<complex>` The incident transform pole.
        """
        self._bundle: KernelBundle = bundle
        self._grid: ContourGrid = bundle.grid
        self._n_sep: int = n_sep
        self._kind: str = kind
        self._zP: complex = complex(zP)
        alpha, beta = bundle.alpha_beta(n_sep, kind)
        self._alpha_samples: np.ndarray = alpha
        self._beta_samples: np.ndarray = beta
        self._alpha: FactorPair = cauchy_factorize(alpha, self._grid, "alpha")
        self._beta: FactorPair = cauchy_factorize(beta, self._grid, "beta")
        # Samples
        self._am = self._alpha.minus_samples
        self._ap = self._alpha.plus_samples
        self._bm = self._beta.minus_samples
        self._bp = self._beta.plus_samples
        # Series: (1/α)₋, (1/β)₋, α₊, β₊
        self._f_minus: LaurentSeries = self._alpha.reciprocal_minus()
        self._g_minus: LaurentSeries = self._beta.reciprocal_minus()
        self._F_plus: LaurentSeries = self._alpha.plus
        self._G_plus: LaurentSeries = self._beta.plus
        # Point values
        zq = bundle.z_q
        self._am_P = complex(self._alpha.minus_at(self._zP))
        self._bm_P = complex(self._beta.minus_at(self._zP))
        self._am_0 = self._alpha.minus_at_zero
        self._bm_0 = self._beta.minus_at_zero
        self._ap_inf = self._alpha.plus_at_infinity
        self._bp_inf = self._beta.plus_at_infinity
        self._am_q = complex(self._alpha.minus_at(zq))
        self._bm_q = complex(self._beta.minus_at(zq))
        # Caches
        self._minus_splits: dict[int, tuple] = {}
        self._plus_splits: dict[int, tuple] = {}
        self._differences: dict[int, tuple] = {}

    # Properties ---------------------------------------------------------------
    @property
    def bundle(self) -> KernelBundle:
        """Access the kernel bundle `<KernelBundle>`."""
        return self._bundle

    @property
    def grid(self) -> ContourGrid:
        """Access the contour `<ContourGrid>`."""
        return self._grid

    @property
    def n_sep(self) -> int:
        """Access the separation N `<int>`."""
        return self._n_sep

    @property
    def kind(self) -> str:
        """Access the defect kind `<str>`."""
        return self._kind

    @property
    def alpha(self) -> FactorPair:
        """Access the factors of `α` `<FactorPair>`."""
        return self._alpha

    @property
    def beta(self) -> FactorPair:
        """Access the factors of `β` `<FactorPair>`."""
        return self._beta

    @property
    def alpha_samples(self) -> np.ndarray:
        """Access `α` on the contour `<ndarray[complex]>`."""
        return self._alpha_samples

    @property
    def beta_samples(self) -> np.ndarray:
        """Access `β` on the contour `<ndarray[complex]>`."""
        return self._beta_samples

    @property
    def am(self) -> np.ndarray:
        """Access `α₋` on the contour `<ndarray[complex]>`."""
        return self._am

    @property
    def ap(self) -> np.ndarray:
        """Access `α₊` on the contour `<ndarray[complex]>`."""
        return self._ap

    @property
    def bm(self) -> np.ndarray:
        """Access `β₋` on the contour `<ndarray[complex]>`."""
        return self._bm

    @property
    def bp(self) -> np.ndarray:
        """Access `β₊` on the contour `<ndarray[complex]>`."""
        return self._bp

    @property
    def f_minus(self) -> LaurentSeries:
        """Access the series of `(1/α)₋` `<LaurentSeries>`."""
        return self._f_minus

    @property
    def g_minus(self) -> LaurentSeries:
        """Access the series of `(1/β)₋` `<LaurentSeries>`."""
        return self._g_minus

    @property
    def F_plus(self) -> LaurentSeries:
        """Access the series of `α₊` `<LaurentSeries>`."""
        return self._F_plus

    @property
    def G_plus(self) -> LaurentSeries:
        """Access the series of `β₊` `<LaurentSeries>`."""
        return self._G_plus

    @property
    def am_P(self) -> complex:
        """Access `α₋(z_P)` `<complex>`."""
        return self._am_P

    @property
    def bm_P(self) -> complex:
        """Access `β₋(z_P)` `<complex>`."""
        return self._bm_P

    @property
    def am_0(self) -> complex:
        """Access `α₋(0)` `<complex>`."""
        return self._am_0

    @property
    def bm_0(self) -> complex:
        """Access `β₋(0)` `<complex>`."""
        return self._bm_0

    @property
    def ap_inf(self) -> complex:
        """Access `α₊(∞)` `<complex>`."""
        return self._ap_inf

    @property
    def bp_inf(self) -> complex:
        """Access `β₊(∞)` `<complex>`."""
        return self._bp_inf

    @property
    def am_q(self) -> complex:
        """Access `α₋(z_q)` `<complex>`."""
        return self._am_q

    @property
    def bm_q(self) -> complex:
        """Access `β₋(z_q)` `<complex>`."""
        return self._bm_q

    # Shift-splits -------------------------------------------------------------
    def shift_minus(self, x: int) -> tuple[LaurentSeries, LaurentSeries, LaurentSeries, LaurentSeries]:
        """`(φ_x⁺, φ_x⁻, ψ_x⁺, ψ_x⁻)` from `(1/α)₋ z^{-x}` and `(1/β)₋ z^{-x}`, `x >= 0`."""
        if x not in self._minus_splits:
            phi_plus, phi_minus = shift_split_minus(self._f_minus, x)
            psi_plus, psi_minus = shift_split_minus(self._g_minus, x)
            self._minus_splits[x] = (phi_plus, phi_minus, psi_plus, psi_minus)
        return self._minus_splits[x]

    def shift_plus(self, m: int) -> tuple[LaurentSeries, LaurentSeries, LaurentSeries, LaurentSeries]:
        """`(Φ⁺, Φ⁻, Ψ⁺, Ψ⁻)` from `α₊ z^{m}` and `β₊ z^{m}`, `m >= 0`."""
        if m not in self._plus_splits:
            Phi_plus, Phi_minus = shift_split_plus(self._F_plus, m)
            Psi_plus, Psi_minus = shift_split_plus(self._G_plus, m)
            self._plus_splits[m] = (Phi_plus, Phi_minus, Psi_plus, Psi_minus)
        return self._plus_splits[m]

    def difference_split(self, x: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Split of `S_x = diag((1/α)₋ - α₊, (1/β)₋ - β₊) z^{-x}`.

        Returns the minus half and the plus half on the contour, both of
        shape `(2, K)`, and the minus half at `z_q`, shape `(2,)`.
        """
        if x in self._differences:
            return self._differences[x]
        z = self._grid.nodes
        zq = self._bundle.z_q
        if x >= 0:
            phi_plus, phi_minus, psi_plus, psi_minus = self.shift_minus(x)
            zx = z ** (-float(x))
            minus = np.array([phi_minus.to_samples(self._grid), psi_minus.to_samples(self._grid)])
            plus = np.array([
                phi_plus.to_samples(self._grid) - self._ap * zx,
                psi_plus.to_samples(self._grid) - self._bp * zx,
            ])  # fmt: skip
            at_zq = np.array([phi_minus.evaluate(zq), psi_minus.evaluate(zq)])
        else:
            m = -x
            Phi_plus, Phi_minus, Psi_plus, Psi_minus = self.shift_plus(m)
            zm = z ** float(m)
            minus = np.array([
                zm / self._am - Phi_minus.to_samples(self._grid),
                zm / self._bm - Psi_minus.to_samples(self._grid),
            ])  # fmt: skip
            plus = np.array([-Phi_plus.to_samples(self._grid), -Psi_plus.to_samples(self._grid)])
            zqm = zq**m
            at_zq = np.array([
                zqm / self._am_q - Phi_minus.evaluate(zq),
                zqm / self._bm_q - Psi_minus.evaluate(zq),
            ])  # fmt: skip
        self._differences[x] = (minus, plus, at_zq)
        return self._differences[x]

    # Diagnostics --------------------------------------------------------------
    def product_residuals(self) -> dict[str, float]:
        """`max |f₊ f₋ / f - 1|` for `α` and `β` `<dict>`."""
        return {
            "alpha": self._alpha.product_residual(self._alpha_samples),
            "beta": self._beta.product_residual(self._beta_samples),
        }

    def tail_mass(self) -> float:
        """Largest relative tail mass of `log α`, `log β` `<float>`."""
        return max(self._alpha.tail_mass(), self._beta.tail_mass())

    def __repr__(self) -> str:
        return "<%s (kind='%s', N=%d, grid=%r)>" % (
            self.__class__.__name__,
            self._kind,
            self._n_sep,
            self._grid,
        )


def build_factor_suite(bundle: KernelBundle, n_sep: int, kind: str, zP: complex) -> FactorSuite:
    """Factor `α`, `β` for the given separation and defect kind, logging
    the product residuals.
    """
    suite = FactorSuite(bundle, n_sep, kind, zP)
    residuals = suite.product_residuals()
    logger.debug(
        "Factor suite %r: product residuals alpha=%.2e beta=%.2e",
        suite,
        residuals["alpha"],
        residuals["beta"],
    )
    return suite


def required_samples(m_offset: int, samples: int | None = None) -> int:
    """Smallest admissible power-of-two sample count `<int>`."""
    k = int(samples or DefaultContour.SAMPLES)
    floor = max(DefaultContour.MIN_SAMPLES, DefaultContour.SAMPLES_PER_OFFSET * abs(m_offset))
    while k < floor:
        k *= 2
    return k
