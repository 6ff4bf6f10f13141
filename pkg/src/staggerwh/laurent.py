# -*- coding: UTF-8 -*-
from __future__ import annotations
from typing import Callable
import numpy as np
from numpy.polynomial import polynomial as npoly
from pandas import DataFrame
from staggerwh import errors
from staggerwh.settings import DefaultContour

__all__ = [
    "ContourGrid",
    "LaurentSeries",
    "sample",
    "to_series",
    "split_additive",
    "shift_split_minus",
    "shift_split_plus",
    "project_D",
    "coeff",
    "contour_bounds",
    "choose_contour",
]


# Contour -----------------------------------------------------------------------------------------
class ContourGrid:
    """Equispaced nodes `z_k = ρ exp(2πik/K)` on a circle inside the annulus."""

    def __init__(self, radius: float, n_samples: int = DefaultContour.SAMPLES) -> None:
        """The sampling contour.

        :param radius: `<float>` The contour radius `ρ > 0`.
        :param n_samples: `<int>` The number of nodes `K`, a power of two
            no smaller than `DefaultContour.MIN_SAMPLES`.
        """
        try:
            radius = float(radius)
            n_samples = int(n_samples)
        except Exception as err:
            raise errors.InvalidContourError(
                "<{}>\nInvalid contour: radius={}, n_samples={}.".format(
                    self.__class__.__name__, repr(radius), repr(n_samples)
                )
            ) from err
        if not np.isfinite(radius) or radius <= 0:
            raise errors.InvalidContourError(
                "<{}>\nThe contour radius must be positive and finite, "
                "instead got {}.".format(self.__class__.__name__, radius)
            )
        if n_samples < DefaultContour.MIN_SAMPLES or n_samples & (n_samples - 1):
            raise errors.InvalidContourError(
                "<{}>\nThe number of samples must be a power of two >= {}, "
                "instead got {}.".format(
                    self.__class__.__name__, DefaultContour.MIN_SAMPLES, n_samples
                )
            )
        self._radius: float = radius
        self._n_samples: int = n_samples
        k = np.arange(n_samples)
        self._nodes: np.ndarray = radius * np.exp(2j * np.pi * k / n_samples)
        self._nodes.setflags(write=False)

    # Properties ---------------------------------------------------------------
    @property
    def radius(self) -> float:
        """Access the contour radius ρ `<float>`."""
        return self._radius

    @property
    def n_samples(self) -> int:
        """Access the number of nodes K `<int>`."""
        return self._n_samples

    @property
    def nodes(self) -> np.ndarray:
        """Access the read-only node array `<ndarray[complex]>`."""
        return self._nodes

    @property
    def indices(self) -> np.ndarray:
        """The coefficient index range `[-K/2, K/2)` `<ndarray[int]>`."""
        half = self._n_samples // 2
        return np.arange(-half, half)

    # Special methods ----------------------------------------------------------
    def __repr__(self) -> str:
        return "<%s (radius=%.12g, n_samples=%d)>" % (
            self.__class__.__name__,
            self._radius,
            self._n_samples,
        )

    def __eq__(self, __o: object) -> bool:
        return (
            isinstance(__o, ContourGrid)
            and self._radius == __o._radius
            and self._n_samples == __o._n_samples
        )

    def __hash__(self) -> int:
        return hash((self._radius, self._n_samples))


# Laurent series ----------------------------------------------------------------------------------
class LaurentSeries:
    """Coefficients `c_m` of `f(z) = Σ c_m z^{-m}` for `m` in `[m_lo, m_hi]`.

    Coefficients are stored without radius weights, so series computed on
    different contours are directly comparable.
    """

    def __init__(
        self,
        coeffs: np.ndarray | list[complex],
        m_lo: int = 0,
        grid: ContourGrid | None = None,
    ) -> None:
        """Laurent series in powers of `z^{-1}`.

        :param coeffs: `<ndarray/list>` Coefficients `c_{m_lo}, ..., c_{m_hi}`.
        :param m_lo: `<int>` Index of the first coefficient. Defaults to `0`.
        :param grid: `<ContourGrid/None>` The contour the series was computed on.
        """
        self._coeffs: np.ndarray = np.array(coeffs, dtype=complex).reshape(-1)
        self._coeffs.setflags(write=False)
        self._m_lo: int = int(m_lo)
        self._grid: ContourGrid | None = grid

    @classmethod
    def zero(cls, grid: ContourGrid | None = None) -> LaurentSeries:
        """(Class method) The zero series."""
        return cls([], 0, grid)

    @classmethod
    def from_dict(cls, coeffs: dict[int, complex], grid: ContourGrid | None = None) -> LaurentSeries:
        """(Class method) Build from an `{index: coefficient}` mapping."""
        if not coeffs:
            return cls.zero(grid)
        lo, hi = min(coeffs), max(coeffs)
        data = np.zeros(hi - lo + 1, dtype=complex)
        for m, c in coeffs.items():
            data[m - lo] = c
        return cls(data, lo, grid)

    # Properties ---------------------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        """Access the read-only coefficient array `<ndarray[complex]>`."""
        return self._coeffs

    @property
    def m_lo(self) -> int:
        """Access the lowest index `<int>`."""
        return self._m_lo

    @property
    def m_hi(self) -> int:
        """Access the highest index (`m_lo - 1` when empty) `<int>`."""
        return self._m_lo + self._coeffs.size - 1

    @property
    def indices(self) -> np.ndarray:
        """Access the index array `<ndarray[int]>`."""
        return np.arange(self._m_lo, self._m_lo + self._coeffs.size)

    @property
    def grid(self) -> ContourGrid | None:
        """Access the contour the series was computed on `<ContourGrid/None>`."""
        return self._grid

    # Coefficients -------------------------------------------------------------
    def coeff(self, mu: int) -> complex:
        """The coefficient `c_μ`, zero outside the stored range `<complex>`."""
        k = int(mu) - self._m_lo
        if 0 <= k < self._coeffs.size:
            return complex(self._coeffs[k])
        return 0j

    def window(self, lo: int, hi: int) -> LaurentSeries:
        """Series keeping only indices in `[lo, hi]` `<LaurentSeries>`."""
        lo = max(lo, self._m_lo)
        hi = min(hi, self.m_hi)
        if hi < lo:
            return LaurentSeries.zero(self._grid)
        return LaurentSeries(
            self._coeffs[lo - self._m_lo : hi - self._m_lo + 1], lo, self._grid
        )

    def shifted(self, m: int) -> LaurentSeries:
        """The product `f(z)·z^{-m}`, i.e. every index moved by `m`."""
        return LaurentSeries(self._coeffs, self._m_lo + int(m), self._grid)

    def at_infinity(self) -> complex:
        """The limit `z → ∞` of a plus series (its constant term) `<complex>`."""
        if self._coeffs.size and self._m_lo < 0 and np.any(self._coeffs[: -self._m_lo] != 0):
            raise errors.LaurentError(
                "<{}>\nSeries with negative indices has no limit at infinity.".format(
                    self.__class__.__name__
                )
            )
        return self.coeff(0)

    def at_zero(self) -> complex:
        """The limit `z → 0` of a minus series (its constant term) `<complex>`."""
        if self.m_hi > 0 and np.any(self._coeffs[max(0, 1 - self._m_lo) :] != 0):
            raise errors.LaurentError(
                "<{}>\nSeries with positive indices has no limit at zero.".format(
                    self.__class__.__name__
                )
            )
        return self.coeff(0)

    # Evaluation ---------------------------------------------------------------
    def evaluate(self, z: complex | np.ndarray) -> complex | np.ndarray:
        """Evaluate the series at arbitrary points by Horner sums of its
        `z^{-1}` half and its `z` half.
        """
        z_arr = np.asarray(z, dtype=complex)
        out = np.zeros(z_arr.shape, dtype=complex)
        if self._coeffs.size:
            idx = self.indices
            at_zero = z_arr == 0
            at_inf = np.isinf(z_arr)
            pos = self._coeffs[idx >= 0]
            if pos.size:
                # c_{p0} z^{-p0} + ... with p0 the first nonnegative index
                p0 = int(idx[idx >= 0][0])
                with np.errstate(divide="ignore", invalid="ignore"):
                    w = np.where(at_zero, 0.0, 1.0 / np.where(at_zero, 1.0, z_arr))
                    part = npoly.polyval(w, pos) * (w**p0 if p0 else 1.0)
                # z = 0 is admissible only when the constant is the sole plus term
                part = np.where(at_zero, self.coeff(0) if pos.size == 1 and p0 == 0 else np.inf, part)
                out = out + part
            neg = self._coeffs[idx < 0][::-1]
            if neg.size:
                # c_{-1} z + c_{-2} z^2 + ... with the highest index -q0
                q0 = -int(idx[idx < 0][-1])
                finite = np.where(at_inf, 0.0, z_arr)
                part = npoly.polyval(finite, neg) * finite**q0
                out = out + np.where(at_inf, np.inf, part)
        if np.ndim(z) == 0:
            return complex(out)
        return out

    def to_samples(self, grid: ContourGrid | None = None) -> np.ndarray:
        """Values at the nodes of `grid` (own grid by default) by one FFT."""
        grid = grid or self._grid
        if grid is None:
            raise errors.LaurentError(
                "<{}>\nNo contour to sample the series on.".format(self.__class__.__name__)
            )
        k = grid.n_samples
        slots = np.zeros(k, dtype=complex)
        if self._coeffs.size:
            idx = self.indices
            np.add.at(slots, idx % k, self._coeffs * grid.radius ** (-idx.astype(float)))
        return np.fft.fft(slots)

    # Conversion ---------------------------------------------------------------
    def to_frame(self) -> DataFrame:
        """Coefficient table with columns `m`, `re`, `im` `<DataFrame>`."""
        return DataFrame(
            {"m": self.indices, "re": self._coeffs.real, "im": self._coeffs.imag}
        )

    def to_dict(self) -> dict[int, complex]:
        """Mapping `{index: coefficient}` `<dict>`."""
        return {int(m): complex(c) for m, c in zip(self.indices, self._coeffs)}

    # Arithmetic ---------------------------------------------------------------
    def _combine(self, other: LaurentSeries, sign: float) -> LaurentSeries:
        if not self._coeffs.size:
            return LaurentSeries(sign * other._coeffs, other._m_lo, self._grid or other._grid)
        if not other._coeffs.size:
            return self
        lo = min(self._m_lo, other._m_lo)
        hi = max(self.m_hi, other.m_hi)
        data = np.zeros(hi - lo + 1, dtype=complex)
        data[self._m_lo - lo : self.m_hi - lo + 1] += self._coeffs
        data[other._m_lo - lo : other.m_hi - lo + 1] += sign * other._coeffs
        return LaurentSeries(data, lo, self._grid or other._grid)

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self._combine(other, 1.0)

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self._combine(other, -1.0)

    def __mul__(self, scalar: complex) -> LaurentSeries:
        if isinstance(scalar, LaurentSeries):
            return NotImplemented
        return LaurentSeries(self._coeffs * complex(scalar), self._m_lo, self._grid)

    __rmul__ = __mul__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(-self._coeffs, self._m_lo, self._grid)

    def __len__(self) -> int:
        return self._coeffs.size

    def __repr__(self) -> str:
        return "<%s (m_lo=%d, m_hi=%d, grid=%r)>" % (
            self.__class__.__name__,
            self._m_lo,
            self.m_hi,
            self._grid,
        )


# Operations --------------------------------------------------------------------------------------
def sample(fn: Callable[[np.ndarray], np.ndarray] | complex, grid: ContourGrid) -> np.ndarray:
    """Evaluate `fn` at the contour nodes, broadcasting constants.

    :raises NonFiniteSampleError: Any sampled value is not finite.
    """
    values = fn(grid.nodes) if callable(fn) else fn
    values = np.broadcast_to(np.asarray(values, dtype=complex), grid.nodes.shape).copy()
    if not np.all(np.isfinite(values)):
        bad = int(np.count_nonzero(~np.isfinite(values)))
        raise errors.NonFiniteSampleError(
            "<sample>\n{} of {} sampled values are not finite on {!r}.".format(
                bad, values.size, grid
            )
        )
    return values


def to_series(samples: np.ndarray, grid: ContourGrid) -> LaurentSeries:
    """Coefficients `c_m`, `m ∈ [-K/2, K/2)`, of the function sampled on `grid`,
    with the radius weights removed.
    """
    samples = np.asarray(samples, dtype=complex)
    if samples.shape != (grid.n_samples,):
        raise errors.LaurentError(
            "<to_series>\nExpects {} samples, instead got shape {}.".format(
                grid.n_samples, samples.shape
            )
        )
    raw = np.fft.ifft(samples)
    m = grid.indices
    return LaurentSeries(raw[m % grid.n_samples] * grid.radius ** m.astype(float), m[0], grid)


def split_additive(f: LaurentSeries) -> tuple[LaurentSeries, LaurentSeries]:
    """Split into the plus part (`m >= 0`) and the minus part (`m < 0`)."""
    return f.window(0, max(f.m_hi, 0)), f.window(min(f.m_lo, -1), -1)


def shift_split_minus(fminus: LaurentSeries, m: int) -> tuple[LaurentSeries, LaurentSeries]:
    """Split `f₋(z) z^{-m}` for a minus-type factor `f₋ = Σ_{j<=0} f_j z^{-j}`.

    The plus half is the polynomial `f₀ z^{-m} + f₋₁ z^{-m+1} + ... + f₋ₘ`.
    """
    if m < 0:
        raise errors.LaurentError("<shift_split_minus>\nExpects m >= 0, got {}.".format(m))
    if fminus.m_hi > 0 and fminus.window(1, fminus.m_hi).coeffs.any():
        raise errors.LaurentError(
            "<shift_split_minus>\nExpects a minus-type series with indices <= 0."
        )
    return split_additive(fminus.window(fminus.m_lo, 0).shifted(m))


def shift_split_plus(Fplus: LaurentSeries, m: int) -> tuple[LaurentSeries, LaurentSeries]:
    """Split `F₊(z) z^{m}` for a plus-type factor `F₊ = Σ_{j>=0} F_j z^{-j}`.

    The minus half is the polynomial `F₀ z^{m} + F₁ z^{m-1} + ... + F_{m-1} z`.
    """
    if m < 0:
        raise errors.LaurentError("<shift_split_plus>\nExpects m >= 0, got {}.".format(m))
    if Fplus.m_lo < 0 and Fplus.window(Fplus.m_lo, -1).coeffs.any():
        raise errors.LaurentError(
            "<shift_split_plus>\nExpects a plus-type series with indices >= 0."
        )
    return split_additive(Fplus.window(0, Fplus.m_hi).shifted(-m))


def project_D(f: LaurentSeries, d_lo: int, d_hi: int) -> LaurentSeries:
    """Keep exactly the coefficients with index in the segment `[d_lo, d_hi]`."""
    return f.window(d_lo, d_hi)


def coeff(f: LaurentSeries, mu: int) -> complex:
    """The coefficient `c_μ` of `f`, zero outside its range."""
    return f.coeff(mu)


def contour_bounds(
    r_plus: float,
    r_minus: float,
    r_lattice: float,
    zP_modulus: float,
    eps: float = DefaultContour.POLE_MARGIN,
) -> tuple[float, float]:
    """The admissible radius interval `(max(R₊, R_L, |z_P| + ε), min(R₋, 1/R_L))`.

    :raises EmptyAnnulusError: The bounds leave no admissible radius.
    """
    lo = max(r_plus, r_lattice, zP_modulus + eps)
    hi = min(r_minus, 1.0 / r_lattice)
    if lo >= hi:
        raise errors.EmptyAnnulusError(
            "<contour_bounds>\nNo admissible contour radius: lower bound "
            "{:.12g} >= upper bound {:.12g}.".format(lo, hi)
        )
    return float(lo), float(hi)


def choose_contour(
    r_plus: float,
    r_minus: float,
    r_lattice: float,
    zP_modulus: float,
    radius: float | None = None,
    eps: float = DefaultContour.POLE_MARGIN,
) -> float:
    """Pick the contour radius inside the usable annulus: the geometric mean
    of `contour_bounds`, or the requested `radius` once validated.

    :raises EmptyAnnulusError: The bounds leave no admissible radius.
    :raises InvalidContourError: The requested radius falls outside the bounds.
    """
    lo, hi = contour_bounds(r_plus, r_minus, r_lattice, zP_modulus, eps)
    if radius is None:
        return float(np.sqrt(lo * hi))
    if not lo < radius < hi:
        raise errors.InvalidContourError(
            "<choose_contour>\nRequested radius {:.12g} lies outside the "
            "admissible interval ({:.12g}, {:.12g}).".format(radius, lo, hi)
        )
    return float(radius)
