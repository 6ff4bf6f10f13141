# -*- coding: UTF-8 -*-
from __future__ import annotations
from math import pi, radians, degrees
from typing import Any
import numpy as np
from staggerwh import errors
from staggerwh.logs import logger
from staggerwh.settings import DefectKind, DefaultDispersion

__all__ = [
    "ScatteringScenario",
    "WaveVector",
    "solve_dispersion",
    "incident_field",
    "annulus_radii",
    "defect_sites",
]


# Scenario ----------------------------------------------------------------------------------------
class ScatteringScenario:
    """Physical parameters of one scattering run: frequency, incidence,
    amplitude and the geometry of the defect pair.
    """

    def __init__(
        self,
        omega: complex,
        theta: float,
        amplitude: complex = 1.0,
        kind: str = DefectKind.CRACK,
        n_sep: int = 1,
        m_offset: int = 0,
        validation: bool = False,
    ) -> None:
        """The parameters of a scattering run on the square lattice.

        :param omega: `<complex>` Nondimensional frequency `ω = ω₁ + iω₂`.
        :param theta: `<float>` Incidence angle in radians, in `(-π, π]`.
        :param amplitude: `<complex>` Incident amplitude `A`. Defaults to `1`.
        :param kind: `<str>` Either `'crack'` or `'constraint'`. Defaults to `'crack'`.
        :param n_sep: `<int>` Vertical separation `N ≥ 1`. Defaults to `1`.
        :param m_offset: `<int>` Horizontal stagger `M` (any sign). Defaults to `0`.
        :param validation: `<bool>` Accept a real frequency (unit tests only). Defaults to `False`.
        """
        try:
            self._omega: complex = complex(omega)
            self._theta: float = float(theta)
            self._amplitude: complex = complex(amplitude)
        except Exception as err:
            raise errors.InvalidScenarioError(
                "<{}>\nInvalid numeric parameters: omega={}, theta={}, "
                "amplitude={}.".format(
                    self.__class__.__name__, repr(omega), repr(theta), repr(amplitude)
                )
            ) from err
        if kind not in DefectKind.ALL:
            raise errors.InvalidScenarioError(
                "<{}>\nInvalid defect kind {}, available options: {}.".format(
                    self.__class__.__name__, repr(kind), sorted(DefectKind.ALL)
                )
            )
        self._kind: str = kind
        if int(n_sep) != n_sep or int(m_offset) != m_offset:
            raise errors.InvalidScenarioError(
                "<{}>\nN and M must be integers, instead got N={}, M={}.".format(
                    self.__class__.__name__, repr(n_sep), repr(m_offset)
                )
            )
        self._n_sep: int = int(n_sep)
        self._m_offset: int = int(m_offset)
        self._validation: bool = bool(validation)
        self._validate()

    def _validate(self) -> None:
        if self._n_sep < 1:
            raise errors.InvalidScenarioError(
                "<{}>\nThe separation N must be >= 1, instead got {}.".format(
                    self.__class__.__name__, self._n_sep
                )
            )
        if not -pi < self._theta <= pi:
            raise errors.InvalidScenarioError(
                "<{}>\nThe incidence angle must lie in (-pi, pi], "
                "instead got {}.".format(self.__class__.__name__, self._theta)
            )
        if not np.isfinite(self._omega) or not np.isfinite(self._amplitude):
            raise errors.InvalidScenarioError(
                "<{}>\nFrequency and amplitude must be finite.".format(
                    self.__class__.__name__
                )
            )
        if self._omega.imag < 0 or (self._omega.imag == 0 and not self._validation):
            raise errors.InvalidScenarioError(
                "<{}>\nThe frequency must carry damping Im(omega) > 0, instead "
                "got {}. Real frequencies are accepted in validation mode "
                "only.".format(self.__class__.__name__, self._omega)
            )

    @classmethod
    def from_degrees(
        cls,
        omega: complex,
        theta_deg: float,
        amplitude: complex = 1.0,
        kind: str = DefectKind.CRACK,
        n_sep: int = 1,
        m_offset: int = 0,
        validation: bool = False,
    ) -> ScatteringScenario:
        """(Class method) Create a scenario with the incidence angle in degrees."""
        return cls(
            omega, radians(theta_deg), amplitude, kind, n_sep, m_offset, validation
        )

    # Properties ---------------------------------------------------------------
    @property
    def omega(self) -> complex:
        """Access the complex frequency `<complex>`."""
        return self._omega

    @property
    def theta(self) -> float:
        """Access the incidence angle in radians `<float>`."""
        return self._theta

    @property
    def amplitude(self) -> complex:
        """Access the incident amplitude `<complex>`."""
        return self._amplitude

    @property
    def kind(self) -> str:
        """Access the defect kind, `'crack'` or `'constraint'` `<str>`."""
        return self._kind

    @property
    def is_crack(self) -> bool:
        """Whether the defects are broken bonds `<bool>`."""
        return self._kind == DefectKind.CRACK

    @property
    def n_sep(self) -> int:
        """Access the vertical separation N `<int>`."""
        return self._n_sep

    @property
    def m_offset(self) -> int:
        """Access the stagger M `<int>`."""
        return self._m_offset

    @property
    def validation(self) -> bool:
        """Whether real frequencies are admitted `<bool>`."""
        return self._validation

    @property
    def segment(self) -> range:
        """The stagger segment `𝔻`: `[0, M)` for M > 0, `[M, -1]` for M < 0 `<range>`."""
        if self._m_offset >= 0:
            return range(0, self._m_offset)
        return range(self._m_offset, 0)

    @property
    def stagger_sign(self) -> int:
        """The sign of M as `+1`, `-1` or `0` `<int>`."""
        return (self._m_offset > 0) - (self._m_offset < 0)

    # Derived scenarios --------------------------------------------------------
    def with_amplitude(self, amplitude: complex) -> ScatteringScenario:
        """Copy of the scenario with another incident amplitude."""
        return ScatteringScenario(
            self._omega, self._theta, amplitude, self._kind,
            self._n_sep, self._m_offset, self._validation,
        )  # fmt: skip

    def with_offset(self, m_offset: int) -> ScatteringScenario:
        """Copy of the scenario with another stagger."""
        return ScatteringScenario(
            self._omega, self._theta, self._amplitude, self._kind,
            self._n_sep, m_offset, self._validation,
        )  # fmt: skip

    def with_separation(self, n_sep: int) -> ScatteringScenario:
        """Copy of the scenario with another vertical separation."""
        return ScatteringScenario(
            self._omega, self._theta, self._amplitude, self._kind,
            n_sep, self._m_offset, self._validation,
        )  # fmt: skip

    def flipped(self, wave: WaveVector) -> ScatteringScenario:
        """The mirrored scenario obtained by reflecting the lattice across the
        midline of the defect pair: `Θ ↦ -Θ`, `M ↦ -M`, with the amplitude
        rephased so the incident waves coincide site by site.

        :param wave: `<WaveVector>` The wave vector of this scenario.
        """
        shift = self._n_sep - 1 if self.is_crack else self._n_sep
        amplitude = self._amplitude * np.exp(
            1j * (wave.kx * self._m_offset + wave.ky * shift)
        )
        theta = -self._theta if self._theta != pi else pi
        return ScatteringScenario(
            self._omega, theta, complex(amplitude), self._kind,
            self._n_sep, -self._m_offset, self._validation,
        )  # fmt: skip

    def to_dict(self) -> dict[str, Any]:
        """Plain representation for manifests `<dict>`."""
        return {
            "omega_re": self._omega.real,
            "omega_im": self._omega.imag,
            "theta_deg": degrees(self._theta),
            "amplitude_re": self._amplitude.real,
            "amplitude_im": self._amplitude.imag,
            "kind": self._kind,
            "N": self._n_sep,
            "M": self._m_offset,
            "validation": self._validation,
        }

    # Special methods ----------------------------------------------------------
    def __repr__(self) -> str:
        return "<%s (kind='%s', omega=%s, theta=%.6g, N=%d, M=%d, A=%s)>" % (
            self.__class__.__name__,
            self._kind,
            self._omega,
            self._theta,
            self._n_sep,
            self._m_offset,
            self._amplitude,
        )

    def __eq__(self, __o: object) -> bool:
        return isinstance(__o, ScatteringScenario) and self.to_dict() == __o.to_dict()

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.to_dict().items())))


# Wave vector -------------------------------------------------------------------------------------
class WaveVector:
    """Complex wave vector of the incident plane wave."""

    def __init__(self, kappa: complex, theta: float) -> None:
        self._kappa: complex = complex(kappa)
        self._theta: float = float(theta)
        self._kx: complex = self._kappa * np.cos(self._theta)
        self._ky: complex = self._kappa * np.sin(self._theta)
        self._zP: complex = complex(np.exp(1j * self._kx))

    # Properties ---------------------------------------------------------------
    @property
    def kappa(self) -> complex:
        """Access the wave number κ `<complex>`."""
        return self._kappa

    @property
    def theta(self) -> float:
        """Access the incidence angle in radians `<float>`."""
        return self._theta

    @property
    def kx(self) -> complex:
        """Access `κ_x = κ cosΘ` `<complex>`."""
        return self._kx

    @property
    def ky(self) -> complex:
        """Access `κ_y = κ sinΘ` `<complex>`."""
        return self._ky

    @property
    def zP(self) -> complex:
        """Access the transform pole `z_P = exp(iκ_x)` `<complex>`."""
        return self._zP

    def dispersion_residual(self, omega: complex) -> float:
        """`|ω² - 4(sin²(κ_x/2) + sin²(κ_y/2))|` `<float>`."""
        return abs(omega**2 - _lattice_symbol(self._kx, self._ky))

    def __repr__(self) -> str:
        return "<%s (kappa=%s, kx=%s, ky=%s, zP=%s)>" % (
            self.__class__.__name__,
            self._kappa,
            self._kx,
            self._ky,
            self._zP,
        )


def _lattice_symbol(kx: complex, ky: complex) -> complex:
    return 4.0 * (np.sin(kx / 2) ** 2 + np.sin(ky / 2) ** 2)


# Operations --------------------------------------------------------------------------------------
def solve_dispersion(omega: complex, theta: float, validation: bool = False) -> WaveVector:
    """Solve the lattice dispersion relation for the wave number along `Θ`.

    Newton iteration on `g(κ) = 4(sin²(κc/2) + sin²(κs/2)) - ω²` seeded
    with the continuum value `κ = ω`. The root with `Re κ >= 0` is returned.

    :param omega: `<complex>` The frequency.
    :param theta: `<float>` The incidence angle in radians.
    :param validation: `<bool>` Admit real frequencies. Defaults to `False`.
    :raises NoConvergenceError: Newton fails within the iteration budget.
    :raises DegenerateAngleError: The derivative vanishes at the iterate.
    """
    omega = complex(omega)
    if omega.imag <= 0 and not (validation and omega.imag == 0):
        raise errors.InvalidScenarioError(
            "<solve_dispersion>\nThe frequency must carry damping Im(omega) > 0, "
            "instead got {}.".format(omega)
        )
    c, s = np.cos(theta), np.sin(theta)
    target = omega * omega
    kappa = omega
    for _ in range(DefaultDispersion.MAX_ITER):
        g = 4.0 * (np.sin(kappa * c / 2) ** 2 + np.sin(kappa * s / 2) ** 2) - target
        dg = 2.0 * (c * np.sin(kappa * c) + s * np.sin(kappa * s))
        if abs(dg) < DefaultDispersion.DERIVATIVE_TOL:
            raise errors.DegenerateAngleError(
                "<solve_dispersion>\nThe dispersion derivative vanishes at "
                "kappa={} (omega={}, theta={}).".format(kappa, omega, theta)
            )
        step = g / dg
        kappa = kappa - step
        if abs(step) <= DefaultDispersion.STEP_TOL * max(1.0, abs(kappa)):
            break
    else:
        g = 4.0 * (np.sin(kappa * c / 2) ** 2 + np.sin(kappa * s / 2) ** 2) - target
        if abs(g) >= DefaultDispersion.RESIDUAL_TOL:
            raise errors.NoConvergenceError(
                "<solve_dispersion>\nNewton iteration did not converge in {} "
                "steps (omega={}, theta={}, residual={:.3e}).".format(
                    DefaultDispersion.MAX_ITER, omega, theta, abs(g)
                )
            )
    if kappa.real < 0:
        kappa = -kappa
    wave = WaveVector(complex(kappa), theta)
    residual = wave.dispersion_residual(omega)
    if residual >= DefaultDispersion.RESIDUAL_TOL:
        raise errors.NoConvergenceError(
            "<solve_dispersion>\nDispersion residual {:.3e} exceeds {:.0e} "
            "(omega={}, theta={}).".format(
                residual, DefaultDispersion.RESIDUAL_TOL, omega, theta
            )
        )
    logger.debug("Dispersion solved: %r (residual %.2e)", wave, residual)
    return wave


def incident_field(
    scenario: ScatteringScenario,
    wave: WaveVector,
    x: int | np.ndarray,
    y: int | np.ndarray,
) -> complex | np.ndarray:
    """The incident plane wave `A exp(iκ_x x + iκ_y y)`, vectorized over `x`, `y`."""
    value = scenario.amplitude * np.exp(1j * (wave.kx * np.asarray(x) + wave.ky * np.asarray(y)))
    if np.ndim(value) == 0:
        return complex(value)
    return value


def annulus_radii(wave: WaveVector) -> tuple[float, float]:
    """Radii `(R₊, R₋)` of the annulus where the scattered half transforms
    are jointly analytic: `R₊ = exp(-κ₂)`, `R₋ = exp(κ₂ cosΘ)`.

    :raises EmptyAnnulusError: `κ₂ <= 0` or `R₊ >= R₋`.
    """
    k2 = wave.kappa.imag
    if k2 <= 0:
        raise errors.EmptyAnnulusError(
            "<annulus_radii>\nThe wave number must carry Im(kappa) > 0, "
            "instead got {}.".format(wave.kappa)
        )
    r_plus = float(np.exp(-k2))
    r_minus = float(np.exp(k2 * np.cos(wave.theta)))
    if r_plus >= r_minus:
        raise errors.EmptyAnnulusError(
            "<annulus_radii>\nEmpty annulus: R+={:.12g} >= R-={:.12g}.".format(
                r_plus, r_minus
            )
        )
    return r_plus, r_minus


def defect_sites(scenario: ScatteringScenario, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Mask of the sites where the homogeneous lattice equation is modified:
    the four faces of the two broken bond rows for cracks, the two
    constrained rows for constraints.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    n, m = scenario.n_sep, scenario.m_offset
    lower = x >= 0
    upper = x >= m
    if scenario.is_crack:
        return (lower & ((y == 0) | (y == -1))) | (upper & ((y == n) | (y == n - 1)))
    return (lower & (y == 0)) | (upper & (y == n))
