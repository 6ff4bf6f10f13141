# -*- coding: UTF-8 -*-
from __future__ import annotations
import numpy as np
from staggerwh import errors
from staggerwh.logs import logger
from staggerwh.kernel import KernelBundle, distinguished_zeros, eval_HRQ
from staggerwh.laurent import ContourGrid, choose_contour, contour_bounds
from staggerwh.factorize import FactorSuite, build_factor_suite, required_samples
from staggerwh.scenario import (
    ScatteringScenario,
    WaveVector,
    solve_dispersion,
    annulus_radii,
    incident_field,
)
from staggerwh.settings import DefaultContour, Tolerances

__all__ = ["ScatteringProblem", "delta_plus", "J", "J_INV", "JE2"]

# Constant diagonalizing matrix of the 2x2 kernel: 𝐋 = 𝐉⁻¹ diag(α, β) 𝐉
J: np.ndarray = np.array([[1.0, -1.0], [1.0, 1.0]]) / np.sqrt(2.0)
J_INV: np.ndarray = np.array([[1.0, 1.0], [-1.0, 1.0]]) / np.sqrt(2.0)
JE2: np.ndarray = J[:, 1]


def delta_plus(z: complex | np.ndarray) -> complex | np.ndarray:
    """The discrete step transform `δ_D⁺(z) = 1/(1 - z^{-1})`."""
    return 1.0 / (1.0 - 1.0 / np.asarray(z, dtype=complex))


class ScatteringProblem:
    """Everything a run shares once the scenario is fixed: the wave vector,
    the contour, the kernel samples and the factor suite of `α`, `β`.
    """

    def __init__(
        self,
        scenario: ScatteringScenario,
        radius: float | None = None,
        samples: int | None = None,
    ) -> None:
        """Prepare the contour data of a scattering run.

        :param scenario: `<ScatteringScenario>` The physical parameters.
        :param radius: `<float/None>` Contour radius. Defaults to `None` (automatic).
        :param samples: `<int/None>` Initial sample count K. Defaults to `None` (4096).
        """
        self._scenario: ScatteringScenario = scenario
        self._wave: WaveVector = solve_dispersion(
            scenario.omega, scenario.theta, scenario.validation
        )
        self._r_plus, self._r_minus = annulus_radii(self._wave)
        self._zh, self._zr, self._zq = distinguished_zeros(
            scenario.omega, scenario.validation
        )
        r_lattice = max(abs(self._zh), abs(self._zr))
        self._requested_radius: float | None = radius
        self._bounds: tuple[float, float] = contour_bounds(
            self._r_plus, self._r_minus, r_lattice, abs(self._wave.zP)
        )
        self._radius: float = choose_contour(
            self._r_plus, self._r_minus, r_lattice, abs(self._wave.zP), radius
        )
        if not scenario.is_crack:
            self._check_zq()
        self._build(required_samples(scenario.m_offset, samples))

    def _check_zq(self) -> None:
        if abs(self._zq) >= self._radius * (1.0 - DefaultContour.ON_CONTOUR_TOL):
            raise errors.ZqOnContourError(
                "<{}>\n|z_q| = {:.12g} is not inside the contour radius {:.12g}.".format(
                    self.__class__.__name__, abs(self._zq), self._radius
                )
            )
        if abs(self._zq - self._wave.zP) < Tolerances.RESONANCE:
            raise errors.ResonantIncidenceError(
                "<{}>\nz_q = {} coincides with the incident pole z_P = {}.".format(
                    self.__class__.__name__, self._zq, self._wave.zP
                )
            )

    def _build(self, n_samples: int) -> None:
        s = self._scenario
        while True:
            grid = ContourGrid(self._radius, n_samples)
            bundle = KernelBundle(s.omega, grid, s.validation)
            suite = build_factor_suite(bundle, s.n_sep, s.kind, self._wave.zP)
            tail = suite.tail_mass()
            if tail < DefaultContour.TAIL_MASS or n_samples >= DefaultContour.MAX_SAMPLES:
                break
            logger.info(
                "Log-factor tail mass %.2e at K=%d, doubling the sample count.",
                tail,
                n_samples,
            )
            n_samples *= 2
        if tail >= DefaultContour.TAIL_MASS:
            logger.warning(
                "Log-factor tail mass %.2e still above %.0e at the K=%d cap.",
                tail,
                DefaultContour.TAIL_MASS,
                n_samples,
            )
        self._grid: ContourGrid = grid
        self._bundle: KernelBundle = bundle
        self._suite: FactorSuite = suite
        self._tail_mass: float = tail
        z = grid.nodes
        self._delta: np.ndarray = z / (z - self._wave.zP)
        self._delta.setflags(write=False)
        logger.info(
            "Contour radius %.6f with K=%d (annulus %.6f..%.6f, |z_P|=%.6f).",
            self._radius,
            n_samples,
            self._r_plus,
            self._r_minus,
            abs(self._wave.zP),
        )

    # Properties ---------------------------------------------------------------
    @property
    def scenario(self) -> ScatteringScenario:
        """Access the scenario `<ScatteringScenario>`."""
        return self._scenario

    @property
    def wave(self) -> WaveVector:
        """Access the incident wave vector `<WaveVector>`."""
        return self._wave

    @property
    def annulus(self) -> tuple[float, float]:
        """Access the radii `(R₊, R₋)` `<tuple[float, float]>`."""
        return self._r_plus, self._r_minus

    @property
    def bounds(self) -> tuple[float, float]:
        """Access the admissible contour radius interval `<tuple[float, float]>`."""
        return self._bounds

    @property
    def grid(self) -> ContourGrid:
        """Access the contour `<ContourGrid>`."""
        return self._grid

    @property
    def radius(self) -> float:
        """Access the contour radius `<float>`."""
        return self._radius

    @property
    def bundle(self) -> KernelBundle:
        """Access the kernel samples `<KernelBundle>`."""
        return self._bundle

    @property
    def suite(self) -> FactorSuite:
        """Access the factors of `α`, `β` `<FactorSuite>`."""
        return self._suite

    @property
    def tail_mass(self) -> float:
        """Access the final log-factor tail mass `<float>`."""
        return self._tail_mass

    @property
    def zP(self) -> complex:
        """Access the incident pole `z_P` `<complex>`."""
        return self._wave.zP

    @property
    def zq(self) -> complex:
        """Access the interior zero `z_q` of `Q` `<complex>`."""
        return self._zq

    @property
    def amplitude(self) -> complex:
        """Access the incident amplitude `A` `<complex>`."""
        return self._scenario.amplitude

    @property
    def e(self) -> complex:
        """Access `e^{iκ_y N}` `<complex>`."""
        return complex(np.exp(1j * self._wave.ky * self._scenario.n_sep))

    @property
    def Q_P(self) -> complex:
        """Access `Q(z_P) = 2cos κ_y` `<complex>`."""
        return complex(eval_HRQ(self._wave.zP, self._scenario.omega)[2])

    @property
    def delta(self) -> np.ndarray:
        """Access `δ(z) = z/(z - z_P)` on the contour `<ndarray[complex]>`."""
        return self._delta

    @property
    def delta_q(self) -> complex:
        """Access `δ(z_q)` `<complex>`."""
        return complex(self._zq / (self._zq - self._wave.zP))

    @property
    def segment(self) -> list[int]:
        """Access the stagger segment indices in increasing order `<list[int]>`."""
        return list(self._scenario.segment)

    # Incident wave ------------------------------------------------------------
    def incident(self, x: int | np.ndarray, y: int | np.ndarray) -> complex | np.ndarray:
        """The incident wave at lattice sites."""
        return incident_field(self._scenario, self._wave, x, y)

    def incident_jump(self, x: int | np.ndarray, y: int) -> complex | np.ndarray:
        """Incident bond difference `u^inc_{x,y} - u^inc_{x,y-1}`."""
        return self.incident(x, y) - self.incident(x, y - 1)

    def incident_sum(self, x: int | np.ndarray, y: int) -> complex | np.ndarray:
        """Incident neighbour sum `u^inc_{x,y+1} + u^inc_{x,y-1}`."""
        return self.incident(x, y + 1) + self.incident(x, y - 1)

    # Stagger terms ------------------------------------------------------------
    def stagger_halves(self, chi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Minus and plus halves of `c^Λ = -ℷ Σ_{x∈𝔻} χ_x S_x 𝐉e₂` on the
        contour, each of shape `(2, K)`.
        """
        minus = np.zeros((2, self._grid.n_samples), dtype=complex)
        plus = np.zeros_like(minus)
        for x, value in zip(self.segment, np.asarray(chi, dtype=complex)):
            s_minus, s_plus, _ = self._suite.difference_split(x)
            minus += value * s_minus
            plus += value * s_plus
        scale = -self._scenario.stagger_sign * JE2[:, None]
        return scale * minus, scale * plus

    def stagger_at_zq(self, chi: np.ndarray) -> np.ndarray:
        """The minus half of `c^Λ` at `z_q`, shape `(2,)`."""
        total = np.zeros(2, dtype=complex)
        for x, value in zip(self.segment, np.asarray(chi, dtype=complex)):
            total += value * self._suite.difference_split(x)[2]
        return -self._scenario.stagger_sign * JE2 * total

    # Derived problems ---------------------------------------------------------
    def with_radius(self, radius: float) -> ScatteringProblem:
        """The same run on another admissible contour."""
        return ScatteringProblem(self._scenario, radius, self._grid.n_samples)

    def with_scenario(self, scenario: ScatteringScenario) -> ScatteringProblem:
        """Another run with this problem's contour settings."""
        return ScatteringProblem(scenario, self._requested_radius, self._grid.n_samples)

    def summary(self) -> dict:
        """Contour and wave diagnostics for manifests `<dict>`."""
        return {
            "kappa": self._wave.kappa,
            "kx": self._wave.kx,
            "ky": self._wave.ky,
            "zP": self._wave.zP,
            "zP_modulus": abs(self._wave.zP),
            "zh": self._zh,
            "zr": self._zr,
            "zq": self._zq,
            "annulus": [self._r_plus, self._r_minus],
            "contour_bounds": list(self._bounds),
            "contour_radius": self._radius,
            "samples": self._grid.n_samples,
            "tail_mass": self._tail_mass,
            "dispersion_residual": self._wave.dispersion_residual(self._scenario.omega),
        }

    def __repr__(self) -> str:
        return "<%s (scenario=%r, grid=%r)>" % (
            self.__class__.__name__,
            self._scenario,
            self._grid,
        )
