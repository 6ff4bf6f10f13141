# -*- coding: UTF-8 -*-
from math import radians
import numpy as np
import pytest
from staggerwh import errors
from staggerwh.scenario import (
    ScatteringScenario,
    solve_dispersion,
    incident_field,
    annulus_radii,
    defect_sites,
)
from conftest import OMEGA, THETA_DEG, desk_scenario


class TestScenario:
    def test_dispersion(self) -> None:
        wave = solve_dispersion(OMEGA, radians(THETA_DEG))
        assert wave.dispersion_residual(OMEGA) < 1e-12
        assert wave.kappa.real > 0 and wave.kappa.imag > 0
        assert wave.zP == pytest.approx(np.exp(1j * wave.kx), abs=1e-14)
        assert abs(wave.zP) < 1.0

    def test_annulus(self) -> None:
        wave = solve_dispersion(OMEGA, radians(THETA_DEG))
        r_plus, r_minus = annulus_radii(wave)
        assert r_plus < 1.0 < r_minus

    def test_segment(self) -> None:
        assert list(desk_scenario(m_offset=3).segment) == [0, 1, 2]
        assert list(desk_scenario(m_offset=-2).segment) == [-2, -1]
        assert list(desk_scenario(m_offset=0).segment) == []
        assert desk_scenario(m_offset=-2).stagger_sign == -1
        assert desk_scenario(m_offset=0).stagger_sign == 0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n_sep": 0},
            {"kind": "slit"},
            {"m_offset": 1.5},
            {"theta": 4.0},
        ],
    )
    def test_invalid(self, kwargs: dict) -> None:
        params = {"omega": OMEGA, "theta": 0.4, "kind": "crack", "n_sep": 2, "m_offset": 1}
        params.update(kwargs)
        with pytest.raises(errors.InvalidScenarioError):
            ScatteringScenario(**params)

    def test_real_frequency(self) -> None:
        with pytest.raises(errors.InvalidScenarioError):
            ScatteringScenario(0.9, 0.4)
        scenario = ScatteringScenario(0.9, 0.4, validation=True)
        assert scenario.validation

    def test_dict_roundtrip(self) -> None:
        s = desk_scenario("constraint", -2, amplitude=0.5 - 0.25j)
        d = s.to_dict()
        again = ScatteringScenario.from_degrees(
            complex(d["omega_re"], d["omega_im"]),
            d["theta_deg"],
            complex(d["amplitude_re"], d["amplitude_im"]),
            d["kind"],
            d["N"],
            d["M"],
        )
        assert again == s
        assert hash(again) == hash(s)

    def test_derived(self) -> None:
        s = desk_scenario("constraint", 3)
        assert s.with_offset(-2) == desk_scenario("constraint", -2)
        assert s.with_amplitude(0.5j) == desk_scenario("constraint", 3, amplitude=0.5j)
        assert s.with_amplitude(0.5j).to_dict()["M"] == 3

    @pytest.mark.parametrize("kind, shift", [("crack", 4), ("constraint", 5)])
    def test_flipped_incident(self, kind: str, shift: int) -> None:
        s = desk_scenario(kind, 3)
        wave = solve_dispersion(s.omega, s.theta)
        mirror = s.flipped(wave)
        mirror_wave = solve_dispersion(mirror.omega, mirror.theta)
        assert mirror.m_offset == -3
        x = np.arange(-6, 7)
        for y in range(-3, 8):
            a = incident_field(s, wave, x + 3, shift - y)
            b = incident_field(mirror, mirror_wave, x, y)
            assert np.max(np.abs(a - b)) < 1e-12

    def test_defect_sites(self) -> None:
        crack = desk_scenario("crack", 3)
        x = np.array([-1, 0, 2, 3, 0, 3])
        y = np.array([0, -1, 5, 4, 4, -1])
        assert defect_sites(crack, x, y).tolist() == [False, True, False, True, False, True]
        rigid = desk_scenario("constraint", -2)
        x = np.array([0, -1, -2, -3, 0])
        y = np.array([0, 0, 5, 5, 4])
        assert defect_sites(rigid, x, y).tolist() == [True, False, True, False, False]
