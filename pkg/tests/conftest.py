# -*- coding: UTF-8 -*-
from __future__ import annotations
from functools import lru_cache
import pytest
from staggerwh.scenario import ScatteringScenario
from staggerwh.problem import ScatteringProblem
from staggerwh.synthesis import FieldSynthesizer
from staggerwh.settings import Tolerances

# Desk parameters
OMEGA = 0.9 + 0.1j
KERNEL_OMEGA = 0.9 + 0.05j
THETA_DEG = 25.0
N_SEP = 5
ORACLE_NG = 60


def desk_scenario(kind: str = "crack", m_offset: int = 3, n_sep: int = N_SEP, amplitude: complex = 1.0) -> ScatteringScenario:
    return ScatteringScenario.from_degrees(OMEGA, THETA_DEG, amplitude, kind, n_sep, m_offset)


@lru_cache(maxsize=None)
def desk_problem(kind: str = "crack", m_offset: int = 3, n_sep: int = N_SEP) -> ScatteringProblem:
    return ScatteringProblem(desk_scenario(kind, m_offset, n_sep))


@lru_cache(maxsize=None)
def desk_synth(kind: str = "crack", m_offset: int = 3, n_sep: int = N_SEP) -> FieldSynthesizer:
    return FieldSynthesizer(desk_problem(kind, m_offset, n_sep))


@pytest.fixture(scope="session")
def problem_of():
    """Cached problems keyed by `(kind, M, N)`."""
    return desk_problem


@pytest.fixture(scope="session")
def synth_of():
    """Cached synthesizers keyed by `(kind, M, N)`."""
    return desk_synth


@pytest.fixture(autouse=True)
def _restore_tolerances():
    saved = {k: v for k, v in vars(Tolerances).items() if k.isupper()}
    yield
    for k, v in saved.items():
        setattr(Tolerances, k, v)
