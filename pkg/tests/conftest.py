"""Pytest configuration and fixtures"""

import os

import pytest

from saeradial.bound import SaeParam, bound_energy
from saeradial.config import ENV_PREFIX


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Drop SAE_RADIAL_* overrides so every test starts from the defaults"""
    for name in list(os.environ):
        if name.startswith(ENV_PREFIX):
            monkeypatch.delenv(name, raising=False)
    yield


@pytest.fixture
def p_quarter():
    """The reference exponent P = 1/4 (2 m V0 = 3/16 at l = 0)"""
    return 0.25


@pytest.fixture
def tau_minus_one():
    return SaeParam.finite(-1.0)


@pytest.fixture
def reference_state(p_quarter, tau_minus_one):
    """Bound state of P = 1/4, tau = -1, m = 1"""
    return bound_energy(p_quarter, 1.0, tau_minus_one)
