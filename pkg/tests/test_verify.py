"""Test the self-verification suites"""

import math

import pytest

from saeradial.errors import DomainError
from saeradial.potential import Regime
from saeradial.sweep import SweepPool
from saeradial.verify import (
    check_bound,
    check_orthogonality,
    check_phase,
    check_pole,
    check_specfun,
    check_uniqueness,
    check_unitarity,
    check_window,
    distance_mod_pi,
    expected_regime,
    run_suites,
)


@pytest.fixture
def serial_pool():
    return SweepPool(1)


def test_distance_mod_pi():
    assert distance_mod_pi(0.1, 0.1 + math.pi) == pytest.approx(0.0, abs=1e-15)
    assert distance_mod_pi(math.pi - 1e-6, 0.0) == pytest.approx(1e-6, rel=1e-6)
    assert distance_mod_pi(0.0, math.pi / 2) == pytest.approx(math.pi / 2)


def test_expected_regime():
    assert expected_regime(0, 0.1) == Regime.TRANSITIVE
    assert expected_regime(0, 0.3) == Regime.FALLING
    assert expected_regime(1, 1.0) == Regime.STANDARD_ONLY
    assert expected_regime(2, 0.0) == Regime.STANDARD_ONLY


@pytest.mark.parametrize(
    "suite",
    [check_specfun, check_window, check_bound, check_pole, check_unitarity, check_orthogonality, check_phase, check_uniqueness],
)
def test_suite_passes(suite, serial_pool):
    """Test every check of the suite passes"""
    results = suite(serial_pool)
    assert results
    failed = [row for row in results if not row.passed]
    assert not failed, failed


def test_run_suites_keeps_requested_order():
    results = run_suites(["unitarity", "pole", "unitarity"], workers=1)
    suites = [row.suite for row in results]
    assert suites == sorted(suites, key=["unitarity", "pole"].index)
    assert set(suites) == {"unitarity", "pole"}


def test_run_suites_rejects_unknown():
    with pytest.raises(DomainError, match="unknown suite"):
        run_suites(["bound", "nonsense"])
