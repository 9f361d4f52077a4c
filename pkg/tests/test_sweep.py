"""Test the sweep worker pool"""

import math

import pytest

from saeradial import sweep
from saeradial.bound import SaeParam
from saeradial.errors import DomainError
from saeradial.scattering import phase_shift
from saeradial.sweep import SweepPool, phase_row, resolve_worker_count, tau_from_float


def double_first(item):
    """Task function for the serial pool (must be at module level)"""
    return item[0] * 2


def test_worker_count_capped_by_environment(monkeypatch):
    """Test SAE_RADIAL_THREADS caps the requested worker count"""
    assert resolve_worker_count(4) == 4
    monkeypatch.setenv("SAE_RADIAL_THREADS", "2")
    assert resolve_worker_count(4) == 2
    assert resolve_worker_count(1) == 1
    monkeypatch.setenv("SAE_RADIAL_THREADS", "0")
    with pytest.raises(DomainError):
        resolve_worker_count(4)


def test_worker_count_defaults_to_physical_cores(monkeypatch):
    monkeypatch.setattr(sweep.psutil, "cpu_count", lambda logical=True: 6)
    assert resolve_worker_count() == 6
    monkeypatch.setattr(sweep.psutil, "cpu_count", lambda logical=True: None)
    assert resolve_worker_count() == 1
    with pytest.raises(DomainError):
        resolve_worker_count(0)


def test_serial_pool_sorts_by_input():
    """Test results come back in the sorted order of the input tuples"""
    pool = SweepPool(1)
    assert pool.map(double_first, [(3,), (1,), (2,)]) == [2, 4, 6]
    assert pool.map(double_first, []) == []


def test_tau_from_float():
    assert tau_from_float(math.inf) == SaeParam.plus_infinity()
    assert tau_from_float(-math.inf) == SaeParam.minus_infinity()
    assert tau_from_float(-1.5) == SaeParam.finite(-1.5)


def test_phase_row_matches_phase_shift():
    """Test one scan row carries the closed-form phase shift"""
    row = phase_row((2.0, -1.0, 0, 0.25))
    wave = phase_shift(0, 0.25, 2.0, SaeParam.finite(-1.0))
    assert row["k"] == 2.0
    assert row["tau"] == -1.0
    assert row["delta_sae"] == wave.delta_sae
    assert row["delta_total"] == wave.delta_total
    assert complex(row["re_S"], row["im_S"]) == wave.s_matrix


def test_parallel_pool_matches_serial():
    """Test two spawned workers reproduce the serial sweep bit for bit"""
    tasks = [(k, -1.0, 0, 0.25) for k in (2.0, 0.5, 1.0, 4.0, 3.0)]
    serial = SweepPool(1).map(phase_row, tasks)
    parallel = SweepPool(2).map(phase_row, tasks)
    assert parallel == serial
    assert [row["k"] for row in parallel] == [0.5, 1.0, 2.0, 3.0, 4.0]
