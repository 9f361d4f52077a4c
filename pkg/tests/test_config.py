"""Test environment configuration and the run parameters"""

import numpy as np
import pytest

from saeradial.bound import SaeParam
from saeradial.config import (
    OutputFormat,
    RunConfig,
    Spacing,
    SweepGrid,
    env_name,
    get_config,
    get_config_float,
    get_config_int,
)
from saeradial.errors import DomainError


def test_defaults():
    """Test the built-in defaults when no SAE_RADIAL_* variable is set"""
    assert get_config("threads") is None
    assert get_config_int("threads") is None
    assert get_config_int("log_steps_per_efold") == 200
    assert get_config_float("linear_step_fraction") == 0.02
    assert get_config_int("phase_oscillations") == 30
    assert get_config_float("shoot_rtol") == 1e-10


def test_environment_override(monkeypatch):
    """Test that SAE_RADIAL_<KEY> overrides a default"""
    monkeypatch.setenv("SAE_RADIAL_FIT_OSCILLATIONS", "12")
    assert get_config_int("fit_oscillations") == 12
    monkeypatch.setenv("SAE_RADIAL_THREADS", " 3 ")
    assert get_config_int("threads") == 3
    monkeypatch.setenv("SAE_RADIAL_THREADS", "")
    assert get_config_int("threads") is None


def test_bad_values(monkeypatch):
    """Test that malformed overrides raise DomainError naming the variable"""
    monkeypatch.setenv("SAE_RADIAL_THREADS", "many")
    with pytest.raises(DomainError, match="SAE_RADIAL_THREADS"):
        get_config_int("threads")
    monkeypatch.setenv("SAE_RADIAL_SHOOT_RTOL", "tight")
    with pytest.raises(DomainError):
        get_config_float("shoot_rtol")


def test_unknown_key():
    with pytest.raises(KeyError):
        get_config("db_path")


def test_env_name():
    assert env_name("shoot_rtol") == "SAE_RADIAL_SHOOT_RTOL"
    assert env_name("threads") == "SAE_RADIAL_THREADS"


def test_sweep_grid_values():
    """Test linear and log spacing, endpoints included"""
    linear = SweepGrid(start=-5.0, stop=5.0, count=11)
    assert np.allclose(linear.values(), np.arange(-5.0, 6.0))
    log = SweepGrid(start=0.01, stop=10.0, count=4, spacing=Spacing.LOG)
    assert np.allclose(log.values(), [0.01, 0.1, 1.0, 10.0])
    assert SweepGrid(start=2.0, stop=3.0, count=1).values().tolist() == [2.0]


@pytest.mark.parametrize(
    "fields",
    [
        dict(start=0.0, stop=1.0, count=0),
        dict(start=0.0, stop=1.0, count=5, spacing=Spacing.LOG),
        dict(start=1.0, stop=1.0, count=5, spacing=Spacing.LOG),
    ],
)
def test_sweep_grid_rejects(fields):
    with pytest.raises(DomainError):
        SweepGrid(**fields)


def test_run_config():
    """Test the strength options are exclusive and both spellings build one problem"""
    with pytest.raises(DomainError):
        RunConfig(v0=0.1, two_m_v0=0.2)
    with pytest.raises(DomainError):
        RunConfig(mass=0.0)
    from_v0 = RunConfig(mass=2.0, v0=0.05).potential()
    from_strength = RunConfig(mass=2.0, two_m_v0=0.2).potential()
    assert from_v0 == from_strength
    default = RunConfig()
    assert default.tau == SaeParam.standard()
    assert default.output_format == OutputFormat.JSON
    assert default.potential().v0 == 0.0
