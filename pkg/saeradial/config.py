"""Configuration management utilities"""

import os
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from saeradial.bound import SaeParam
from saeradial.errors import DomainError
from saeradial.potential import PotentialSpec


ENV_PREFIX = "SAE_RADIAL_"

# Default configuration values
DEFAULTS = {
    "threads": None,
    "log_steps_per_efold": "200",
    "linear_step_fraction": "0.02",
    "fit_oscillations": "10",
    "phase_oscillations": "30",
    "shoot_rtol": "1e-10",
}


def env_name(key: str) -> str:
    """Environment variable that overrides a config key"""
    return ENV_PREFIX + key.upper()


def get_config(key: str) -> Optional[str]:
    """Get configuration value from the environment with fallback to defaults"""
    if key not in DEFAULTS:
        raise KeyError(f"Unknown config key: {key}")
    value = os.environ.get(env_name(key))
    if value is None or value.strip() == "":
        return DEFAULTS[key]
    return value.strip()


def get_config_int(key: str) -> Optional[int]:
    """Get configuration value as integer"""
    value = get_config(key)
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise DomainError(f"{env_name(key)} must be an integer, got {value!r}")


def get_config_float(key: str) -> float:
    """Get configuration value as float"""
    value = get_config(key)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{env_name(key)} must be a number, got {value!r}")


class Spacing(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class OutputFormat(str, Enum):
    TABLE = "table"
    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class SweepGrid:
    """A (start, stop, count, spacing) sampling of k or tau"""
    start: float
    stop: float
    count: int
    spacing: Spacing = Spacing.LINEAR

    def __post_init__(self):
        if self.count < 1:
            raise DomainError(f"grid count must be at least 1, got {self.count}")
        if self.spacing == Spacing.LOG:
            if self.start <= 0 or self.stop <= 0:
                raise DomainError("log spacing requires positive endpoints")
            if self.start == self.stop and self.count > 1:
                raise DomainError("log grid endpoints must differ")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start], dtype=float)
        if self.spacing == Spacing.LOG:
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one CLI invocation"""
    mass: float = 1.0
    v0: Optional[float] = None
    two_m_v0: Optional[float] = None
    l: int = 0
    tau: SaeParam = SaeParam.standard()
    output_format: OutputFormat = OutputFormat.JSON
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.v0 is not None and self.two_m_v0 is not None:
            raise DomainError("give either v0 or two_m_v0, not both")
        if self.mass <= 0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if self.l < 0:
            raise DomainError(f"l must be non-negative, got {self.l}")

    def potential(self) -> PotentialSpec:
        """Build the partial-wave problem from v0 or the dimensionless 2mV0"""
        if self.two_m_v0 is not None:
            return PotentialSpec.from_two_m_v0(self.two_m_v0, self.l, mass=self.mass)
        return PotentialSpec(mass=self.mass, v0=self.v0 or 0.0, l=self.l)
