"""Regime classification of the -V0/r^2 partial-wave problem"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from saeradial.errors import DomainError, RegimeError

CRITICAL_TOLERANCE = 1e-9


class Regime(str, Enum):
    REGULAR_FREE = "RegularFree"
    STANDARD_ONLY = "StandardOnly"
    TRANSITIVE = "Transitive"
    CRITICAL = "Critical"
    FALLING = "Falling"


_REGIME_REASONS = {
    Regime.STANDARD_ONLY: "P >= 1/2 admits no additional solution",
    Regime.CRITICAL: "P = 0 is excluded from the level formula (0 < P < 1/2)",
    Regime.FALLING: "falling to the center, not solvable",
}


@dataclass(frozen=True)
class PotentialSpec:
    """One partial wave of V(r) = -v0/r^2 (hbar = 1, v0 > 0 attractive)"""
    mass: float
    v0: float
    l: int

    def __post_init__(self):
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise DomainError(f"mass must be positive and finite, got {self.mass}")
        if not math.isfinite(self.v0):
            raise DomainError(f"v0 must be finite, got {self.v0}")
        if self.l < 0 or int(self.l) != self.l:
            raise DomainError(f"l must be a non-negative integer, got {self.l}")

    @classmethod
    def from_two_m_v0(cls, two_m_v0: float, l: int, mass: float = 1.0) -> "PotentialSpec":
        """Build the problem from the dimensionless strength 2 m V0"""
        if not (mass > 0 and math.isfinite(mass)):
            raise DomainError(f"mass must be positive and finite, got {mass}")
        return cls(mass=mass, v0=two_m_v0 / (2.0 * mass), l=l)

    @property
    def two_m_v0(self) -> float:
        return 2.0 * self.mass * self.v0

    def r2_limit(self) -> float:
        """lim r^2 V(r) at the origin: 0 for a regular core, -v0 for the transitive one"""
        return -self.v0


@dataclass(frozen=True)
class PParameter:
    """The exponent P = sqrt((l+1/2)^2 - 2 m V0) and its regime"""
    p_squared: float
    regime: Regime
    free: bool = False

    @property
    def diagnostic(self) -> Regime:
        """RegularFree for the free particle (V0 = 0), the regime otherwise"""
        return Regime.REGULAR_FREE if self.free else self.regime

    @property
    def p(self) -> Optional[float]:
        """P itself, or None when P is imaginary (falling to the center)"""
        if self.p_squared < 0:
            return None
        return math.sqrt(self.p_squared)

    @property
    def imaginary(self) -> bool:
        return self.p_squared < 0

    @classmethod
    def of(cls, p: float) -> "PParameter":
        """Wrap a bare exponent P >= 0"""
        if p < 0:
            raise DomainError(f"P must be non-negative, got {p}")
        return cls(p_squared=p * p, regime=_classify(p * p))


def _classify(p_squared: float) -> Regime:
    # decided on P^2 so the window edges are exact in floating point
    if p_squared < 0:
        return Regime.FALLING
    if p_squared < CRITICAL_TOLERANCE ** 2:
        return Regime.CRITICAL
    if p_squared < 0.25:
        return Regime.TRANSITIVE
    return Regime.STANDARD_ONLY


def compute_p(spec: PotentialSpec) -> PParameter:
    """P parameter and regime of a partial-wave problem"""
    p_squared = (spec.l + 0.5) ** 2 - 2.0 * spec.mass * spec.v0
    return PParameter(p_squared=p_squared, regime=_classify(p_squared), free=spec.v0 == 0)


def additional_window(l: int) -> Tuple[float, float]:
    """Open interval of 2 m V0 in which the additional solution exists for this l"""
    if l < 0:
        raise DomainError(f"l must be non-negative, got {l}")
    lo = float(l * (l + 1))
    return lo, lo + 0.25


def anticentrifugal(p: PParameter, mass: float, r: float) -> float:
    """Effective potential (P^2 - 1/4) / (2 m r^2); negative exactly when P^2 < 1/4"""
    if not r > 0:
        raise DomainError(f"radius must be positive, got r={r}")
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass}")
    return (p.p_squared - 0.25) / (2.0 * mass * r * r)


def require_transitive(p: Union[PParameter, float]) -> float:
    """
    Return P as a float, insisting on the transitive window 0 < P < 1/2

    Raises:
        RegimeError: tagged with the regime that was found instead
    """
    if not isinstance(p, PParameter):
        if p < 0:
            raise DomainError(f"P must be non-negative, got {p}")
        p = PParameter.of(float(p))
    if p.regime != Regime.TRANSITIVE:
        raise RegimeError(p.regime.value, _REGIME_REASONS[p.regime])
    return p.p
