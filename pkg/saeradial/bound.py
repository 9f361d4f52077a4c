"""The discrete sector of the transitive inverse-square problem

A single real extension parameter tau = a_add / a_st fixes the ratio of the
r^(-1/2-P) to the r^(-1/2+P) coefficient of R(r) near the origin. For tau < 0
the partial wave carries exactly one bound level; for tau = 0 (standard
quantum mechanics) and tau = +-inf it carries none.
"""

import logging
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.integrate import trapezoid

from saeradial.errors import ComplexEnergyError, DomainError, NoBoundState
from saeradial.potential import PParameter, require_transitive
from saeradial.specfun import bessel_i, bessel_k, gamma_real

logger = logging.getLogger(__name__)

LOG_FLOAT_MAX = math.log(sys.float_info.max)
LOG_FLOAT_MIN = math.log(sys.float_info.min)


@dataclass(frozen=True)
class SaeParam:
    """
    Extension parameter tau, carrying units of length^(2P)

    tau = +-inf is kept symbolic in `infinity` (+1 or -1) and never enters a
    formula as a float infinity.
    """
    tau: float = 0.0
    infinity: int = 0

    def __post_init__(self):
        if self.infinity not in (-1, 0, 1):
            raise DomainError(f"infinity flag must be -1, 0 or +1, got {self.infinity}")
        if not math.isfinite(self.tau):
            raise DomainError("tau must be finite; use the symbolic infinities for +-inf")
        if self.infinity != 0 and self.tau != 0.0:
            raise DomainError("a symbolic infinity carries no finite tau value")

    @classmethod
    def standard(cls) -> "SaeParam":
        return cls(0.0, 0)

    @classmethod
    def finite(cls, tau: float) -> "SaeParam":
        return cls(float(tau), 0)

    @classmethod
    def plus_infinity(cls) -> "SaeParam":
        return cls(0.0, 1)

    @classmethod
    def minus_infinity(cls) -> "SaeParam":
        return cls(0.0, -1)

    @classmethod
    def parse(cls, text: str) -> "SaeParam":
        """Read a CLI value: a float, or one of inf, +inf, -inf"""
        token = text.strip().lower()
        if token in ("inf", "+inf", "infinity", "+infinity"):
            return cls.plus_infinity()
        if token in ("-inf", "-infinity"):
            return cls.minus_infinity()
        try:
            value = float(token)
        except ValueError:
            raise DomainError(f"tau must be a number, 'inf' or '-inf', got {text!r}")
        if math.isinf(value):
            return cls.plus_infinity() if value > 0 else cls.minus_infinity()
        if math.isnan(value):
            raise DomainError("tau must not be NaN")
        return cls.finite(value)

    @property
    def is_infinite(self) -> bool:
        return self.infinity != 0

    @property
    def is_standard(self) -> bool:
        return self.infinity == 0 and self.tau == 0.0

    def as_float(self) -> float:
        """tau as a float, +-inf included; for reporting only"""
        if self.is_infinite:
            return math.copysign(math.inf, self.infinity)
        return self.tau

    def __str__(self):
        if self.is_infinite:
            return "inf" if self.infinity > 0 else "-inf"
        return repr(self.tau)


@dataclass(frozen=True)
class BoundaryCoeffs:
    """R(r) ~ a_st r^(-1/2+P) + a_add r^(-1/2-P) as r -> 0 (u = rR has the same numbers)"""
    a_st: float
    a_add: float

    def __post_init__(self):
        if self.a_st == 0.0 and self.a_add == 0.0:
            raise DomainError("boundary coefficients must not both vanish")

    @property
    def tau(self) -> SaeParam:
        if self.a_st == 0.0:
            return SaeParam.plus_infinity() if self.a_add > 0 else SaeParam.minus_infinity()
        return SaeParam.finite(self.a_add / self.a_st)

    @classmethod
    def from_modified_bessel(cls, A: float, B: float, k: float, p: float) -> "BoundaryCoeffs":
        """Small-r coefficients of R = r^(-1/2) [A I_P(kr) + B I_-P(kr)]"""
        P = require_transitive(p)
        if not k > 0:
            raise DomainError(f"k must be positive, got {k}")
        half = 0.5 * k
        return cls(
            a_st=A * half ** P / gamma_real(1.0 + P),
            a_add=B * half ** (-P) / gamma_real(1.0 - P),
        )


@dataclass(frozen=True)
class BoundState:
    """The single level of a transitive partial wave with tau < 0"""
    energy: float
    kappa: float
    p: PParameter
    tau: SaeParam
    mass: float
    node_free: bool = True

    def __post_init__(self):
        if not self.energy < 0:
            raise DomainError(f"bound energy must be negative, got {self.energy}")
        if not self.kappa > 0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")

    def boundary_coeffs(self) -> BoundaryCoeffs:
        """Small-r coefficients of the amplitude-one wave function (A = 1, B = -1)"""
        return BoundaryCoeffs.from_modified_bessel(1.0, -1.0, self.kappa, self.p)


def check_log_range(log_value: float, what: str):
    """Raise DomainError unless exp(log_value) is a normal double"""
    if not LOG_FLOAT_MIN < log_value < LOG_FLOAT_MAX:
        raise DomainError(f"{what} lies outside double range (log = {log_value:.6g})")


def _coerce_p(p: Union[PParameter, float]) -> PParameter:
    if isinstance(p, PParameter):
        return p
    if p < 0:
        raise DomainError(f"P must be non-negative, got {p}")
    return PParameter.of(float(p))


def orthogonality_defect(c1: BoundaryCoeffs, c2: BoundaryCoeffs, p: float) -> float:
    """
    Boundary term P (a1_st a2_add - a1_add a2_st) left at the origin by two states

    It vanishes exactly when both states share one tau, which is the
    condition for the Hamiltonian to stay self-adjoint on their span.
    """
    P = require_transitive(p)
    return P * (c1.a_st * c2.a_add - c1.a_add * c2.a_st)


def tau_from_coeffs(A: float, B: float, k: float, p: float) -> SaeParam:
    """
    tau induced by R = r^(-1/2) [A I_P(kr) + B I_-P(kr)]

    tau = (B/A) (k/2)^(-2P) Gamma(1+P) / Gamma(1-P)

    Raises:
        DomainError: if A == 0 (the pure I_-P solution has tau = +-inf)
    """
    if A == 0:
        raise DomainError("A must be nonzero; the pure additional solution has infinite tau")
    P = require_transitive(p)
    if not k > 0:
        raise DomainError(f"k must be positive, got {k}")
    ratio = gamma_real(1.0 + P) / gamma_real(1.0 - P)
    return SaeParam.finite((B / A) * (0.5 * k) ** (-2.0 * P) * ratio)


def bound_energy(p: Union[PParameter, float], mass: float, tau: SaeParam) -> BoundState:
    """
    The unique level E = -kappa^2 / (2m) with kappa = 2 [Gamma(1+P) / (Gamma(1-P) (-tau))]^(1/(2P))

    Raises:
        RegimeError: P outside (0, 1/2)
        NoBoundState: tau = 0 or tau = +-inf
        ComplexEnergyError: tau > 0
        DomainError: kappa or E would leave double range
    """
    p = _coerce_p(p)
    P = require_transitive(p)
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass}")
    if tau.is_infinite:
        raise NoBoundState(f"tau={tau}: the pure additional sector has no bound level")
    if tau.tau == 0.0:
        raise NoBoundState("tau=0: the level disappears in standard quantum mechanics")
    if tau.tau > 0:
        raise ComplexEnergyError(f"tau={tau} > 0 gives a complex energy; a level needs tau < 0")

    log_kappa = math.log(2.0) + (
        math.log(gamma_real(1.0 + P)) - math.log(gamma_real(1.0 - P)) - math.log(-tau.tau)
    ) / (2.0 * P)
    log_energy = 2.0 * log_kappa - math.log(2.0 * mass)
    check_log_range(log_kappa, f"kappa for tau={tau}, P={P}")
    check_log_range(log_energy, f"|E| for tau={tau}, P={P}, m={mass}")
    kappa = math.exp(log_kappa)
    energy = -math.exp(log_energy)
    logger.debug(f"bound level P={P} tau={tau} m={mass}: kappa={kappa!r} E={energy!r}")
    return BoundState(energy=energy, kappa=kappa, p=p, tau=tau, mass=mass)


def bound_wavefunction(state: BoundState, amplitude: float, r: float) -> float:
    """R(r) = -A (2/pi) r^(-1/2) sin(P pi) K_P(kappa r)"""
    if not r > 0:
        raise DomainError(f"radius must be positive, got r={r}")
    P = require_transitive(state.p)
    return -amplitude * (2.0 / math.pi) * math.sin(P * math.pi) * bessel_k(P, state.kappa * r) / math.sqrt(r)


def node_radius(A: float, B: float, p: float) -> Optional[float]:
    """
    The zero r0 = (-B/A)^(1/(2P)) of the zero-energy solution A r^(-1/2+P) + B r^(-1/2-P)

    Returns None when B/A >= 0 and the solution has no node.
    """
    if A == 0:
        raise DomainError("A must be nonzero for the zero-energy node")
    P = require_transitive(p)
    ratio = -B / A
    if ratio <= 0:
        return None
    return ratio ** (1.0 / (2.0 * P))


# x K_P(x)^2 on the log grid decays like x^(2-2P) below and e^(-2x) above
_NORM_X_MIN = 1e-8
_NORM_X_MAX = 60.0
_NORM_POINTS = 4001


def normalize(state: BoundState) -> float:
    """
    Amplitude A making the level's R unit-normalised in L^2(r^2 dr)

    The integral of x K_P(x)^2 runs on a log grid by the trapezoid rule, with
    the small-x power law added in closed form below the grid.
    """
    P = require_transitive(state.p)
    t = np.linspace(math.log(_NORM_X_MIN), math.log(_NORM_X_MAX), _NORM_POINTS)
    x = np.exp(t)
    k_values = np.array([bessel_k(P, xi) for xi in x])
    # dx = x dt
    integral = trapezoid(x * x * k_values ** 2, t)
    head_coeff = gamma_real(P) * 2.0 ** (P - 1.0)
    integral += head_coeff ** 2 * _NORM_X_MIN ** (2.0 - 2.0 * P) / (2.0 - 2.0 * P)

    prefactor = (2.0 / math.pi) * math.sin(P * math.pi) / state.kappa
    amplitude = 1.0 / (prefactor * math.sqrt(integral))
    logger.debug(f"normalisation P={P} kappa={state.kappa!r}: A={amplitude!r}")
    return amplitude


def no_decaying_pair(
    p: float,
    kappa: float,
    coefficients: Sequence[float] = (-10.0, -1.0, -0.1, 0.1, 1.0, 10.0),
) -> bool:
    """
    Check that the pairs {I_P, K_P} and {I_-P, K_P} admit no bound state

    Every combination g + B K_P with g = I_+-P grows between kappa r = 20 and
    kappa r = 40, so only pure K_P (the B = -A combination of I_P and I_-P)
    decays.
    """
    P = require_transitive(p)
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    near, far = 20.0 / kappa, 40.0 / kappa

    def radial(order: float, b: float, r: float) -> float:
        return (bessel_i(order, kappa * r) + b * bessel_k(P, kappa * r)) / math.sqrt(r)

    for order in (P, -P):
        for b in coefficients:
            if abs(radial(order, b, far)) <= abs(radial(order, b, near)):
                logger.info(f"pair order={order} B={b} does not grow at large r")
                return False
    return True
