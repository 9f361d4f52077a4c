"""The continuum sector: partial-wave S-matrix and phase shifts

All formulas take the one canonical tau of the bound sector. The momentum
dependence enters through the dimensionless

    lambda(k) = tau Gamma(1-P) / Gamma(1+P) (k/2)^(2P)

which is also the ratio B/A of the J_-P to the J_P amplitude of the
scattering solution R = sqrt(k/r) [A J_P(kr) + B J_-P(kr)].
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Union

from saeradial.bound import BoundaryCoeffs, SaeParam, check_log_range
from saeradial.errors import DegenerateError, DomainError, NoPole, PoleOnAxisError
from saeradial.potential import PParameter, require_transitive
from saeradial.specfun import bessel_j, gamma_real

logger = logging.getLogger(__name__)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LambdaParam:
    """lambda(k); its sign is the sign of tau"""
    lam: float


@dataclass(frozen=True)
class PartialWave:
    l: int
    p: float
    k: float
    s_matrix: complex
    delta_total: float
    delta_standard: float
    delta_sae: float

    @property
    def character(self) -> str:
        """Sign of the total phase: attractive for delta > 0, repulsive for delta < 0"""
        if self.delta_total > 0:
            return "attractive"
        if self.delta_total < 0:
            return "repulsive"
        return "neutral"


@dataclass(frozen=True)
class ScatteringCoeffs:
    """Amplitudes of J_P and J_-P, normalised so that A^2 (lam^2 + 2 lam cos(pi P) + 1) = 2 pi"""
    a: float
    b: float

    def boundary_coeffs(self, k: float, p: float) -> BoundaryCoeffs:
        """Small-r coefficients a_st = A k^(1/2+P) / (2^P Gamma(1+P)), a_add = B k^(1/2-P) 2^P / Gamma(1-P)"""
        P = require_transitive(p)
        _check_momentum(k)
        return BoundaryCoeffs(
            a_st=self.a * k ** (0.5 + P) / (2.0 ** P * gamma_real(1.0 + P)),
            a_add=self.b * k ** (0.5 - P) * 2.0 ** P / gamma_real(1.0 - P),
        )


def _check_momentum(k: float):
    if not k > 0:
        raise DomainError(f"momentum must be positive, got k={k}")


def _check_l(l: int):
    if l < 0 or int(l) != l:
        raise DomainError(f"l must be a non-negative integer, got {l}")


def lambda_of_k(tau: SaeParam, p: Union[PParameter, float], k: float) -> LambdaParam:
    """lambda(k) = tau Gamma(1-P) / Gamma(1+P) (k/2)^(2P)"""
    P = require_transitive(p)
    _check_momentum(k)
    if tau.is_infinite:
        raise DomainError(f"tau={tau}: lambda is infinite, use the symbolic limit")
    ratio = gamma_real(1.0 - P) / gamma_real(1.0 + P)
    lam = tau.tau * ratio * (0.5 * k) ** (2.0 * P)
    if not math.isfinite(lam):
        raise DomainError(f"lambda overflows for tau={tau}, P={P}, k={k}; use tau=inf")
    return LambdaParam(lam)


def standard_factor(l: int, P: float) -> complex:
    """exp(i (l + 1/2 - P) pi), the tau = 0 S-matrix"""
    return cmath.exp(1j * (l + 0.5 - P) * math.pi)


def s_matrix(l: int, p: Union[PParameter, float], k: float, tau: SaeParam) -> complex:
    """
    S_l = exp(i (l + 1/2 - P) pi) (1 + lam e^(i pi P)) / (1 + lam e^(-i pi P))

    tau = +-inf gives the limit exp(i (l + 1/2 + P) pi).

    Raises:
        PoleOnAxisError: if the denominator vanishes at real k
    """
    _check_l(l)
    P = require_transitive(p)
    _check_momentum(k)
    if tau.is_infinite:
        return cmath.exp(1j * (l + 0.5 + P) * math.pi)

    lam = lambda_of_k(tau, P, k).lam
    numerator = 1.0 + lam * cmath.exp(1j * math.pi * P)
    denominator = 1.0 + lam * cmath.exp(-1j * math.pi * P)
    if abs(denominator) == 0.0:
        raise PoleOnAxisError(f"S-matrix denominator vanishes at real k={k} (lam={lam})")
    return standard_factor(l, P) * numerator / denominator


def phase_shift(l: int, p: Union[PParameter, float], k: float, tau: SaeParam) -> PartialWave:
    """
    delta_l = (l + 1/2 - P) pi / 2 + delta_sae

    delta_sae = atan2(lam sin(pi P), 1 + lam cos(pi P)), continuous in k and
    zero at k -> 0. The tau = -inf limit is taken as pi P - pi, the end point
    of the tau < 0 branch.
    """
    P = require_transitive(p)
    S = s_matrix(l, P, k, tau)
    delta_standard = (l + 0.5 - P) * math.pi / 2.0
    if tau.is_infinite:
        delta_sae = math.pi * P if tau.infinity > 0 else math.pi * P - math.pi
    else:
        lam = lambda_of_k(tau, P, k).lam
        delta_sae = math.atan2(lam * math.sin(math.pi * P), 1.0 + lam * math.cos(math.pi * P))
    return PartialWave(
        l=l,
        p=P,
        k=k,
        s_matrix=S,
        delta_total=delta_standard + delta_sae,
        delta_standard=delta_standard,
        delta_sae=delta_sae,
    )


def continued_denominator(tau: SaeParam, p: Union[PParameter, float], kappa: float) -> complex:
    """
    1 + lam(i kappa) e^(-i pi P), the S-matrix denominator continued to k = i kappa

    (i kappa)^(2P) takes the upper-half-plane branch e^(i pi P) kappa^(2P),
    which leaves 1 + tau Gamma(1-P) / Gamma(1+P) (kappa/2)^(2P).
    """
    P = require_transitive(p)
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    if tau.is_infinite:
        raise DomainError(f"tau={tau}: the continued denominator is infinite")
    ratio = gamma_real(1.0 - P) / gamma_real(1.0 + P)
    lam = tau.tau * ratio * (0.5j * kappa) ** (2.0 * P)
    return 1.0 + lam * cmath.exp(-1j * math.pi * P)


def pole_energy(tau: SaeParam, p: Union[PParameter, float], mass: float) -> float:
    """
    Energy of the S-matrix pole on the positive imaginary k axis

    E = -(2/m) [Gamma(1+P) / Gamma(1-P)]^(1/P) (-1/tau)^(1/P)

    Raises:
        NoPole: tau >= 0 or tau = +-inf
        DomainError: the pole energy would leave double range
    """
    P = require_transitive(p)
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass}")
    if tau.is_infinite or tau.tau >= 0:
        raise NoPole(f"tau={tau}: the S-matrix has no bound-state pole for tau >= 0 or infinite tau")
    log_energy = math.log(2.0 / mass) + (
        math.log(gamma_real(1.0 + P)) - math.log(gamma_real(1.0 - P)) - math.log(-tau.tau)
    ) / P
    check_log_range(log_energy, f"pole |E| for tau={tau}, P={P}, m={mass}")
    energy = -math.exp(log_energy)
    logger.debug(f"pole P={P} tau={tau} m={mass}: E={energy!r}")
    return energy


def scattering_coeffs(tau: SaeParam, p: Union[PParameter, float], k: float) -> ScatteringCoeffs:
    """
    Amplitudes (A, B) of the scattering solution with B/A = lambda(k)

    Raises:
        DomainError: if the normalisation bracket lam^2 + 2 lam cos(pi P) + 1 vanishes
    """
    P = require_transitive(p)
    _check_momentum(k)
    if tau.is_infinite:
        return ScatteringCoeffs(a=0.0, b=tau.infinity * math.sqrt(_TWO_PI))
    lam = lambda_of_k(tau, P, k).lam
    cosine = math.cos(math.pi * P)
    if abs(lam) > 1.0:
        # bracket / lam^2, so lam^2 never overflows
        reduced = 1.0 + 2.0 * cosine / lam + 1.0 / (lam * lam)
        if reduced <= 0.0:
            raise DomainError(f"normalisation bracket vanishes for lam={lam}, P={P}")
        b = math.copysign(math.sqrt(_TWO_PI / reduced), lam)
        return ScatteringCoeffs(a=b / lam, b=b)
    bracket = lam * lam + 2.0 * lam * cosine + 1.0
    if bracket <= 0.0:
        raise DomainError(f"normalisation bracket vanishes for lam={lam}, P={P}")
    a = math.sqrt(_TWO_PI / bracket)
    return ScatteringCoeffs(a=a, b=lam * a)


def radial_scattering_wf(coeffs: ScatteringCoeffs, p: float, k: float, r: float) -> float:
    """R(r) = sqrt(k/r) [A J_P(kr) + B J_-P(kr)], for 0 < P <= 1/2"""
    if not 0.0 < p <= 0.5:
        raise DomainError(f"P must lie in (0, 1/2], got {p}")
    _check_momentum(k)
    if not r > 0:
        raise DomainError(f"radius must be positive, got r={r}")
    x = k * r
    value = coeffs.a * bessel_j(p, x)
    if coeffs.b != 0.0:
        value += coeffs.b * bessel_j(-p, x)
    return math.sqrt(k / r) * value


def continuum_bracket(
    c_k: ScatteringCoeffs,
    c_kp: ScatteringCoeffs,
    k: float,
    kp: float,
    p: float,
) -> float:
    """
    Lower-boundary term of the overlap of two scattering states

    2P / (k'^2 - k^2) [a_st(k) a_add(k') - a_st(k') a_add(k)]; it vanishes
    when both momenta share one tau.

    Raises:
        DegenerateError: k == k'
    """
    if k == kp:
        raise DegenerateError(f"the bracket needs two distinct momenta, got k=k'={k}")
    P = require_transitive(p)
    low = c_k.boundary_coeffs(k, P)
    high = c_kp.boundary_coeffs(kp, P)
    return 2.0 * P / (kp * kp - k * k) * (low.a_st * high.a_add - high.a_st * low.a_add)
