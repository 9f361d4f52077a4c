"""Real-order special functions for the inverse-square problem

Gamma for real argument, and the Bessel functions J, I, K of real order
|nu| < 1 at real positive argument. Everything runs in double precision.

Evaluation branches:
  - J, I: power series for x <= SERIES_SWITCH, large-argument expansions beyond.
  - K: the difference formula K = pi/(2 sin(nu pi)) (I_-nu - I_nu) for
    x <= K_SERIES_LIMIT, a trapezoid rule on the integral representation up
    to K_ASYMPTOTIC_SWITCH, its own decaying asymptotic series beyond.
    The difference formula loses about e^(2x) in relative accuracy, which
    confines it to small x.
"""

import logging
import math
from typing import List

import numpy as np

from saeradial.errors import DomainError, PoleError

logger = logging.getLogger(__name__)

SERIES_SWITCH = 12.0
K_SERIES_LIMIT = 2.0
K_ASYMPTOTIC_SWITCH = 25.0

_MAX_TERMS = 500
_QUAD_STEP = 0.05
_QUAD_CUTOFF = 40.0

# Lanczos approximation, g = 7, nine coefficients
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_GAMMA_OVERFLOW = 171.6


def _lanczos(x: float) -> float:
    """Gamma on [0.5, 2) from the Lanczos sum"""
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, coeff in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += coeff / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * acc


def gamma_real(x: float) -> float:
    """
    Gamma function of a real argument

    Arguments below 0.5 go through the reflection formula, arguments of 2 and
    above are reduced with Gamma(x+1) = x Gamma(x).

    Raises:
        PoleError: at zero and the negative integers
    """
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at x={x}")
    if x > _GAMMA_OVERFLOW:
        raise DomainError(f"Gamma({x}) overflows double precision")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_real(1.0 - x))

    scale = 1.0
    while x >= 2.0:
        x -= 1.0
        scale *= x
    return scale * _lanczos(x)


def _check_order(nu: float):
    if not abs(nu) < 1.0:
        raise DomainError(f"order must satisfy |nu| < 1, got nu={nu}")


def _check_argument(x: float):
    if not x > 0.0:
        raise DomainError(f"argument must be positive, got x={x}")


def bessel_series(kind: str, nu: float, x: float) -> float:
    """Power series of J_nu ('j') or I_nu ('i') at real order |nu| < 1"""
    if kind not in ("j", "i"):
        raise DomainError(f"series kind must be 'j' or 'i', got {kind!r}")
    _check_order(nu)
    _check_argument(x)

    half = 0.5 * x
    z = -half * half if kind == "j" else half * half
    term = half ** nu / gamma_real(nu + 1.0)
    total = term
    peak = abs(term)
    for k in range(1, _MAX_TERMS):
        term *= z / (k * (k + nu))
        total += term
        peak = max(peak, abs(term))
        # alternating J sums are limited by the largest term, not by the total
        if k > half and abs(term) <= 1e-17 * max(abs(total), 1e-4 * peak):
            break
    return total


def _expansion_terms(nu: float, x: float) -> List[float]:
    """a_k(nu)/x^k of the large-argument expansions, stopped at the smallest term"""
    mu = 4.0 * nu * nu
    terms = [1.0]
    for k in range(1, _MAX_TERMS):
        nxt = terms[-1] * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if abs(nxt) >= abs(terms[-1]):
            break
        terms.append(nxt)
        if abs(nxt) < 1e-17:
            break
    return terms


def _asymptotic_k(nu: float, x: float) -> float:
    terms = _expansion_terms(nu, x)
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * math.fsum(terms)


def bessel_asymptotic(kind: str, nu: float, x: float) -> float:
    """Large-argument expansion of J_nu, I_nu or K_nu ('j', 'i', 'k')"""
    _check_order(nu)
    _check_argument(x)
    if kind == "k":
        return _asymptotic_k(abs(nu), x)

    terms = _expansion_terms(nu, x)
    if kind == "j":
        even = math.fsum(t * (-1) ** (k // 2) for k, t in enumerate(terms) if k % 2 == 0)
        odd = math.fsum(t * (-1) ** (k // 2) for k, t in enumerate(terms) if k % 2 == 1)
        omega = x - 0.5 * nu * math.pi - 0.25 * math.pi
        return math.sqrt(2.0 / (math.pi * x)) * (even * math.cos(omega) - odd * math.sin(omega))

    if kind == "i":
        alternating = math.fsum(t * (-1) ** k for k, t in enumerate(terms))
        value = math.exp(x) / math.sqrt(2.0 * math.pi * x) * alternating
        if nu < 0.0:
            # I_-nu = I_nu + (2/pi) sin(nu pi) K_nu
            value += 2.0 / math.pi * math.sin(-nu * math.pi) * _asymptotic_k(-nu, x)
        return value

    raise DomainError(f"expansion kind must be 'j', 'i' or 'k', got {kind!r}")


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind J_nu(x), |nu| < 1, x > 0"""
    _check_order(nu)
    _check_argument(x)
    if x <= SERIES_SWITCH:
        return bessel_series("j", nu, x)
    return bessel_asymptotic("j", nu, x)


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function of the first kind I_nu(x), |nu| < 1, x > 0"""
    _check_order(nu)
    _check_argument(x)
    if x <= SERIES_SWITCH:
        return bessel_series("i", nu, x)
    return bessel_asymptotic("i", nu, x)


def k_from_i_difference(nu: float, x: float) -> float:
    """K_nu = pi / (2 sin(nu pi)) * (I_-nu - I_nu), from the series of I_+-nu"""
    _check_argument(x)
    if not 0.0 < nu < 1.0:
        raise DomainError(f"difference formula needs 0 < nu < 1, got nu={nu}")
    difference = bessel_series("i", -nu, x) - bessel_series("i", nu, x)
    return math.pi / (2.0 * math.sin(nu * math.pi)) * difference


def _k_quadrature(nu: float, x: float) -> float:
    """K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by the trapezoid rule"""
    # the integrand is analytic in a strip, so the uniform rule converges geometrically
    t_max = 2.0 * math.asinh(math.sqrt(0.5 * _QUAD_CUTOFF / x))
    t = np.arange(0.0, t_max + _QUAD_STEP, _QUAD_STEP)
    weights = np.exp(-2.0 * x * np.sinh(0.5 * t) ** 2) * np.cosh(nu * t)
    scaled = _QUAD_STEP * (float(np.sum(weights)) - 0.5 * float(weights[0]))
    return scaled * math.exp(-x)


def bessel_k(nu: float, x: float) -> float:
    """MacDonald function K_nu(x) for 0 < nu < 1 and x > 0"""
    _check_argument(x)
    if not 0.0 < nu < 1.0:
        raise DomainError(f"K_nu is only provided for 0 < nu < 1, got nu={nu}")
    if x <= K_SERIES_LIMIT:
        return k_from_i_difference(nu, x)
    if x <= K_ASYMPTOTIC_SWITCH:
        return _k_quadrature(nu, x)
    return _asymptotic_k(nu, x)


def bessel_j_prime(nu: float, x: float) -> float:
    """dJ_nu/dx through the recurrence that keeps the shifted order inside (-1, 1)"""
    _check_order(nu)
    if nu == 0.0:
        raise DomainError("J_0' needs J_1, which is outside the supported orders")
    if nu > 0.0:
        return bessel_j(nu - 1.0, x) - nu / x * bessel_j(nu, x)
    return -bessel_j(nu + 1.0, x) + nu / x * bessel_j(nu, x)


def bessel_i_prime(nu: float, x: float) -> float:
    """dI_nu/dx through the recurrence that keeps the shifted order inside (-1, 1)"""
    _check_order(nu)
    if nu == 0.0:
        raise DomainError("I_0' needs I_1, which is outside the supported orders")
    if nu > 0.0:
        return bessel_i(nu - 1.0, x) - nu / x * bessel_i(nu, x)
    return bessel_i(nu + 1.0, x) + nu / x * bessel_i(nu, x)


def bessel_k_prime(nu: float, x: float) -> float:
    """dK_nu/dx = -K_(1-nu) - (nu/x) K_nu"""
    return -bessel_k(1.0 - nu, x) - nu / x * bessel_k(nu, x)
