"""Numerical oracle: direct integration of the radial equation

    u'' + [q - (P^2 - 1/4) / r^2] u = 0,    q = 2 m E,  u = r R

Integration starts at r_min from the two-term small-r family
u = a_st r^(1/2+P) + a_add r^(1/2-P) with a_add / a_st = tau (Frobenius
series in q r^2), runs a fixed-step RK4 in t = ln r up to r_join and a
fixed-step RK4 in r beyond. Nothing here uses the closed-form level, pole or
phase formulas; the results are what those formulas are checked against.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from saeradial.bound import BoundaryCoeffs, BoundState, SaeParam
from saeradial.config import get_config_float, get_config_int
from saeradial.errors import (
    DegenerateError,
    DomainError,
    FitError,
    NoSignChange,
    StiffnessError,
)
from saeradial.potential import PParameter, Regime, require_transitive
from saeradial.specfun import bessel_i, bessel_k, bessel_k_prime, gamma_real

logger = logging.getLogger(__name__)

# RK4 local error ~ (rate h)^5 / 120 stays below 1e-10 for rate h <= 0.025
MAX_STEP_RATE = 0.025
SERIES_REGION = 1e-4
FIT_TOLERANCE = 1e-4
MIN_PHASE = 50.0 * math.pi

_FROBENIUS_TERMS = 4
_HANKEL_TERMS = 7


@dataclass(frozen=True)
class GridSpec:
    """Log segment [r_min, r_join] in t = ln r, then a linear segment [r_join, r_max]"""
    r_min: float
    r_join: float
    r_max: float
    log_steps_per_efold: int = 200
    linear_step: float = 0.02

    def __post_init__(self):
        if not 0 < self.r_min < self.r_join <= self.r_max:
            raise DomainError(
                f"grid needs 0 < r_min < r_join <= r_max, got "
                f"({self.r_min}, {self.r_join}, {self.r_max})"
            )
        if self.log_steps_per_efold < 1:
            raise DomainError(f"log_steps_per_efold must be at least 1, got {self.log_steps_per_efold}")
        if not self.linear_step > 0:
            raise DomainError(f"linear_step must be positive, got {self.linear_step}")

    @classmethod
    def with_scale(cls, scale: float, r_max: float, c: float = 0.0) -> "GridSpec":
        """Grid for a problem whose only length is `scale`; c = P^2 - 1/4 tightens the outer step"""
        if not scale > 0:
            raise DomainError(f"grid scale must be positive, got {scale}")
        fraction = get_config_float("linear_step_fraction")
        steps = get_config_int("log_steps_per_efold")
        # the outer rate is sqrt(1 + |c|) / scale; the default fraction already covers |c| <= 1/4
        step = fraction * scale / math.sqrt(max(1.0, 0.8 * (1.0 + abs(c))))
        return cls(
            r_min=1e-3 * scale,
            r_join=scale,
            r_max=r_max,
            log_steps_per_efold=steps,
            linear_step=step,
        )

    @classmethod
    def for_bound(cls, kappa: float, p: float = 0.0) -> "GridSpec":
        """Grid out to the matching radius 10 / kappa"""
        if not kappa > 0:
            raise DomainError(f"kappa must be positive, got {kappa}")
        return cls.with_scale(1.0 / kappa, 10.0 / kappa, c=p * p - 0.25)

    @classmethod
    def for_scattering(cls, k: float, r_max: Optional[float] = None, p: float = 0.0) -> "GridSpec":
        """Grid covering `phase_oscillations` wavelengths unless r_max is given"""
        if not k > 0:
            raise DomainError(f"momentum must be positive, got k={k}")
        if r_max is None:
            r_max = 2.0 * math.pi * get_config_int("phase_oscillations") / k
        return cls.with_scale(1.0 / k, r_max, c=p * p - 0.25)


@dataclass(frozen=True)
class RadialGrid:
    """Reduced wave function u = rR and u' sampled on increasing radii"""
    r: np.ndarray
    u: np.ndarray
    du: np.ndarray
    energy: float
    p: float

    def __post_init__(self):
        if len(self.r) < 2:
            raise DomainError("a radial grid needs at least two points")
        if not np.all(np.diff(self.r) > 0):
            raise DomainError("grid radii must be strictly increasing")

    @property
    def r_min(self) -> float:
        return float(self.r[0])

    @property
    def r_max(self) -> float:
        return float(self.r[-1])

    @property
    def n(self) -> int:
        return len(self.r)

    def sign_changes(self) -> int:
        return count_sign_changes(self.u)

    def wronskian(self, other: "RadialGrid") -> np.ndarray:
        """u1 u2' - u2 u1' against a solution sampled on the same radii"""
        if self.n != other.n or not np.array_equal(self.r, other.r):
            raise DomainError("wronskian needs two solutions on the same grid")
        return self.u * other.du - other.u * self.du


@dataclass(frozen=True)
class ShootResult:
    energy: float
    iterations: int
    residual: float
    nodes: int = 0


@dataclass(frozen=True)
class ScatteringState:
    """A continuum state at momentum k for the orthogonality integrals"""
    k: float
    p: float
    tau: SaeParam
    mass: float = 1.0

    def __post_init__(self):
        if not self.k > 0:
            raise DomainError(f"momentum must be positive, got k={self.k}")
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass}")

    @property
    def energy(self) -> float:
        return self.k * self.k / (2.0 * self.mass)


def count_sign_changes(values: Sequence[float]) -> int:
    signs = np.sign(np.asarray(values, dtype=float))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def start_coeffs(tau: SaeParam) -> Tuple[float, float]:
    """(a_st, a_add) of the integrated solution: (1, tau), or (0, +-1) for infinite tau"""
    if tau.is_infinite:
        return 0.0, float(tau.infinity)
    return 1.0, tau.tau


def _exponent(p: float, tau: SaeParam) -> float:
    """Accept transitive P, and P >= 1/2 only for the pure standard solution"""
    if p < 0:
        raise DomainError(f"P must be non-negative, got {p}")
    regime = PParameter.of(p).regime
    if regime == Regime.STANDARD_ONLY and tau.is_standard:
        return p
    return require_transitive(p)


def _frobenius(s: float, P_sign: float, q: float, r: float) -> Tuple[float, float]:
    """r^s sum c_n r^(2n) and its derivative, c_n = -q c_(n-1) / (4 n (n +- P))"""
    coeff = 1.0
    value = 0.0
    slope = 0.0
    for n in range(_FROBENIUS_TERMS):
        if n > 0:
            coeff *= -q / (4.0 * n * (n + P_sign))
        power = s + 2.0 * n
        value += coeff * r ** power
        slope += coeff * power * r ** (power - 1.0)
    return value, slope


def _initial_values(P: float, q: float, a_st: float, a_add: float, r: float) -> Tuple[float, float]:
    u_plus, du_plus = _frobenius(0.5 + P, P, q, r)
    u = a_st * u_plus
    du = a_st * du_plus
    if a_add != 0.0:
        u_minus, du_minus = _frobenius(0.5 - P, -P, q, r)
        u += a_add * u_minus
        du += a_add * du_minus
    return u, du


def _check_rate(rate: float, step: float, segment: str):
    if not math.isfinite(rate * step) or rate * step > MAX_STEP_RATE:
        raise StiffnessError(
            f"{segment} step {step:.3g} with local rate {rate:.3g} exceeds the truncation bound "
            f"(rate*h = {rate * step:.3g} > {MAX_STEP_RATE})"
        )


def _integrate(P: float, q: float, a_st: float, a_add: float, grid: GridSpec):
    c = P * P - 0.25
    if abs(q) * grid.r_min ** 2 >= SERIES_REGION:
        raise DomainError(
            f"r_min={grid.r_min} lies outside the series region (|2mE| r_min^2 = {abs(q) * grid.r_min ** 2:.3g})"
        )

    t0, t1 = math.log(grid.r_min), math.log(grid.r_join)
    n_log = max(1, math.ceil(grid.log_steps_per_efold * (t1 - t0)))
    h = (t1 - t0) / n_log
    _check_rate(0.5 + math.sqrt(P * P + abs(q) * grid.r_join ** 2), h, "log")

    length = grid.r_max - grid.r_join
    n_lin = math.ceil(length / grid.linear_step) if length > 0 else 0
    dr = length / n_lin if n_lin else 0.0
    if n_lin:
        _check_rate(math.sqrt(abs(q) + abs(c) / grid.r_join ** 2), dr, "linear")

    u, du = _initial_values(P, q, a_st, a_add, grid.r_min)
    w = grid.r_min * du
    rs = [grid.r_min]
    us = [u]
    dus = [du]

    # y = (u, w = r u'), dy/dt = (w, w + (c - q r^2) u)
    def log_rhs(t: float, u: float, w: float) -> Tuple[float, float]:
        return w, w + (c - q * math.exp(2.0 * t)) * u

    for i in range(n_log):
        t = t0 + i * h
        k1u, k1w = log_rhs(t, u, w)
        k2u, k2w = log_rhs(t + 0.5 * h, u + 0.5 * h * k1u, w + 0.5 * h * k1w)
        k3u, k3w = log_rhs(t + 0.5 * h, u + 0.5 * h * k2u, w + 0.5 * h * k2w)
        k4u, k4w = log_rhs(t + h, u + h * k3u, w + h * k3w)
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        r = grid.r_join if i == n_log - 1 else math.exp(t + h)
        rs.append(r)
        us.append(u)
        dus.append(w / r)

    # y = (u, u'), u'' = (c / r^2 - q) u
    v = dus[-1]
    for i in range(n_lin):
        r = grid.r_join + i * dr
        k1u, k1v = v, (c / (r * r) - q) * u
        rm = r + 0.5 * dr
        k2u, k2v = v + 0.5 * dr * k1v, (c / (rm * rm) - q) * (u + 0.5 * dr * k1u)
        k3u, k3v = v + 0.5 * dr * k2v, (c / (rm * rm) - q) * (u + 0.5 * dr * k2u)
        re = r + dr
        k4u, k4v = v + dr * k3v, (c / (re * re) - q) * (u + dr * k3u)
        u += dr / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v += dr / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        rs.append(grid.r_max if i == n_lin - 1 else grid.r_join + (i + 1) * dr)
        us.append(u)
        dus.append(v)

    if not (math.isfinite(u) and math.isfinite(v if n_lin else w)):
        raise StiffnessError("integration produced a non-finite value")
    logger.debug(f"integrated P={P} q={q!r}: {n_log} log + {n_lin} linear steps")
    return np.array(rs), np.array(us), np.array(dus)


def integrate_radial(
    energy: float,
    p: float,
    mass: float,
    tau: SaeParam,
    grid: Optional[GridSpec] = None,
) -> RadialGrid:
    """
    Integrate u from the small-r family fixed by tau

    Without an explicit grid the length scale is 1/sqrt(|2mE|), which needs
    E != 0.

    Raises:
        RegimeError: Critical or Falling P, or P >= 1/2 with tau != 0
        StiffnessError: the grid is too coarse for the truncation bound
    """
    P = _exponent(p, tau)
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass}")
    q = 2.0 * mass * energy
    if grid is None:
        if q == 0.0:
            raise DomainError("zero energy has no natural length; pass an explicit grid")
        scale = 1.0 / math.sqrt(abs(q))
        far = 10.0 * scale if q < 0 else 2.0 * math.pi * get_config_int("phase_oscillations") * scale
        grid = GridSpec.with_scale(scale, far, c=P * P - 0.25)
    a_st, a_add = start_coeffs(tau)
    r, u, du = _integrate(P, q, a_st, a_add, grid)
    return RadialGrid(r=r, u=u, du=du, energy=energy, p=P)


def _kappa_of(energy: float, mass: float) -> float:
    if not energy < 0:
        raise DomainError(f"bound-state energies must be negative, got E={energy}")
    return math.sqrt(-2.0 * mass * energy)


def _decaying_solution(P: float, kappa: float, r: float) -> Tuple[float, float]:
    """L = sqrt(r) K_P(kappa r) and L'"""
    x = kappa * r
    k_value = bessel_k(P, x)
    root = math.sqrt(r)
    return root * k_value, k_value / (2.0 * root) + root * kappa * bessel_k_prime(P, x)


def _bound_mismatch(energy: float, P: float, mass: float, tau: SaeParam):
    """
    Wronskian of the integrated u with the decaying solution, scaled to O(1)

    u' L - u L' with L = sqrt(r) K_P(kappa r) is r-independent and equals
    the coefficient of the growing solution sqrt(r) I_P in u. With a_st = 1
    the returned value reduces to 1 + tau Gamma(1-P)/Gamma(1+P) (kappa/2)^(2P)
    and has a single sign change across the level.
    """
    kappa = _kappa_of(energy, mass)
    grid = GridSpec.for_bound(kappa, P)
    solution = integrate_radial(energy, P, mass, tau, grid)
    r_match = solution.r_max
    decay, decay_slope = _decaying_solution(P, kappa, r_match)
    u, du = solution.u[-1], solution.du[-1]
    wronskian = du * decay - u * decay_slope
    scale = (0.5 * kappa) ** P / gamma_real(1.0 + P)
    return wronskian * scale, solution, kappa


def matching_function(energy: float, p: float, mass: float, tau: SaeParam) -> float:
    """Shooting mismatch at the matching radius 10/kappa; zero exactly at a level"""
    P = require_transitive(p)
    value, _, _ = _bound_mismatch(energy, P, mass, tau)
    return value


def _decaying_nodes(solution: RadialGrid, P: float, kappa: float, growing: float) -> int:
    """Sign changes of u with its growing sqrt(r) I_P part removed"""
    growth = np.array([math.sqrt(r) * bessel_i(P, kappa * r) for r in solution.r])
    return count_sign_changes(solution.u - growing * growth)


def find_bound_bracket(
    p: float,
    mass: float,
    tau: SaeParam,
    kappa_range: Tuple[float, float] = (1e-3, 1e3),
    samples: int = 25,
) -> Tuple[float, float]:
    """
    Locate an energy bracket of the level by a log scan in kappa

    Raises:
        NoSignChange: the matching function keeps one sign over the scan
    """
    P = require_transitive(p)
    kappas = np.geomspace(kappa_range[0], kappa_range[1], samples)
    previous = None
    for kappa in kappas:
        energy = -kappa * kappa / (2.0 * mass)
        value, _, _ = _bound_mismatch(energy, P, mass, tau)
        if previous is not None and previous[1] * value < 0:
            logger.debug(f"bracket found between kappa={previous[0]:.6g} and kappa={kappa:.6g}")
            lo = -kappa * kappa / (2.0 * mass)
            hi = -previous[0] * previous[0] / (2.0 * mass)
            return lo, hi
        previous = (kappa, value)
    raise NoSignChange(
        f"no level for P={P} tau={tau} with kappa in [{kappa_range[0]:g}, {kappa_range[1]:g}]"
    )


def shoot_bound_energy(
    p: float,
    mass: float,
    tau: SaeParam,
    bracket: Optional[Tuple[float, float]] = None,
) -> ShootResult:
    """
    Refine the bound level by Brent's method on the matching function

    Raises:
        NoSignChange: if the bracket does not straddle a level
    """
    P = require_transitive(p)
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass}")
    if bracket is None:
        bracket = find_bound_bracket(P, mass, tau)
    lo, hi = sorted(bracket)
    if not hi < 0:
        raise DomainError(f"bracket must lie at negative energies, got ({lo}, {hi})")

    f_lo = matching_function(lo, P, mass, tau)
    f_hi = matching_function(hi, P, mass, tau)
    if f_lo * f_hi > 0:
        raise NoSignChange(f"matching function has one sign on [{lo}, {hi}]")

    rtol = get_config_float("shoot_rtol")
    energy, info = brentq(
        matching_function,
        lo,
        hi,
        args=(P, mass, tau),
        xtol=1e-14 * abs(hi),
        rtol=rtol,
        full_output=True,
    )
    value, solution, kappa = _bound_mismatch(energy, P, mass, tau)
    growing = value * gamma_real(1.0 + P) / (0.5 * kappa) ** P
    nodes = _decaying_nodes(solution, P, kappa, growing)
    logger.info(
        f"shot level P={P} tau={tau}: E={energy!r} after {info.iterations} iterations, nodes={nodes}"
    )
    return ShootResult(energy=energy, iterations=info.iterations, residual=abs(value), nodes=nodes)


def scan_bound_roots(p: float, mass: float, tau: SaeParam, energies: Sequence[float]) -> List[float]:
    """
    Brute-force scan of the matching function; one root estimate per sign change

    Roots are located by linear interpolation between neighbouring samples.
    """
    P = require_transitive(p)
    grid = sorted(float(e) for e in energies)
    if len(grid) < 2:
        raise DomainError("the scan needs at least two energies")
    values = [matching_function(e, P, mass, tau) for e in grid]
    roots = []
    for (e0, f0), (e1, f1) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if f0 == 0.0:
            roots.append(e0)
        elif f0 * f1 < 0:
            roots.append(e0 - f0 * (e1 - e0) / (f1 - f0))
    if values[-1] == 0.0:
        roots.append(grid[-1])
    logger.info(f"scan over {len(grid)} energies found {len(roots)} root(s)")
    return roots


def _hankel_coeffs(P: float) -> List[float]:
    """a_n(P) = prod_(j<=n) (4P^2 - (2j-1)^2) / (n! 8^n)"""
    mu = 4.0 * P * P
    coeffs = [1.0]
    for n in range(1, _HANKEL_TERMS):
        coeffs.append(coeffs[-1] * (mu - (2 * n - 1) ** 2) / (8.0 * n))
    return coeffs


def _outer_basis(P: float, k: float, l: int, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Real solutions of the outer equation that tend to sin and cos of kr - l pi/2"""
    x = k * r
    series = np.zeros_like(x, dtype=complex)
    for n, a_n in enumerate(_hankel_coeffs(P)):
        series = series + (1j ** n) * a_n / x ** n
    wave = np.exp(1j * (x - 0.5 * l * math.pi)) * series
    return wave.imag, wave.real


def extract_phase(
    k: float,
    p: float,
    tau: SaeParam,
    l: int,
    r_max: Optional[float] = None,
) -> float:
    """
    Phase shift mod pi from the large-r form of the integrated solution

    u = alpha S(r) + beta C(r) is fitted by least squares over the last
    `fit_oscillations` wavelengths, where S and C include the 1/(kr)
    corrections of the r^-2 tail; delta = atan2(beta, alpha).

    Raises:
        DomainError: k r_max < 50 pi
        FitError: the two-function fit leaves a residual above 1e-4 of the amplitude
    """
    if not k > 0:
        raise DomainError(f"momentum must be positive, got k={k}")
    if l < 0 or int(l) != l:
        raise DomainError(f"l must be a non-negative integer, got {l}")
    P = _exponent(p, tau)
    grid = GridSpec.for_scattering(k, r_max, P)
    if k * grid.r_max < MIN_PHASE:
        raise DomainError(f"k r_max = {k * grid.r_max:.4g} is below 50 pi; too few oscillations")

    solution = integrate_radial(0.5 * k * k, P, 1.0, tau, grid)
    window_start = grid.r_max - 2.0 * math.pi * get_config_int("fit_oscillations") / k
    mask = solution.r >= window_start
    r = solution.r[mask]
    u = solution.u[mask]
    sine, cosine = _outer_basis(P, k, l, r)
    design = np.column_stack([sine, cosine])
    (alpha, beta), *_ = np.linalg.lstsq(design, u, rcond=None)

    amplitude = math.hypot(alpha, beta)
    rms = float(np.sqrt(np.mean((design @ np.array([alpha, beta]) - u) ** 2)))
    if amplitude == 0.0 or rms > FIT_TOLERANCE * amplitude:
        raise FitError(f"asymptotic fit residual {rms:.3g} exceeds 1e-4 of amplitude {amplitude:.3g}")
    delta = float(np.mod(math.atan2(beta, alpha), math.pi))
    logger.debug(f"extracted phase k={k} P={P} tau={tau} l={l}: delta={delta!r} (rms/amp={rms / amplitude:.2g})")
    return delta


StateLike = Union[BoundState, ScatteringState]


def _boundary_and_edge(state: StateLike, r_max: float) -> Tuple[BoundaryCoeffs, float, float, float]:
    """Small-r coefficients, q = 2mE, and (u, u') at r_max"""
    if isinstance(state, BoundState):
        P = require_transitive(state.p)
        # u = -(2/pi) sin(pi P) sqrt(r) K_P(kappa r), i.e. A = 1, B = -1
        prefactor = -(2.0 / math.pi) * math.sin(math.pi * P)
        decay, decay_slope = _decaying_solution(P, state.kappa, r_max)
        q = -state.kappa * state.kappa
        return state.boundary_coeffs(), q, prefactor * decay, prefactor * decay_slope

    P = require_transitive(state.p)
    grid = GridSpec.for_scattering(state.k, r_max, P)
    solution = integrate_radial(state.energy, P, state.mass, state.tau, grid)
    a_st, a_add = start_coeffs(state.tau)
    q = 2.0 * state.mass * state.energy
    return BoundaryCoeffs(a_st, a_add), q, float(solution.u[-1]), float(solution.du[-1])


def orthogonality_integral(state_a: StateLike, state_b: StateLike, r_max: float) -> float:
    """
    Truncated overlap int_0^r_max u_a u_b dr in Wronskian form

        [W(r_max) - W(0)] / (q_a - q_b),   W = u_a u_b' - u_b u_a'

    The bound partner is taken in closed form. W(0) = -2P (a_st^a a_add^b -
    a_st^b a_add^a) follows from the small-r coefficients and is zero when the
    two states share one tau.

    Raises:
        DegenerateError: equal energies
    """
    if isinstance(state_a, BoundState) and isinstance(state_b, BoundState):
        raise DomainError("the overlap needs at least one scattering state")
    if not r_max > 0:
        raise DomainError(f"r_max must be positive, got {r_max}")
    p_a = require_transitive(state_a.p)
    p_b = require_transitive(state_b.p)
    if not math.isclose(p_a, p_b, rel_tol=1e-12):
        raise DomainError(f"both states must belong to one partial wave, got P={p_a} and P={p_b}")

    coeffs_a, q_a, u_a, du_a = _boundary_and_edge(state_a, r_max)
    coeffs_b, q_b, u_b, du_b = _boundary_and_edge(state_b, r_max)
    if q_a == q_b:
        raise DegenerateError("the Wronskian form needs two distinct energies")

    outer = u_a * du_b - u_b * du_a
    inner = -2.0 * p_a * (coeffs_a.a_st * coeffs_b.a_add - coeffs_b.a_st * coeffs_a.a_add)
    value = (outer - inner) / (q_a - q_b)
    logger.debug(f"overlap at r_max={r_max}: W(R)={outer!r} W(0)={inner!r} -> {value!r}")
    return value
