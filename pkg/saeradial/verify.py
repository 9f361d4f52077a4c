"""Self-verification suites: closed forms against the numerical oracle"""

import cmath
import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from saeradial.bound import SaeParam, bound_energy, bound_wavefunction
from saeradial.errors import DomainError
from saeradial.oracle import (
    ScatteringState,
    count_sign_changes,
    extract_phase,
    orthogonality_integral,
    scan_bound_roots,
    shoot_bound_energy,
)
from saeradial.potential import PotentialSpec, Regime, compute_p
from saeradial.scattering import (
    continuum_bracket,
    phase_shift,
    pole_energy,
    s_matrix,
    scattering_coeffs,
    standard_factor,
)
from saeradial.specfun import (
    bessel_i,
    bessel_i_prime,
    bessel_j,
    bessel_j_prime,
    bessel_k,
    bessel_k_prime,
)
from saeradial.sweep import SweepPool

logger = logging.getLogger(__name__)

BOUND_P_GRID = (0.10, 0.20, 0.25, 0.33, 0.45)
BOUND_TAU_GRID = (-0.5, -1.0, -2.0)
PHASE_CASES = tuple((k, tau) for tau in (-1.0, 0.0) for k in (0.5, 1.0, 2.0))
SEED = 20240611


@dataclass(frozen=True)
class CheckResult:
    suite: str
    case: str
    value: float
    tolerance: float
    passed: bool


def _below(suite: str, case: str, value: float, tolerance: float) -> CheckResult:
    return CheckResult(suite, case, value, tolerance, bool(value <= tolerance))


def distance_mod_pi(a: float, b: float) -> float:
    """|a - b| reduced to [0, pi/2]"""
    return abs((a - b + 0.5 * math.pi) % math.pi - 0.5 * math.pi)


def check_specfun(pool: SweepPool) -> List[CheckResult]:
    results = []
    xs = np.geomspace(0.1, 20.0, 60)
    for nu in (0.1, 0.25, 0.4):
        modified = max(
            abs(bessel_i(nu, x) * bessel_k_prime(nu, x) - bessel_i_prime(nu, x) * bessel_k(nu, x) + 1.0 / x)
            for x in xs
        )
        results.append(_below("specfun", f"wronskian I,K nu={nu}", modified, 1e-10))
        ordinary = max(
            abs(
                bessel_j(nu, x) * bessel_j_prime(-nu, x)
                - bessel_j_prime(nu, x) * bessel_j(-nu, x)
                + 2.0 * math.sin(nu * math.pi) / (math.pi * x)
            )
            for x in xs
        )
        results.append(_below("specfun", f"wronskian J,J- nu={nu}", ordinary, 1e-10))

    half_forms = []
    for x in (0.5, 1.0, math.pi / 2, 2.0, 5.0, 15.0, 30.0):
        root = math.sqrt(2.0 / (math.pi * x))
        half_forms.append(abs(bessel_j(0.5, x) - root * math.sin(x)))
        half_forms.append(abs(bessel_i(0.5, x) - root * math.sinh(x)) / (root * math.cosh(x)))
        half_forms.append(abs(bessel_i(-0.5, x) - root * math.cosh(x)) / (root * math.cosh(x)))
        closed_k = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
        half_forms.append(abs(bessel_k(0.5, x) - closed_k) / closed_k)
    results.append(_below("specfun", "half-integer closed forms", max(half_forms), 1e-12))
    return results


def expected_regime(l: int, two_m_v0: float) -> Regime:
    """Regime from the window inequalities alone"""
    lo = l * (l + 1)
    if two_m_v0 > lo + 0.25:
        return Regime.FALLING
    if two_m_v0 > lo:
        return Regime.TRANSITIVE
    return Regime.STANDARD_ONLY


def check_window(pool: SweepPool) -> List[CheckResult]:
    rng = np.random.default_rng(SEED)
    ls = rng.integers(0, 5, size=10_000)
    strengths = rng.uniform(0.0, 25.0, size=10_000)
    mismatches = 0
    for l, strength in zip(ls, strengths):
        found = compute_p(PotentialSpec.from_two_m_v0(float(strength), int(l))).regime
        if found != expected_regime(int(l), float(strength)):
            mismatches += 1
    return [_below("window", "10^4 random (l, 2mV0)", float(mismatches), 0.0)]


def _shoot_case(task: Tuple[float, float]) -> CheckResult:
    p, tau_value = task
    tau = SaeParam.finite(tau_value)
    closed = bound_energy(p, 1.0, tau).energy
    shot = shoot_bound_energy(p, 1.0, tau)
    error = abs(shot.energy - closed) / abs(closed)
    return _below("bound", f"P={p} tau={tau_value} nodes={shot.nodes}", error, 1e-6)


def check_bound(pool: SweepPool) -> List[CheckResult]:
    tasks = [(p, tau) for p in BOUND_P_GRID for tau in BOUND_TAU_GRID]
    return pool.map(_shoot_case, tasks)


def check_pole(pool: SweepPool) -> List[CheckResult]:
    results = []
    for p in BOUND_P_GRID:
        for tau_value in BOUND_TAU_GRID:
            tau = SaeParam.finite(tau_value)
            level = bound_energy(p, 1.0, tau).energy
            pole = pole_energy(tau, p, 1.0)
            results.append(_below("pole", f"P={p} tau={tau_value}", abs(pole - level) / abs(level), 1e-12))
    return results


def _phase_case(task: Tuple[float, float]) -> CheckResult:
    k, tau_value = task
    tau = SaeParam.finite(tau_value)
    closed = phase_shift(0, 0.25, k, tau).delta_total
    numeric = extract_phase(k, 0.25, tau, 0)
    return _below("phase", f"P=0.25 tau={tau_value} k={k} l=0", distance_mod_pi(numeric, closed), 1e-4)


def check_phase(pool: SweepPool) -> List[CheckResult]:
    results = pool.map(_phase_case, list(PHASE_CASES))
    standard = max(
        abs(phase_shift(0, 0.25, k, SaeParam.standard()).delta_total - (0 + 0.5 - 0.25) * math.pi / 2.0)
        for k in (0.5, 1.0, 2.0)
    )
    results.append(_below("phase", "tau=0 rows equal (l+1/2-P) pi/2", standard, 0.0))
    return results


def check_unitarity(pool: SweepPool) -> List[CheckResult]:
    rng = np.random.default_rng(SEED)
    ks = np.exp(rng.uniform(math.log(1e-2), math.log(1e2), size=100))
    taus = rng.uniform(-10.0, 10.0, size=100)
    ps = rng.uniform(0.01, 0.49, size=100)
    modulus = max(
        abs(abs(s_matrix(0, float(p), float(k), SaeParam.finite(float(t)))) - 1.0)
        for k, t, p in zip(ks, taus, ps)
    )
    results = [_below("unitarity", "|S| = 1 on 100 random (k, tau, P)", modulus, 1e-12)]

    limits = []
    duality = []
    for l in (0, 1, 2):
        for p in (0.1, 0.25, 0.4):
            standard = cmath.exp(2j * (l + 0.5 - p) * math.pi / 2.0)
            additional = cmath.exp(2j * (l + 0.5 + p) * math.pi / 2.0)
            limits.append(abs(s_matrix(l, p, 1.3, SaeParam.standard()) - standard))
            limits.append(abs(s_matrix(l, p, 1.3, SaeParam.plus_infinity()) - additional))
            limits.append(abs(s_matrix(l, p, 1.3, SaeParam.minus_infinity()) - additional))
            # the tau = inf value is the tau = 0 formula with P -> -P
            duality.append(abs(standard_factor(l, -p) - s_matrix(l, p, 1.3, SaeParam.plus_infinity())))
    results.append(_below("unitarity", "tau=0 and tau=+-inf limits", max(limits), 1e-12))
    results.append(_below("unitarity", "P -> -P duality", max(duality), 1e-12))
    return results


def check_orthogonality(pool: SweepPool) -> List[CheckResult]:
    p = 0.25
    tau = SaeParam.finite(-1.0)
    state = bound_energy(p, 1.0, tau)
    r_max = 40.0 / state.kappa
    matched = orthogonality_integral(state, ScatteringState(k=1.0, p=p, tau=tau), r_max)
    mismatched = orthogonality_integral(state, ScatteringState(k=1.0, p=p, tau=SaeParam.standard()), r_max)
    bracket = continuum_bracket(scattering_coeffs(tau, p, 1.0), scattering_coeffs(tau, p, 2.0), 1.0, 2.0, p)
    control = CheckResult("orthogonality", "mismatched tau overlap exceeds 1e-2", abs(mismatched), 1e-2, abs(mismatched) > 1e-2)
    return [
        _below("orthogonality", "bound vs scattering, equal tau", abs(matched), 1e-4),
        control,
        _below("orthogonality", "continuum bracket, equal tau", abs(bracket), 1e-12),
    ]


def check_uniqueness(pool: SweepPool) -> List[CheckResult]:
    p = 0.25
    tau = SaeParam.finite(-1.0)
    state = bound_energy(p, 1.0, tau)
    energies = -np.geomspace(abs(state.energy) * 1e-2, abs(state.energy) * 1e2, 200)
    roots = scan_bound_roots(p, 1.0, tau, energies)
    radii = np.geomspace(1e-4 / state.kappa, 30.0 / state.kappa, 1000)
    nodes = count_sign_changes([bound_wavefunction(state, 1.0, r) for r in radii])
    return [
        CheckResult("uniqueness", "matching roots over 4 decades", float(len(roots)), 1.0, len(roots) == 1),
        _below("uniqueness", "bound wave function nodes", float(nodes), 0.0),
    ]


SUITES: Dict[str, Callable[[SweepPool], List[CheckResult]]] = {
    "specfun": check_specfun,
    "window": check_window,
    "bound": check_bound,
    "pole": check_pole,
    "phase": check_phase,
    "unitarity": check_unitarity,
    "orthogonality": check_orthogonality,
    "uniqueness": check_uniqueness,
}


def run_suites(names: Sequence[str], workers: Optional[int] = None) -> List[CheckResult]:
    """Run the named suites ('all' expands to every suite) in a fixed order"""
    selected = list(SUITES) if "all" in names else list(dict.fromkeys(names))
    unknown = [name for name in selected if name not in SUITES]
    if unknown:
        raise DomainError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)} or all")
    pool = SweepPool(workers)
    results: List[CheckResult] = []
    for name in selected:
        start = time.time()
        rows = SUITES[name](pool)
        failed = sum(not row.passed for row in rows)
        logger.info(f"suite {name}: {len(rows)} checks, {failed} failed in {time.time() - start:.1f}s")
        results.extend(rows)
    return results
