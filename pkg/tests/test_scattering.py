"""Test the S-matrix, the phase shifts and the bound-state pole"""

import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saeradial.bound import SaeParam, bound_energy
from saeradial.errors import DegenerateError, DomainError, NoPole, RegimeError
from saeradial.oracle import GridSpec, integrate_radial
from saeradial.scattering import (
    PartialWave,
    ScatteringCoeffs,
    continued_denominator,
    continuum_bracket,
    lambda_of_k,
    phase_shift,
    pole_energy,
    radial_scattering_wf,
    s_matrix,
    scattering_coeffs,
    standard_factor,
)

TAUS = st.floats(min_value=-10.0, max_value=10.0)
PS = st.floats(min_value=0.01, max_value=0.49)
KS = st.floats(min_value=1e-2, max_value=1e2)


def test_lambda_reference():
    """Test lambda at P = 1/4, tau = -1, k = 2: -Gamma(3/4) / Gamma(5/4)"""
    expected = -float(mpmath.gamma(0.75) / mpmath.gamma(1.25))
    assert lambda_of_k(SaeParam.finite(-1.0), 0.25, 2.0).lam == pytest.approx(expected, rel=1e-13)
    assert lambda_of_k(SaeParam.standard(), 0.25, 2.0).lam == 0.0


def test_lambda_growth_and_sign():
    """Test lambda ~ k^(2P) carries the sign of tau and vanishes at k -> 0"""
    tau = SaeParam.finite(-1.0)
    values = [lambda_of_k(tau, 0.25, k).lam for k in np.geomspace(1e-6, 1e3, 40)]
    assert all(v < 0 for v in values)
    assert all(abs(b) > abs(a) for a, b in zip(values, values[1:]))
    assert abs(lambda_of_k(tau, 0.25, 1e-12).lam) < 1e-5
    assert lambda_of_k(SaeParam.finite(0.5), 0.25, 1.0).lam > 0
    with pytest.raises(DomainError):
        lambda_of_k(SaeParam.plus_infinity(), 0.25, 1.0)
    with pytest.raises(DomainError):
        lambda_of_k(tau, 0.25, 0.0)


@pytest.mark.parametrize("l", [0, 1, 3])
@pytest.mark.parametrize("p", [0.1, 0.25, 0.4])
def test_s_matrix_limits(l, p):
    """Test tau = 0 gives exp(i(l+1/2-P)pi), tau = +-inf gives exp(i(l+1/2+P)pi)"""
    standard = cmath.exp(1j * (l + 0.5 - p) * math.pi)
    additional = cmath.exp(1j * (l + 0.5 + p) * math.pi)
    for k in (0.01, 1.0, 50.0):
        assert abs(s_matrix(l, p, k, SaeParam.standard()) - standard) < 1e-12
        assert abs(s_matrix(l, p, k, SaeParam.plus_infinity()) - additional) < 1e-12
        assert abs(s_matrix(l, p, k, SaeParam.minus_infinity()) - additional) < 1e-12
    # the additional limit is the standard one with P -> -P
    assert abs(standard_factor(l, -p) - additional) < 1e-12


@settings(max_examples=300, deadline=None)
@given(k=KS, tau=TAUS, p=PS, l=st.integers(min_value=0, max_value=3))
def test_unitarity(k, tau, p, l):
    """Property: |S| = 1 and S = exp(2 i delta) for real k"""
    wave = phase_shift(l, p, k, SaeParam.finite(tau))
    assert abs(abs(wave.s_matrix) - 1.0) < 1e-12
    assert abs(cmath.exp(2j * wave.delta_total) - wave.s_matrix) < 1e-12


def test_unitarity_random_sample():
    """Test 100 seeded (k, tau, P) triples, k log-uniform over four decades"""
    rng = np.random.default_rng(11)
    ks = np.exp(rng.uniform(math.log(1e-2), math.log(1e2), size=100))
    taus = rng.uniform(-10.0, 10.0, size=100)
    ps = rng.uniform(0.01, 0.49, size=100)
    for k, tau, p in zip(ks, taus, ps):
        assert abs(abs(s_matrix(0, float(p), float(k), SaeParam.finite(float(tau)))) - 1.0) < 1e-12


def test_phase_shift_reference():
    """Test delta at P = 1/4, tau = -1, k = 2 against the atan2 closed form"""
    lam = -float(mpmath.gamma(0.75) / mpmath.gamma(1.25))
    wave = phase_shift(0, 0.25, 2.0, SaeParam.finite(-1.0))
    expected = math.atan2(lam * math.sin(math.pi / 4), 1 + lam * math.cos(math.pi / 4))
    assert wave.delta_sae == pytest.approx(expected, rel=1e-12)
    assert wave.delta_standard == pytest.approx(0.25 * math.pi / 2)
    assert wave.delta_total == pytest.approx(wave.delta_standard + wave.delta_sae)


def test_standard_quantum_mechanics_is_scale_invariant():
    """Test tau = 0: delta_sae = 0 at every k"""
    for k in (1e-3, 0.5, 1.0, 2.0, 1e3):
        wave = phase_shift(0, 0.25, k, SaeParam.standard())
        assert wave.delta_sae == 0.0
        assert wave.delta_total == (0.5 - 0.25) * math.pi / 2


def test_extension_breaks_scale_invariance():
    """Test that delta_sae depends on k for tau != 0 and vanishes as k -> 0"""
    tau = SaeParam.finite(-1.0)
    assert phase_shift(0, 0.25, 1.0, tau).delta_sae != pytest.approx(phase_shift(0, 0.25, 2.0, tau).delta_sae)
    assert abs(phase_shift(0, 0.25, 1e-12, tau).delta_sae) < 1e-5


def test_phase_shift_continuous_in_k():
    """Test delta_sae has no 2 pi jumps where 1 + lam cos(pi P) changes sign"""
    tau = SaeParam.finite(-1.0)
    ks = np.linspace(0.5, 5.0, 2000)
    deltas = [phase_shift(0, 0.25, float(k), tau).delta_sae for k in ks]
    steps = np.abs(np.diff(deltas))
    assert steps.max() < 0.01
    assert deltas[0] > -math.pi / 2 > deltas[-1]


def test_infinite_tau_phase():
    """Test delta_sae = pi P at +inf, pi P - pi at -inf, approached continuously"""
    p = 0.25
    plus = phase_shift(0, p, 1.0, SaeParam.plus_infinity())
    minus = phase_shift(0, p, 1.0, SaeParam.minus_infinity())
    assert plus.delta_sae == pytest.approx(math.pi * p)
    assert minus.delta_sae == pytest.approx(math.pi * p - math.pi)
    for wave in (plus, minus):
        assert abs(cmath.exp(2j * wave.delta_total) - wave.s_matrix) < 1e-12
    assert phase_shift(0, p, 1.0, SaeParam.finite(1e12)).delta_sae == pytest.approx(math.pi * p, abs=1e-5)
    assert phase_shift(0, p, 1.0, SaeParam.finite(-1e12)).delta_sae == pytest.approx(math.pi * p - math.pi, abs=1e-5)


def test_partial_wave_character():
    """Test the sign classification of the total phase"""
    assert phase_shift(0, 0.25, 1.0, SaeParam.standard()).character == "attractive"
    repulsive = PartialWave(l=0, p=0.25, k=1.0, s_matrix=1j, delta_total=-0.1, delta_standard=0.2, delta_sae=-0.3)
    assert repulsive.character == "repulsive"


@pytest.mark.parametrize("p", [0.1, 0.2, 0.25, 0.33, 0.45])
@pytest.mark.parametrize("tau_value", [-0.5, -1.0, -2.0])
def test_pole_matches_bound_level(p, tau_value):
    """Test the continued S-matrix pole sits at the closed-form level"""
    tau = SaeParam.finite(tau_value)
    state = bound_energy(p, 1.0, tau)
    assert pole_energy(tau, p, 1.0) == pytest.approx(state.energy, rel=1e-12)
    assert abs(continued_denominator(tau, p, state.kappa)) < 1e-12


def test_pole_scaling():
    """Test E(-2) / E(-1) = 2^(-1/P) at P = 1/4"""
    ratio = pole_energy(SaeParam.finite(-2.0), 0.25, 1.0) / pole_energy(SaeParam.finite(-1.0), 0.25, 1.0)
    assert ratio == pytest.approx(2.0 ** -4, rel=1e-12)


@pytest.mark.parametrize("tau", [SaeParam.standard(), SaeParam.finite(1.0), SaeParam.plus_infinity(), SaeParam.minus_infinity()])
def test_no_pole(tau):
    with pytest.raises(NoPole):
        pole_energy(tau, 0.25, 1.0)


def test_pole_outside_double_range():
    """Test a pole too deep for a double raises DomainError instead of overflowing"""
    with pytest.raises(DomainError, match="outside double range"):
        pole_energy(SaeParam.finite(-0.5), 1e-4, 1.0)
    with pytest.raises(DomainError, match="outside double range"):
        pole_energy(SaeParam.finite(-1e-70), 0.1, 1.0)


def test_regime_checked():
    """Test the continuum formulas insist on 0 < P < 1/2"""
    with pytest.raises(RegimeError):
        s_matrix(0, 0.5, 1.0, SaeParam.standard())
    with pytest.raises(RegimeError):
        pole_energy(SaeParam.finite(-1.0), 0.0, 1.0)
    with pytest.raises(DomainError):
        s_matrix(-1, 0.25, 1.0, SaeParam.standard())


@pytest.mark.parametrize("tau", [SaeParam.finite(-1.0), SaeParam.finite(0.7), SaeParam.standard()])
def test_scattering_coeffs(tau):
    """Test B / A = lambda, the 2 pi normalisation and tau recovered from the small-r coefficients"""
    p, k = 0.25, 1.7
    coeffs = scattering_coeffs(tau, p, k)
    lam = lambda_of_k(tau, p, k).lam
    assert coeffs.b == pytest.approx(lam * coeffs.a, rel=1e-14, abs=1e-300)
    bracket = lam * lam + 2 * lam * math.cos(math.pi * p) + 1
    assert coeffs.a ** 2 * bracket == pytest.approx(2 * math.pi, rel=1e-13)
    assert coeffs.boundary_coeffs(k, p).tau.tau == pytest.approx(tau.tau, rel=1e-12, abs=1e-15)


def test_scattering_coeffs_infinite():
    assert scattering_coeffs(SaeParam.standard(), 0.25, 1.0) == ScatteringCoeffs(a=math.sqrt(2 * math.pi), b=0.0)
    plus = scattering_coeffs(SaeParam.plus_infinity(), 0.25, 1.0)
    assert plus.a == 0.0 and plus.b == pytest.approx(math.sqrt(2 * math.pi))
    assert plus.boundary_coeffs(1.0, 0.25).tau == SaeParam.plus_infinity()


def test_scattering_coeffs_large_tau():
    """Test the normalisation survives lambda^2 beyond double range"""
    p, k = 0.25, 1.0
    tau = SaeParam.finite(-1e200)
    coeffs = scattering_coeffs(tau, p, k)
    lam = lambda_of_k(tau, p, k).lam
    assert coeffs.b == pytest.approx(-math.sqrt(2 * math.pi), rel=1e-12)
    assert coeffs.a > 0
    assert coeffs.a * lam == pytest.approx(coeffs.b, rel=1e-14)
    assert coeffs.boundary_coeffs(k, p).tau.tau == pytest.approx(-1e200, rel=1e-12)
    with pytest.raises(DomainError, match="lambda overflows"):
        scattering_coeffs(SaeParam.finite(-1e308), p, 100.0)


def test_continuum_bracket():
    """Test the lower-boundary term vanishes for one tau and not for two"""
    p = 0.25
    tau = SaeParam.finite(-1.0)
    same = continuum_bracket(scattering_coeffs(tau, p, 1.0), scattering_coeffs(tau, p, 2.0), 1.0, 2.0, p)
    assert abs(same) < 1e-12
    mixed = continuum_bracket(
        scattering_coeffs(tau, p, 1.0), scattering_coeffs(SaeParam.standard(), p, 2.0), 1.0, 2.0, p
    )
    assert abs(mixed) > 1e-2
    with pytest.raises(DegenerateError):
        continuum_bracket(scattering_coeffs(tau, p, 1.0), scattering_coeffs(tau, p, 1.0), 1.0, 1.0, p)


def test_radial_wave_function_free_form():
    """Test P = 1/2, B = 0: R = sqrt(2/pi) sin(kr) / r"""
    coeffs = ScatteringCoeffs(a=1.0, b=0.0)
    for r in (0.3, 1.0, 7.5, 40.0):
        assert radial_scattering_wf(coeffs, 0.5, 1.3, r) == pytest.approx(
            math.sqrt(2 / math.pi) * math.sin(1.3 * r) / r, abs=1e-12
        )
    with pytest.raises(DomainError):
        radial_scattering_wf(coeffs, 0.6, 1.0, 1.0)
    with pytest.raises(DomainError):
        radial_scattering_wf(coeffs, 0.25, 1.0, 0.0)


def test_radial_wave_function_small_r():
    """Test R r^(1/2-P) -> A k^(1/2+P) / (2^P Gamma(1+P)) for B = 0"""
    p, k, r = 0.25, 2.0, 1e-8
    coeffs = ScatteringCoeffs(a=1.0, b=0.0)
    limit = k ** (0.5 + p) / (2 ** p * float(mpmath.gamma(1 + p)))
    assert radial_scattering_wf(coeffs, p, k, r) * r ** (0.5 - p) == pytest.approx(limit, rel=1e-6)


def test_radial_wave_function_matches_integration():
    """Test r R(r) against the integrated u, scaled by a_st, at 20 radii"""
    p, k = 0.25, 2.0
    tau = SaeParam.finite(-1.0)
    coeffs = scattering_coeffs(tau, p, k)
    a_st = coeffs.boundary_coeffs(k, p).a_st
    solution = integrate_radial(0.5 * k * k, p, 1.0, tau, GridSpec.for_scattering(k, 20.0, p))
    picks = np.linspace(0, solution.n - 1, 20).astype(int)
    closed = np.array([solution.r[i] * radial_scattering_wf(coeffs, p, k, float(solution.r[i])) for i in picks])
    numeric = a_st * solution.u[picks]
    assert np.max(np.abs(closed - numeric)) < 1e-6 * np.max(np.abs(closed))
