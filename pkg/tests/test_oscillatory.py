import cmath
import math

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from sqmoment.errors import DomainViolationError, GuardBandError
from sqmoment.oscillatory import (
    OscParams, Regime, SpectralWeightParams, bump, bump_derivative, derivative_bounds, dyadic_window,
    fit_expansion_constants, fit_stirling_constant, g_plus, g_window, gamma_phase, get_window, h0_transform,
    h_transform_numerator, i_integral, ibp_decay_ratios, k_plus, k_plus_stationary, mellin_pairing,
    mellin_surrogate, mellin_transform, phase_taylor, quad_oscillatory_1d, regime_of, scaled_stationary_point,
    schwartz_constants, smooth_step, spectral_weight_h, stationary_phase_leading, stationary_point,
    taylor_coefficients, v_integral_point,
)

BUMP_MASS = 0.4439938161680794
T_SPEC, DELTA_SPEC = 100.0, 10.0


def regime_one(U, N=100.0, x0=150.0, y0=150.0):
    eps = 0.1 * U / N ** 2
    return OscParams(U / x0 - eps * y0, U / y0 + eps * x0, U, eps, N)


def regime_two(eps, U=5.0, N=50.0, x0=75.0, y0=75.0):
    return OscParams(U / x0 - eps * y0, U / y0 + eps * x0, U, eps, N)


# windows

def test_bump_values():
    assert bump(0.0) == pytest.approx(math.exp(-1))
    assert bump(1.0) == 0 and bump(-1.5) == 0
    assert dyadic_window(1.5) == pytest.approx(math.exp(-1))
    assert dyadic_window(3.0, scale=2.0) == pytest.approx(math.exp(-1))


@pytest.mark.parametrize("j", [1, 2, 3])
def test_bump_derivative_matches_finite_differences(j):
    t = np.linspace(-0.8, 0.8, 17)
    h = 1e-4
    numeric = (bump_derivative(t + h, j - 1) - bump_derivative(t - h, j - 1)) / (2 * h)
    assert np.allclose(bump_derivative(t, j), numeric, rtol=1e-5, atol=1e-7)


def test_derivative_bounds():
    bounds = derivative_bounds(6)
    assert len(bounds) == 7
    assert bounds[0] == pytest.approx(math.exp(-1))
    assert np.all(np.isfinite(bounds)) and np.all(bounds > 0)


def test_smooth_step():
    assert smooth_step(-1.0) == 0 and smooth_step(2.0) == 1
    assert smooth_step(0.5) == pytest.approx(0.5)
    assert smooth_step(0.3) + smooth_step(0.7) == pytest.approx(1.0)


def test_unknown_window():
    with pytest.raises(ValueError):
        get_window("boxcar")


# quadrature

def test_quad_window_mass():
    result = quad_oscillatory_1d(lambda x: 0 * x, dyadic_window, 1.0, 2.0)
    assert result.converged
    assert result.value == pytest.approx(BUMP_MASS / 2, rel=1e-9)


def test_quad_polynomial_window_against_integration_by_parts():
    p = Polynomial([0, 0, 1, -2, 1])  # x^2 (1 - x)^2
    omega = 50.0
    exact = 0j
    derivative = p
    for k in range(5):
        exact += (-1) ** k * (derivative(1.0) * cmath.exp(1j * omega) - derivative(0.0)) / (1j * omega) ** (k + 1)
        derivative = derivative.deriv()
    result = quad_oscillatory_1d(lambda x: omega * x, p, 0.0, 1.0, epsabs=1e-15)
    assert abs(result.value - exact) <= 1e-12


@pytest.mark.parametrize("width", [2.0, 5.0, 20.0])
def test_quad_fresnel(width):
    exact = cmath.sqrt(math.pi / (1 / width ** 2 - 1j))
    result = quad_oscillatory_1d(
        lambda x: x * x, lambda x: np.exp(-(x / width) ** 2), -7 * width, 7 * width, epsabs=1e-14
    )
    assert abs(result.value - exact) <= 1e-8 * abs(exact)


def test_quad_fresnel_limit():
    limit = math.sqrt(math.pi) * cmath.exp(1j * math.pi / 4)
    errors = [
        abs(quad_oscillatory_1d(lambda x: x * x, lambda x, w=w: np.exp(-(x / w) ** 2), -7 * w, 7 * w).value - limit)
        for w in (5.0, 10.0, 20.0)
    ]
    assert errors[0] > errors[1] > errors[2]


# stationary points

def test_regime_selection():
    assert regime_of(regime_one(100)) is Regime.U_DOMINANT
    assert regime_of(regime_two(0.06)) is Regime.EPS_DOMINANT
    assert regime_of(OscParams(0, 0, 0, 0, 10)) is Regime.EPS_DOMINANT
    with pytest.raises(GuardBandError):
        regime_of(OscParams(1, 1, 100, 0.01, 100))


def test_params_validation():
    with pytest.raises(ValueError):
        OscParams(1, 1, -1, 0, 10).validated()
    with pytest.raises(ValueError):
        OscParams(1, 1, 1, 0, 0.5).validated()


def test_scaled_stationary_points():
    x, y, value = scaled_stationary_point(Regime.EPS_DOMINANT, 0.0)
    assert (x, y, value) == (1.0, 1.0, -1.0)
    x, y, _ = scaled_stationary_point(Regime.EPS_DOMINANT, 0.1)
    assert x == pytest.approx(0.909902, abs=1e-6)
    assert y == pytest.approx(1.109902, abs=1e-6)
    x, y, value = scaled_stationary_point(Regime.U_DOMINANT, 0.1)
    assert x * y == pytest.approx(0.990195, abs=1e-6)
    assert scaled_stationary_point(Regime.U_DOMINANT, 0.0)[2] == 0


@pytest.mark.parametrize("params", [regime_one(50), regime_one(400), regime_two(0.06), regime_two(0.03)])
def test_stationary_point_is_stationary(params):
    sp = stationary_point(params)
    assert sp.residual <= 1e-10
    assert sp.x0 == pytest.approx(150.0 if params.N == 100 else 75.0, rel=1e-10)
    assert sp.y0 == pytest.approx(sp.x0, rel=1e-10)
    assert float(params.phase(sp.x0, sp.y0)) == pytest.approx(sp.phase_value, rel=1e-12, abs=1e-9)


def test_stationary_point_sign_conditions():
    with pytest.raises(DomainViolationError):
        stationary_point(OscParams(-1.0, 1.0, 100, 0.001, 100))
    with pytest.raises(DomainViolationError):
        stationary_point(OscParams(1.0, 1.0, 5, 0.06, 50))


# the double integral

def test_i_integral_window_mass():
    result = i_integral(OscParams(0, 0, 0, 0, 40))
    assert result.converged
    assert abs(result.value.imag) <= 1e-12
    assert result.value.real == pytest.approx((40 * BUMP_MASS / 2) ** 2, rel=1e-7)


def test_regime_one_magnitude_law():
    deviations = []
    for U in (50.0, 100.0, 200.0, 400.0):
        params = regime_one(U)
        value = i_integral(params).value
        assert 0.1 <= abs(value) * U / params.N ** 2 <= 10
        leading = stationary_phase_leading(params)
        deviations.append(abs(abs(value) / abs(leading) - 1))
    assert deviations[-1] <= 0.25
    assert deviations[-1] <= deviations[0] + 0.02


def test_regime_one_agrees_with_stationary_phase():
    params = regime_one(400.0)
    value = i_integral(params).value
    leading = stationary_phase_leading(params)
    assert abs(value - leading) <= 0.25 * abs(leading)


@pytest.mark.parametrize("eps", [0.03, 0.06])
def test_regime_two_magnitude_law(eps):
    value = i_integral(regime_two(eps)).value
    assert 0.1 <= abs(value) * eps <= 10


def test_regime_two_value():
    assert abs(i_integral(regime_two(0.06)).value) * 0.06 == pytest.approx(0.85, rel=0.25)


def test_out_of_range_is_suppressed():
    inside = abs(i_integral(OscParams(100 / 75, 100 / 75, 100, 0, 50)).value)
    outside = abs(i_integral(OscParams(6, 6, 100, 0, 50)).value)
    assert outside <= 1e-3 * inside


def test_phase_extraction_is_slowly_varying():
    base = regime_one(100.0)
    residual, phases = [], []
    for scale in np.linspace(0.9, 1.1, 9):
        params = base._replace(A=base.A * scale)
        sp = stationary_point(params)
        value = i_integral(params).value
        phases.append(sp.phase_value)
        residual.append(cmath.phase(value * cmath.exp(-1j * sp.phase_value)))
    drift = np.sum(np.abs(np.diff(np.unwrap(residual))))
    assert drift <= 0.1 * np.sum(np.abs(np.diff(phases)))


def test_ibp_decay():
    decay = ibp_decay_ratios()
    assert np.all(decay.ratios >= 8)


# phase expansions

def test_taylor_regime_one():
    taylor = phase_taylor(Regime.U_DOMINANT, 0.2, 1)
    assert taylor.coefficients[0] == pytest.approx(1.0, abs=1e-8)
    assert taylor.coefficients[1] == pytest.approx(-1 / 3, abs=1e-8)
    assert taylor.parity_defect <= 1e-9
    halved = phase_taylor(Regime.U_DOMINANT, 0.1, 1)
    assert taylor.remainder / halved.remainder == pytest.approx(32, rel=0.2)


def test_taylor_regime_two_is_even():
    taylor = phase_taylor(Regime.EPS_DOMINANT, 0.1, 2)
    assert taylor.parity_defect <= 1e-9
    assert taylor.coefficients[0] == pytest.approx(-1.0, abs=1e-10)
    assert taylor.coefficients[1] == pytest.approx(1.0, abs=1e-8)


def test_taylor_at_zero():
    assert phase_taylor(Regime.U_DOMINANT, 0.0, 2).remainder == pytest.approx(0.0, abs=1e-15)
    assert taylor_coefficients(Regime.U_DOMINANT, 3)[0] == pytest.approx(0.0, abs=1e-14)


def test_taylor_rejects_large_delta():
    with pytest.raises(ValueError):
        phase_taylor(Regime.U_DOMINANT, 0.5, 1)


# spectral weight

def test_spectral_weight_h():
    T, Delta = 50.0, 5.0
    assert spectral_weight_h(T, T, Delta) == pytest.approx((T * T + 0.25) / T ** 2 * (1 + math.exp(-4 * T * T / Delta ** 2)))
    t = np.linspace(-120, 120, 241)
    assert np.allclose(spectral_weight_h(t, T, Delta), spectral_weight_h(-t, T, Delta))
    assert np.all(spectral_weight_h(t, T, Delta) <= 2 * (t * t + 0.25) / T ** 2)
    with pytest.raises(ValueError):
        spectral_weight_h(0.0, 10.0, 20.0)


def test_numerator_splits_into_shifted_pieces():
    v = np.array([0.0, 0.013, 0.05, 0.11])
    numerator = h_transform_numerator(v, T_SPEC, DELTA_SPEC)
    y = DELTA_SPEC * v
    pieces = DELTA_SPEC * T_SPEC * (
        np.exp(-2j * v * T_SPEC) * g_plus(y, T_SPEC, DELTA_SPEC) + np.exp(2j * v * T_SPEC) * g_plus(-y, T_SPEC, DELTA_SPEC)
    )
    assert np.allclose(numerator, pieces.real, rtol=0, atol=1e-8 * DELTA_SPEC * T_SPEC)
    assert np.allclose(pieces.imag, 0, atol=1e-8 * DELTA_SPEC * T_SPEC)


def test_g_window():
    g0 = g_window(0.0, T_SPEC, DELTA_SPEC)
    assert g0 == pytest.approx(g_plus(0.0, T_SPEC, DELTA_SPEC).real, rel=1e-10)
    assert g0 == pytest.approx(math.sqrt(math.pi), rel=0.1)
    y = np.array([0.3, 0.7, 1.1])
    assert np.allclose(g_window(y, T_SPEC, DELTA_SPEC), g_window(-y, T_SPEC, DELTA_SPEC))
    assert abs(g_window(10.0, T_SPEC, DELTA_SPEC)) <= 1e-4 * abs(g0)


def test_g_window_skips_vanishing_denominator():
    y = DELTA_SPEC * math.pi / (4 * T_SPEC)
    assert np.isnan(g_window(y, T_SPEC, DELTA_SPEC))


def test_schwartz_constants():
    constants = schwartz_constants(T_SPEC, DELTA_SPEC)
    assert len(constants) == 7
    assert np.all(constants <= 100)


def test_k_plus_small_below_cutoff():
    scan = max(abs(k_plus(x, T_SPEC, DELTA_SPEC).value) for x in (1e3, 2e3, 5e3, 1e4))
    assert abs(k_plus(100.0, T_SPEC, DELTA_SPEC).value) <= 1e-3 * scan


def test_k_plus_support_for_large_x():
    x = 1e5
    full = k_plus(x, T_SPEC, DELTA_SPEC).value
    cut = k_plus(x, T_SPEC, DELTA_SPEC, support=math.log(x) ** 2 / math.sqrt(x)).value
    assert abs(full - cut) <= 1e-8 * abs(full)


@pytest.mark.parametrize("x", [2e3, 5e3, 1e4])
def test_k_plus_concentrates_at_stationary_point(x):
    full = k_plus(x, T_SPEC, DELTA_SPEC)
    assert full.converged
    assert abs(full.value / k_plus_stationary(x, T_SPEC, DELTA_SPEC) - 1) <= 0.1
    v0 = math.asinh(2 * T_SPEC / x)
    local = k_plus(x, T_SPEC, DELTA_SPEC, support=2 * v0).value
    assert abs(local - full.value) <= 0.1 * abs(full.value)


def test_h0_transform_matches_k_plus():
    x = 2000.0
    h0 = h0_transform(x, T_SPEC, DELTA_SPEC).value
    expected = 2 * DELTA_SPEC * T_SPEC * cmath.exp(1j * x) * k_plus(x, T_SPEC, DELTA_SPEC).value
    assert abs(h0 - expected) <= 1e-7 * abs(h0)


def test_spectral_weight_params():
    small_u = SpectralWeightParams(100, 10, 0, 1000, 100).validated()
    assert small_u.P == pytest.approx(1.0)
    assert small_u.V0 == pytest.approx(0.01)
    assert small_u.regime is Regime.EPS_DOMINANT
    assert small_u.K == pytest.approx(0.1)
    assert small_u.Phi == pytest.approx(1e4)
    large_u = SpectralWeightParams(100, 10, 1000, 1000, 1)
    assert large_u.regime is Regime.U_DOMINANT
    assert (large_u.K, large_u.Phi) == (pytest.approx(1.0), pytest.approx(1.0))
    lo, hi = large_u.c_range
    assert lo == pytest.approx(100 * 100 ** 0.1)
    assert hi == pytest.approx(1000 * 100 ** 0.1)
    assert not large_u.admissible
    with pytest.raises(GuardBandError):
        _ = SpectralWeightParams(100, 10, 2 * math.pi, 1000, 100).regime
    with pytest.raises(ValueError):
        SpectralWeightParams(100, 10, -1, 1000, 100).validated()


def test_phase_parameters():
    eps, A, B = SpectralWeightParams.phase_parameters(0.0, 5, 1, 2)
    assert eps == 0
    assert (A, B) == (pytest.approx(2 * math.pi / 5), pytest.approx(4 * math.pi / 5))


# Mellin transform

def test_mellin_surrogate():
    report = mellin_surrogate(50.0)
    assert report.outside_ratio < 1e-6
    assert report.wrong_sign < 1e-8
    assert 0.1 <= report.amplitude_min <= report.amplitude_max <= 10
    assert report.reconstruction_error <= 1e-6
    assert report.passed


def test_mellin_reconstruction_small_scale():
    assert mellin_surrogate(20.0).reconstruction_error <= 1e-6


@pytest.mark.slow
def test_mellin_surrogate_large_scale():
    assert mellin_surrogate(100.0).passed


def test_mellin_transform_rejects_small_scale():
    with pytest.raises(ValueError):
        mellin_transform([-5.0], 5.0)


def test_mellin_phase_follows_log_t():
    # f~(-it) exp(it log(|t|/e)) varies slowly around the centre of the window
    X = 50.0
    t = -np.linspace(60.0, 80.0, 5)
    twisted = mellin_transform(t, X) * np.exp(1j * t * (np.log(-t) - 1))
    assert np.max(np.abs(np.diff(np.unwrap(np.angle(twisted))))) <= 0.5


def test_gamma_phase():
    assert gamma_phase(0.0) == pytest.approx(0.0, abs=1e-15)
    tau = np.linspace(-30, 30, 7)
    assert np.allclose(gamma_phase(-tau), -gamma_phase(tau))
    with pytest.raises(ValueError):
        gamma_phase(1.0, kappa=2)


@pytest.mark.parametrize("kappa", [0, 1])
def test_stirling_constant(kappa):
    fit = fit_stirling_constant(50.0, kappa)
    assert fit.slope == pytest.approx(1 + math.log(2 * math.pi), abs=1e-3)


@pytest.mark.parametrize("Y", [60.0, 75.0, 90.0])
def test_mellin_pairing_inverts_transform(Y):
    X = 50.0
    result = mellin_pairing(X, Y)
    expected = cmath.exp(-1j * Y) * float(get_window("lognormal")(Y, X))
    assert abs(result.value - expected) <= 1e-5


def test_mellin_pairing_with_gamma_ratio_is_bounded():
    values = [abs(mellin_pairing(50.0, Y, c1=0.1, c2=1e-7, c3=3.0, gamma=True).value) for Y in np.logspace(2, 4, 5)]
    assert max(values) <= 10


# v-integral

def test_v_integral_point_value():
    point = v_integral_point(-10.0, 100.0)
    assert point.v0 == pytest.approx(0.0998339, abs=1e-7)
    assert -2 * 100 - 2 * -10 / point.v0 + -10 * point.v0 / 3 == pytest.approx(0.0, abs=1e-10)
    assert point.second_derivative == pytest.approx(2 * -10 / point.v0 ** 2 - 10 / 3)


def test_v_integral_point_small_t():
    T = 100.0
    assert v_integral_point(-1e-3, T).v0 / -1e-3 == pytest.approx(-1 / T, rel=1e-9)
    assert v_integral_point(0.0, T) == (0.0, 0.0, 0.0)


def test_v_integral_cubic_correction_scales():
    T, t = 100.0, -10.0
    full = v_integral_point(t, T).v0 + t / T
    half = v_integral_point(t / 2, T).v0 + t / (2 * T)
    assert half / full == pytest.approx(1 / 8, rel=0.05)


def test_v_integral_point_guards():
    with pytest.raises(DomainViolationError):
        v_integral_point(1.0, 100.0)
    with pytest.raises(DomainViolationError):
        v_integral_point(-80.0, 100.0)


def test_fit_expansion_constants():
    T = 1000.0
    fit = fit_expansion_constants(T, -T * np.linspace(0.005, 0.03, 11))
    assert fit.root_coefficient == pytest.approx(1 / 6, abs=1e-3)
    assert fit.phase_coefficient == pytest.approx(1 / 6, abs=1e-3)
