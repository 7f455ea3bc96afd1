"""
Oscillatory integrals: inert windows, panel quadrature, the double integral I and its
stationary phase, the Kuznetsov weight transforms, the Mellin surrogate of exp(-ix) and the
v-integral stationary point.
"""
__all__ = [
    "QuadResult", "gauss_legendre", "phase_breakpoints", "breakpoints_from_rate", "panel_rule", "apply_rule",
    "quad_panels", "quad_oscillatory_1d", "quad_oscillatory_2d",
    "bump", "bump_derivative", "smooth_step", "dyadic_window", "log_gaussian_window", "InertWindow", "WINDOWS",
    "get_window", "derivative_bounds",
    "Regime", "OscParams", "StationaryPoint", "regime_of", "scaled_stationary_point", "stationary_point",
    "stationary_phase_leading", "i_integral", "PhaseTaylor", "taylor_coefficients", "phase_taylor",
    "IbpDecay", "ibp_decay_ratios",
    "spectral_weight_h", "h_transform_numerator", "g_plus", "g_window", "schwartz_constants", "k_plus",
    "k_plus_stationary", "h0_transform", "SpectralWeightParams",
    "mellin_transform", "mellin_inverse", "MellinReport", "mellin_surrogate", "gamma_phase", "StirlingFit",
    "fit_stirling_constant", "inert_amplitude", "mellin_pairing",
    "VPoint", "v_integral_point", "ExpansionFit", "fit_expansion_constants",
]

from .quadrature import (
    QuadResult, gauss_legendre, phase_breakpoints, breakpoints_from_rate, panel_rule, apply_rule, quad_panels,
    quad_oscillatory_1d, quad_oscillatory_2d,
)
from .windows import (
    bump, bump_derivative, smooth_step, dyadic_window, log_gaussian_window, InertWindow, WINDOWS, get_window,
    derivative_bounds,
)
from .integral import (
    Regime, OscParams, StationaryPoint, regime_of, scaled_stationary_point, stationary_point,
    stationary_phase_leading, i_integral, PhaseTaylor, taylor_coefficients, phase_taylor, IbpDecay, ibp_decay_ratios,
)
from .spectral import (
    spectral_weight_h, h_transform_numerator, g_plus, g_window, schwartz_constants, k_plus, k_plus_stationary,
    h0_transform, SpectralWeightParams,
)
from .mellin import (
    mellin_transform, mellin_inverse, MellinReport, mellin_surrogate, gamma_phase, StirlingFit,
    fit_stirling_constant, inert_amplitude, mellin_pairing,
)
from .vintegral import VPoint, v_integral_point, ExpansionFit, fit_expansion_constants
