"""
Mellin transform of the additive character against an inert window,

    f(x) = exp(-ix) w(x / X),    f~(-it) = int f(x) x^(-it) dx / x,

and the t-integrals built from it.

f~(-it) is concentrated on -t in [X/5, 5X], where it equals X^(-1/2) exp(-it log(|t|/e)) W(t)
with W inert; it is negligible elsewhere and f is recovered by

    f(x) = (2 pi)^-1 int f~(-it) x^(it) dt.
"""
import logging
import math
import typing

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import loggamma

from .quadrature import QuadResult, apply_rule, breakpoints_from_rate, panel_rule, quad_oscillatory_1d
from .windows import InertWindow, get_window

logger = logging.getLogger(__name__)

MELLIN_WINDOW = "lognormal"
INSIDE = (0.2, 5.0)
T_REACH = (-8.0, 2.0)
PANEL_PHASE = 2 * math.pi
LOG_STEP = 0.005

OUTSIDE_LIMIT = 1e-6
WRONG_SIGN_LIMIT = 1e-8
AMPLITUDE_BOUNDS = (0.1, 10.0)
RECONSTRUCTION_LIMIT = 1e-6


def _check_scale(X: float):
    if X < 10:
        raise ValueError("X must be at least 10.")


def _x_rule(X: float, t_max: float, window: InertWindow):
    lo, hi = window.interval(X)
    breakpoints = breakpoints_from_rate(lambda x: 1 + t_max / x, lo, hi, PANEL_PHASE, min_panels=32)
    return panel_rule(breakpoints)


def mellin_transform(t, X: float, window: str = MELLIN_WINDOW) -> np.ndarray:
    """
    f~(-it) for every t, by one composite Gauss-Legendre rule over the window support.

    The rule resolves the phase x + t log x for the largest |t| requested.
    """
    _check_scale(X)
    w = get_window(window)
    t = np.asarray(t, dtype=np.float64)
    nodes, weights = _x_rule(X, float(np.max(np.abs(t), initial=0.0)), w)
    amplitude = (w(nodes, X) / nodes)[None, :]
    log_nodes = np.log(nodes)[None, :]

    def integrand(rows, x):
        return np.exp(-1j * (x + rows * log_nodes)) * amplitude

    return apply_rule(integrand, t, nodes, weights)


def mellin_inverse(x, X: float, window: str = MELLIN_WINDOW) -> np.ndarray:
    """
    (2 pi)^-1 int f~(-it) x^(it) dt over -8X <= t <= 2X.

    The t-panels follow log(x / |t|), the phase rate of the integrand near the stationary line.
    """
    _check_scale(X)
    x = np.asarray(x, dtype=np.float64)
    if np.any(x <= 0):
        raise ValueError("x must be positive.")
    spread = float(np.max(np.abs(np.log(x / X)), initial=0.0))
    breakpoints = breakpoints_from_rate(
        lambda t: np.abs(np.log(np.maximum(np.abs(t), 1.0) / X)) + spread + 1,
        T_REACH[0] * X, T_REACH[1] * X, PANEL_PHASE, min_panels=128,
    )
    nodes, weights = panel_rule(breakpoints)
    values = mellin_transform(nodes, X, window)[None, :]

    def integrand(rows, t):
        return np.exp(1j * t * np.log(rows)) * values

    return apply_rule(integrand, x, nodes, weights) / (2 * math.pi)


class MellinReport(typing.NamedTuple):
    """
    :param outside_ratio: max |f~(-it)| for -t outside [X/5, 5X] over the max inside
    :param wrong_sign: max |f~(-it)| over 1 <= t <= X
    :param amplitude_min: min |f~(-it)| X^(1/2) over X <= -t <= 2X
    :param reconstruction_error: max |f - inverse(f~)| over the grid relative to max |f|
    """
    X: float
    outside_ratio: float
    wrong_sign: float
    amplitude_min: float
    amplitude_max: float
    reconstruction_error: float

    @property
    def passed(self) -> bool:
        return (
            self.outside_ratio < OUTSIDE_LIMIT
            and self.wrong_sign < WRONG_SIGN_LIMIT
            and AMPLITUDE_BOUNDS[0] <= self.amplitude_min <= self.amplitude_max <= AMPLITUDE_BOUNDS[1]
            and self.reconstruction_error <= RECONSTRUCTION_LIMIT
        )


def mellin_surrogate(X: float, x_grid=None, window: str = MELLIN_WINDOW, samples: int = 401) -> MellinReport:
    """
    Forward transform on -t around X, the negligibility checks on either side and the inverse
    transform on x_grid (default: [X, 2X]).
    """
    _check_scale(X)
    w = get_window(window)
    x_grid = np.linspace(X, 2 * X, 101) if x_grid is None else np.asarray(x_grid, dtype=np.float64)
    lo, hi = INSIDE
    inside = -np.linspace(lo * X, hi * X, samples)
    outside = -np.concatenate([
        np.linspace(1.0, lo * X, samples, endpoint=False),
        np.linspace(hi * X, -T_REACH[0] * X, samples)[1:],
    ])
    wrong = np.linspace(1.0, X, samples)
    bulk = -np.linspace(X, 2 * X, samples)

    values = np.abs(mellin_transform(np.concatenate([inside, outside, wrong, bulk]), X, window))
    inside_abs, outside_abs, wrong_abs, bulk_abs = np.split(
        values, np.cumsum([len(inside), len(outside), len(wrong)])
    )
    target = np.exp(-1j * x_grid) * w(x_grid, X)
    error = np.max(np.abs(mellin_inverse(x_grid, X, window) - target)) / np.max(np.abs(target))

    report = MellinReport(
        X=float(X),
        outside_ratio=float(outside_abs.max() / inside_abs.max()),
        wrong_sign=float(wrong_abs.max()),
        amplitude_min=float(bulk_abs.min() * math.sqrt(X)),
        amplitude_max=float(bulk_abs.max() * math.sqrt(X)),
        reconstruction_error=float(error),
    )
    logger.info("mellin surrogate X=%g: %s", X, report)
    return report


def gamma_phase(tau, kappa: int = 0) -> np.ndarray:
    """
    theta with gamma(1/2 - i tau) / gamma(1/2 + i tau) = exp(i theta(tau)),
    gamma(s) = pi^(-s/2) Gamma((s + kappa) / 2):

        theta(tau) = tau log pi - 2 Im log Gamma((1/2 + kappa) / 2 + i tau / 2).
    """
    if kappa not in (0, 1):
        raise ValueError("kappa must be 0 or 1.")
    tau = np.asarray(tau, dtype=np.float64)
    return tau * math.log(math.pi) - 2 * loggamma((0.5 + kappa) / 2 + 0.5j * tau).imag


class StirlingFit(typing.NamedTuple):
    """theta(tau) + tau log|tau| = slope tau + intercept + O(1/|tau|)."""
    slope: float
    intercept: float
    residual: float


def fit_stirling_constant(X: float, kappa: int = 0, samples: int = 201) -> StirlingFit:
    """
    Least squares line through theta(tau) + tau log|tau| over -2X <= tau <= -X.

    Stirling's formula gives slope 1 + log(2 pi).
    """
    _check_scale(X)
    tau = np.linspace(-2 * X, -X, samples)
    shifted = gamma_phase(tau, kappa) + tau * np.log(np.abs(tau))
    slope, intercept = np.polyfit(tau, shifted, 1)
    residual = float(np.max(np.abs(shifted - (slope * tau + intercept))))
    return StirlingFit(float(slope), float(intercept), residual)


def inert_amplitude(X: float, window: str = MELLIN_WINDOW) -> typing.Callable[[np.ndarray], np.ndarray]:
    """
    W(t) = X^(1/2) f~(-it) exp(it log(|t|/e)) on -t in [X/5, 8X], as a spline in log(-t); zero elsewhere.
    """
    _check_scale(X)
    top = -T_REACH[0] * X
    grid = np.arange(math.log(INSIDE[0] * X), math.log(top) + LOG_STEP, LOG_STEP)
    t = -np.exp(grid)
    values = math.sqrt(X) * mellin_transform(t, X, window) * np.exp(1j * t * (grid - 1))
    spline = CubicSpline(grid, values)

    def amplitude(t):
        t = np.asarray(t, dtype=np.float64)
        inside = (-t >= INSIDE[0] * X) & (-t <= top)
        safe = np.where(inside, -t, INSIDE[0] * X)
        return np.where(inside, spline(np.log(safe)), 0.0)

    return amplitude


def mellin_pairing(
        X: float,
        Y: float,
        c1: float = 0.0,
        c2: float = 0.0,
        c3: float = 0.0,
        gamma: bool = False,
        kappa: int = 0,
        window: str = MELLIN_WINDOW,
        epsabs: float = 1e-10,
        epsrel: float = 1e-8
) -> QuadResult:
    """
    X^(-1/2) int v(t) exp(-i c1 t log|t| + i c2 t^3) [gamma ratio at t + c3] Y^(it) dt
    with v(t) = X^(1/2) f~(-it) / (2 pi).

    With c1 = c2 = 0 and no gamma ratio this is f(Y) = exp(-iY) w(Y / X) by Mellin inversion.
    """
    _check_scale(X)
    if Y <= 0:
        raise ValueError("Y must be positive.")
    if c1 < 0:
        raise ValueError("c1 must be non-negative.")
    amplitude = inert_amplitude(X, window)
    log_y = math.log(Y)

    def phase(t):
        log_abs = np.log(np.abs(t))
        total = -t * (log_abs - 1) - c1 * t * log_abs + c2 * t ** 3 + t * log_y
        if gamma:
            total = total + gamma_phase(t + c3, kappa)
        return total

    def weight(t):
        return amplitude(t) / (2 * math.pi)

    result = quad_oscillatory_1d(phase, weight, T_REACH[0] * X, -INSIDE[0] * X, epsabs, epsrel)
    logger.debug("mellin pairing X=%g Y=%g gamma=%s: %s", X, Y, gamma, result)
    return result
