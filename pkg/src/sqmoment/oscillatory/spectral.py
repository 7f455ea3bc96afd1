"""
The spectral weight h, its transform window g and the kernel

    K+(x) = int exp(i x (cosh v - 1) - 2 i v T) g(Delta v) dv.

The t-integral of t tanh(pi t) h(t) splits exactly into the two Gaussian pieces of h:

    int exp(-2ivt) t tanh(pi t) h(t) dt = Delta T (exp(-2ivT) g+(Delta v) + exp(2ivT) g+(-Delta v)),

where g+ is the transform of the piece centred at +T. g+ is smooth and nearly even, and the
quotient g by 2 cos(2vT) agrees with it wherever the quotient is defined. K+ and H0 are
evaluated with g+.
"""
import functools
import logging
import math
import typing

import numpy as np
from scipy.interpolate import CubicSpline

from ..errors import GuardBandError
from .integral import GUARD_HIGH, GUARD_LOW, Regime
from .quadrature import QuadResult, apply_rule, breakpoints_from_rate, panel_rule, phase_breakpoints, quad_oscillatory_1d, quad_panels
from .windows import smooth_step

logger = logging.getLogger(__name__)

GAUSSIAN_WIDTHS = 8.0
Y_CUT = 7.0
SPLINE_STEP = 1 / 256
DENOMINATOR_FLOOR = 1e-8


def _check_spectral(T: float, Delta: float):
    if T < 1 or not 1 <= Delta <= T:
        raise ValueError("T and Delta must satisfy 1 <= Delta <= T.")


def spectral_weight_h(t, T: float, Delta: float):
    """
    h(t) = (t^2 + 1/4) / T^2 (exp(-(t - T)^2 / Delta^2) + exp(-(t + T)^2 / Delta^2)).
    """
    _check_spectral(T, Delta)
    t = np.asarray(t, dtype=np.float64)
    gaussians = np.exp(-((t - T) / Delta) ** 2) + np.exp(-((t + T) / Delta) ** 2)
    return (t * t + 0.25) / T ** 2 * gaussians


def _upper_piece(t, T: float, Delta: float):
    # t tanh(pi t) times the Gaussian of h centred at +T
    return t * np.tanh(np.pi * t) * (t * t + 0.25) / T ** 2 * np.exp(-((t - T) / Delta) ** 2)


def _transform_rule(frequency: float, a: float, b: float, width: float):
    breakpoints = phase_breakpoints(
        lambda s: frequency * s, a, b, min_panels=max(8, int(math.ceil(4 * (b - a) / width)))
    )
    return panel_rule(breakpoints)


def h_transform_numerator(v, T: float, Delta: float) -> np.ndarray:
    """
    int exp(-2ivt) t tanh(pi t) h(t) dt, real and even in v, by a fixed panel rule.
    """
    _check_spectral(T, Delta)
    v = np.asarray(v, dtype=np.float64)
    top = T + GAUSSIAN_WIDTHS * Delta
    nodes, weights = _transform_rule(2 * max(float(np.max(np.abs(v), initial=0.0)), 1.0), 0.0, top, Delta)
    amplitude = nodes * np.tanh(np.pi * nodes) * spectral_weight_h(nodes, T, Delta)

    def integrand(rows, t):
        return np.cos(2 * rows * t) * amplitude[None, :]

    return 2 * apply_rule(integrand, v, nodes, weights).real


def g_plus(y, T: float, Delta: float) -> np.ndarray:
    """
    g+(y) = (Delta T)^-1 int exp(-2 i y s / Delta) [t tanh(pi t) h+(t)]_{t = T + s} ds, close to sqrt(pi) exp(-y^2).
    """
    _check_spectral(T, Delta)
    y = np.asarray(y, dtype=np.float64)
    nodes, weights = _transform_rule(2 * max(float(np.max(np.abs(y), initial=0.0)), 1.0), -GAUSSIAN_WIDTHS, GAUSSIAN_WIDTHS, 1.0)
    amplitude = _upper_piece(T + Delta * nodes, T, Delta) / T

    def integrand(rows, u):
        return np.exp(-2j * rows * u) * amplitude[None, :]

    return apply_rule(integrand, y, nodes, weights)


def g_window(y, T: float, Delta: float) -> np.ndarray:
    """
    g(Delta v) = int exp(-2ivt) t tanh(pi t) h(t) dt / (Delta T (exp(-2ivT) + exp(2ivT))).

    Points where |2 cos(2vT)| < 1e-8 are returned as NaN.
    """
    y = np.asarray(y, dtype=np.float64)
    v = y / Delta
    denominator = 2 * np.cos(2 * v * T)
    numerator = h_transform_numerator(v, T, Delta) / (Delta * T)
    defined = np.abs(denominator) >= DENOMINATOR_FLOOR
    if not defined.all():
        logger.debug("g window: skipping %d points with vanishing denominator", np.count_nonzero(~defined))
    return np.where(defined, numerator / np.where(defined, denominator, 1.0), np.nan)


@functools.lru_cache(maxsize=8)
def _g_plus_spline(T: float, Delta: float) -> CubicSpline:
    grid = np.arange(-Y_CUT, Y_CUT + SPLINE_STEP / 2, SPLINE_STEP)
    return CubicSpline(grid, g_plus(grid, T, Delta))


def schwartz_constants(T: float, Delta: float, a_max: int = 6) -> np.ndarray:
    """sup |g+(y)| (1 + |y|)^A over |y| <= 7 for A = 0..a_max."""
    y = np.linspace(-Y_CUT, Y_CUT, 1401)
    magnitude = np.abs(_g_plus_spline(T, Delta)(y))
    return np.array([float(np.max(magnitude * (1 + np.abs(y)) ** a)) for a in range(a_max + 1)])


def _v_taper(v, support: float):
    # 1 on |v| <= support, 0 beyond 2 support
    return 1.0 - smooth_step(np.abs(v) / support - 1.0)


def k_plus(
        x: float,
        T: float,
        Delta: float,
        support: typing.Optional[float] = None,
        epsabs: float = 1e-13,
        epsrel: float = 1e-10
) -> QuadResult:
    """
    K+(x) over |v| <= 7 / Delta, where g+ is below 1e-20.

    :param support: if given, the integrand is also cut smoothly to |v| <= 2 support
    """
    _check_spectral(T, Delta)
    if x <= 0:
        raise ValueError("x must be positive.")
    reach = Y_CUT / Delta
    spline = _g_plus_spline(T, Delta)
    if support is not None:
        if support <= 0:
            raise ValueError("support must be positive.")
        reach = min(reach, 2 * support)

    def weight(v):
        values = spline(Delta * v)
        return values if support is None else values * _v_taper(v, support)

    return quad_oscillatory_1d(
        lambda v: x * (np.cosh(v) - 1) - 2 * v * T, weight, -reach, reach, epsabs, epsrel
    )


def k_plus_stationary(x: float, T: float, Delta: float) -> complex:
    """
    Stationary phase value of K+(x) at v0 = asinh(2T / x).
    """
    _check_spectral(T, Delta)
    v0 = math.asinh(2 * T / x)
    phase = x * (math.cosh(v0) - 1) - 2 * v0 * T
    amplitude = math.sqrt(2 * math.pi / (x * math.cosh(v0))) * complex(_g_plus_spline(T, Delta)(Delta * v0))
    return amplitude * complex(np.exp(1j * (phase + math.pi / 4)))


def h0_transform(x: float, T: float, Delta: float, epsabs: float = 1e-10, epsrel: float = 1e-9) -> QuadResult:
    """
    H0(x) = int exp(i x cosh v) int exp(-2ivt) t tanh(pi t) h(t) dt dv with the t-integral done directly.

    Equals 2 Delta T exp(ix) K+(x).
    """
    _check_spectral(T, Delta)
    reach = Y_CUT / Delta
    breakpoints = breakpoints_from_rate(lambda v: x * np.abs(np.sinh(v)) + 2 * T, -reach, reach)
    return quad_panels(
        lambda v: np.exp(1j * x * np.cosh(v)) * h_transform_numerator(v, T, Delta), breakpoints, epsabs, epsrel
    )


class SpectralWeightParams(typing.NamedTuple):
    """
    Sizes attached to the Kuznetsov side at spectral height T, window Delta, twist U, length N
    and modulus scale C.
    """
    T: float
    Delta: float
    U: float
    N: float
    C: float
    eps_exponent: float = 0.1

    def validated(self) -> "SpectralWeightParams":
        _check_spectral(self.T, self.Delta)
        if self.U < 0 or self.N < 1 or self.C <= 0:
            raise ValueError("U must be non-negative, N at least 1 and C positive.")
        return self

    @property
    def V0(self) -> float:
        return self.T * self.C / self.N ** 2

    @property
    def P(self) -> float:
        return self.C * self.T ** 2 / self.N ** 2

    @property
    def N_max(self) -> float:
        return math.sqrt(self.U + 1) * self.T ** (1 + self.eps_exponent)

    @property
    def c_range(self) -> tuple[float, float]:
        """N^2 T^eps / T^2 <= C <= T^eps N^2 / (Delta T)."""
        slack = self.T ** self.eps_exponent
        return self.N ** 2 * slack / self.T ** 2, slack * self.N ** 2 / (self.Delta * self.T)

    @property
    def admissible(self) -> bool:
        lo, hi = self.c_range
        return lo <= self.C <= hi

    @property
    def regime(self) -> Regime:
        """
        eps(v) N^2 at v = V0 and c = C is 2 pi P, compared with U as for the double integral.
        """
        rho = math.inf if self.U == 0 else 2 * math.pi * self.P / self.U
        if rho <= GUARD_LOW:
            return Regime.U_DOMINANT
        if rho >= GUARD_HIGH:
            return Regime.EPS_DOMINANT
        raise GuardBandError(f"2 pi P / U = {rho:.3g} lies in the excluded band.")

    @property
    def K(self) -> float:
        if self.regime is Regime.U_DOMINANT:
            return self.C * self.U / self.N
        return self.C ** 2 * self.T ** 2 / self.N ** 3

    @property
    def Phi(self) -> float:
        if self.regime is Regime.U_DOMINANT:
            return self.N * math.sqrt(self.C) / self.U
        return self.N ** 3 / (math.sqrt(self.C) * self.T ** 2)

    @staticmethod
    def phase_parameters(v: float, c: int, k: int, l: int) -> tuple[float, float, float]:
        """(eps, A, B) = (4 pi (cosh v - 1) / c, 2 pi k / c, 2 pi l / c)."""
        return 4 * math.pi * (math.cosh(v) - 1) / c, 2 * math.pi * k / c, 2 * math.pi * l / c
