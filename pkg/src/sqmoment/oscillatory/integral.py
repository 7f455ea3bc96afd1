"""
The double integral

    I(A, B, U, eps, N) = int int exp(i phi(x, y)) w(x / N) w(y / N) dx dy,
    phi(x, y) = -U log x + U log y + A x - B y + eps x y,

its stationary point in the two regimes and the Taylor expansion of the phase there.

U-dominant regime (eps N^2 / U small, A, B > 0): x = U x'/A, y = U y'/B and
    phi = U log(A/B) + U (-log x' + log y' + x' - y' + d x' y'),  d = eps U / (A B).
eps-dominant regime (eps N^2 / U large, A < 0 < B): x = B x'/eps, y = -A y'/eps and
    phi = U log(-A/B) - (A B / eps) (x' y' - x' - y' + d log(y'/x')),  d = -U eps / (A B).
"""
import enum
import logging
import math
import typing

import numpy as np

from ..errors import DomainViolationError, GuardBandError
from .quadrature import QuadResult, quad_oscillatory_1d, quad_oscillatory_2d
from .windows import dyadic_window, get_window

logger = logging.getLogger(__name__)

GUARD_LOW = 1 / 3
GUARD_HIGH = 3.0
TAYLOR_RADIUS = 0.25
TAYLOR_NODES = 64
MAX_TAYLOR_DELTA = 0.3


class Regime(enum.Enum):
    U_DOMINANT = "U-dominant"
    EPS_DOMINANT = "eps-dominant"


class OscParams(typing.NamedTuple):
    """
    Parameters of I(A, B, U, eps, N); the window w is looked up by name and scaled to [N, 2N].
    """
    A: float
    B: float
    U: float
    eps: float
    N: float
    window: str = "bump"

    def validated(self) -> "OscParams":
        if self.U < 0 or self.eps < 0:
            raise ValueError("U and eps must be non-negative.")
        if self.N < 1:
            raise ValueError("N must be at least 1.")
        get_window(self.window)
        return self

    @property
    def rho(self) -> float:
        """eps N^2 / U, infinite when U = 0."""
        return math.inf if self.U == 0 else self.eps * self.N ** 2 / self.U

    def phase(self, x, y):
        return -self.U * np.log(x) + self.U * np.log(y) + self.A * x - self.B * y + self.eps * x * y

    def gradient(self, x: float, y: float) -> tuple[float, float]:
        return -self.U / x + self.A + self.eps * y, self.U / y - self.B + self.eps * x

    def weight(self, x, y):
        w = get_window(self.window)
        return w(x, self.N) * w(y, self.N)


class StationaryPoint(typing.NamedTuple):
    x0: float
    y0: float
    phase_value: float
    regime: Regime
    delta: float
    residual: float


def regime_of(p: OscParams) -> Regime:
    """
    :raises GuardBandError: when 1/3 < eps N^2 / U < 3, where the two stationary points coalesce
    """
    rho = p.rho
    if rho <= GUARD_LOW:
        return Regime.U_DOMINANT
    if rho >= GUARD_HIGH:
        return Regime.EPS_DOMINANT
    raise GuardBandError(f"eps N^2 / U = {rho:.3g} lies in the excluded band ({GUARD_LOW:.3g}, {GUARD_HIGH:g}).")


def scaled_stationary_point(regime: Regime, delta):
    """
    Stationary point (x', y') of the scaled phase and the value of the scaled phase there.

    Accepts complex delta so the value can be expanded by contour integrals.
    """
    delta = np.asarray(delta, dtype=np.complex128 if np.iscomplexobj(delta) else np.float64)
    root = np.sqrt(1 + 4 * delta * delta)
    if regime is Regime.U_DOMINANT:
        r = 2 / (1 + root)
        x, y = 1 - delta * r, 1 + delta * r
        value = np.log(y / x) - delta * r
    else:
        x, y = (1 - 2 * delta + root) / 2, (1 + 2 * delta + root) / 2
        value = -(1 + root) / 2 + delta * np.log(y / x)
    return x, y, value


def stationary_point(p: OscParams) -> StationaryPoint:
    """
    The stationary point of phi for the regime selected by eps N^2 / U.

    :raises GuardBandError: inside the excluded band
    :raises DomainViolationError: when the signs of A, B do not admit a stationary point
    """
    p = p.validated()
    regime = regime_of(p)
    if regime is Regime.U_DOMINANT:
        if p.A <= 0 or p.B <= 0:
            raise DomainViolationError("the U-dominant stationary point needs A, B > 0.")
        delta = p.eps * p.U / (p.A * p.B)
        xs, ys, value = scaled_stationary_point(regime, delta)
        x0, y0 = p.U * float(xs) / p.A, p.U * float(ys) / p.B
        phase_value = p.U * math.log(p.A / p.B) + p.U * float(value)
    else:
        if p.eps == 0:
            raise DomainViolationError("U = eps = 0 leaves no stationary point.")
        if not p.A < 0 < p.B:
            raise DomainViolationError("the eps-dominant stationary point needs A < 0 < B.")
        delta = -p.U * p.eps / (p.A * p.B)
        xs, ys, value = scaled_stationary_point(regime, delta)
        x0, y0 = p.B * float(xs) / p.eps, -p.A * float(ys) / p.eps
        phase_value = (p.U * math.log(-p.A / p.B) if p.U else 0.0) - p.A * p.B / p.eps * float(value)

    gx, gy = p.gradient(x0, y0)
    scale = abs(p.U / x0) + abs(p.A) + abs(p.B) + abs(p.eps * y0) + abs(p.eps * x0)
    return StationaryPoint(x0, y0, phase_value, regime, float(delta), math.hypot(gx, gy) / scale)


def stationary_phase_leading(p: OscParams) -> complex:
    """
    Leading stationary phase term 2 pi |det H|^(-1/2) w(x0/N) w(y0/N) exp(i phi0 + i pi sigma / 4),
    sigma being the signature of the Hessian H.
    """
    sp = stationary_point(p)
    hessian = np.array([[p.U / sp.x0 ** 2, p.eps], [p.eps, -p.U / sp.y0 ** 2]])
    eigenvalues = np.linalg.eigvalsh(hessian)
    if np.any(np.abs(eigenvalues) == 0):
        raise DomainViolationError("degenerate Hessian at the stationary point.")
    signature = int(np.sum(np.sign(eigenvalues)))
    amplitude = 2 * math.pi / math.sqrt(abs(float(np.prod(eigenvalues)))) * float(p.weight(sp.x0, sp.y0))
    return amplitude * complex(np.exp(1j * (sp.phase_value + math.pi * signature / 4)))


def i_integral(p: OscParams, epsabs: float = 1e-10, epsrel: float = 1e-8) -> QuadResult:
    """
    I(A, B, U, eps, N) by tensor panel quadrature over the window support.
    """
    p = p.validated()
    lo, hi = get_window(p.window).interval(p.N)
    result = quad_oscillatory_2d(p.phase, p.weight, (lo, hi), (lo, hi), epsabs, epsrel)
    if not result.converged:
        logger.warning("I(A=%g, B=%g, U=%g, eps=%g, N=%g) did not converge", p.A, p.B, p.U, p.eps, p.N)
    return result


class PhaseTaylor(typing.NamedTuple):
    """
    :param coefficients: c_j of delta^(2j+1) (U-dominant) or delta^(2j) (eps-dominant), j <= J
    :param remainder: scaled phase at delta minus the truncated series
    :param parity_defect: largest coefficient of the wrong parity
    """
    regime: Regime
    delta: float
    coefficients: np.ndarray
    remainder: float
    parity_defect: float


def _power(regime: Regime, j: int) -> int:
    return 2 * j + 1 if regime is Regime.U_DOMINANT else 2 * j


def taylor_coefficients(regime: Regime, order: int) -> np.ndarray:
    """
    All Taylor coefficients a_0..a_order of the scaled phase value at delta = 0, by the
    trapezoidal rule for Cauchy's integral on |delta| = 0.25.
    """
    if order >= TAYLOR_NODES // 2:
        raise ValueError(f"order must be below {TAYLOR_NODES // 2}.")
    circle = TAYLOR_RADIUS * np.exp(2j * np.pi * np.arange(TAYLOR_NODES) / TAYLOR_NODES)
    _, _, values = scaled_stationary_point(regime, circle)
    coefficients = np.fft.fft(values) / TAYLOR_NODES
    return (coefficients[:order + 1] / TAYLOR_RADIUS ** np.arange(order + 1)).real


def phase_taylor(regime: Regime, delta: float, J: int) -> PhaseTaylor:
    """
    Expansion of the scaled phase at the stationary point in powers of delta.

    U-dominant: delta - delta^3 / 3 + ...; eps-dominant: -1 + delta^2 + ..., even in delta.

    :param delta: evaluation point for the remainder, |delta| <= 0.3
    :param J: number of retained terms minus one
    """
    if abs(delta) > MAX_TAYLOR_DELTA:
        raise ValueError(f"delta must satisfy |delta| <= {MAX_TAYLOR_DELTA}.")
    if J < 0:
        raise ValueError("J must be non-negative.")
    top = _power(regime, J)
    a = taylor_coefficients(regime, top + 1)
    kept = np.array([a[_power(regime, j)] for j in range(J + 1)])
    wrong = a[0::2] if regime is Regime.U_DOMINANT else a[1::2]
    _, _, exact = scaled_stationary_point(regime, delta)
    series = sum(c * delta ** _power(regime, j) for j, c in enumerate(kept))
    return PhaseTaylor(regime, delta, kept, float(exact) - series, float(np.max(np.abs(wrong))))


class IbpDecay(typing.NamedTuple):
    r_values: tuple[float, ...]
    envelopes: np.ndarray
    ratios: np.ndarray


def ibp_decay_ratios(r_values: typing.Sequence[float] = (100.0, 200.0, 400.0), samples: int = 9) -> IbpDecay:
    """
    Decay of int w(t) exp(i R (t + t^2 / 8)) dt for the bump on [1, 2] as R doubles.

    The phase has no stationary point, so each doubling of R should shrink the integral by
    more than any fixed power; the envelope max over [R, 1.5 R] sidesteps the zeros of the
    oscillating transform.
    """
    envelopes = []
    for r in r_values:
        peak = 0.0
        for frequency in np.linspace(r, 1.5 * r, samples):
            result = quad_oscillatory_1d(
                lambda t, f=frequency: f * (t + t * t / 8), dyadic_window, 1.0, 2.0, epsabs=1e-18, epsrel=1e-10
            )
            peak = max(peak, abs(result.value))
        envelopes.append(peak)
    envelopes = np.array(envelopes)
    return IbpDecay(tuple(r_values), envelopes, envelopes[:-1] / envelopes[1:])
