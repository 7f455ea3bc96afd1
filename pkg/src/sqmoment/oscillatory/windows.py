"""
Concrete inert windows: the exp(-1/(1 - t^2)) bump on a dyadic interval, a smooth step and a
log-Gaussian window with fast Fourier decay.
"""
import functools
import math
import typing

import numpy as np
from numpy.polynomial import Polynomial

LOG_GAUSSIAN_WIDTH = 0.2
LOG_GAUSSIAN_CENTER = math.sqrt(2.0)


def bump(t):
    """exp(-1 / (1 - t^2)) on (-1, 1), zero elsewhere; bump(0) = 1/e."""
    t = np.asarray(t, dtype=np.float64)
    inside = np.abs(t) < 1
    safe = np.where(inside, t, 0.0)
    return np.where(inside, np.exp(-1.0 / (1.0 - safe * safe)), 0.0)


@functools.lru_cache(maxsize=None)
def _bump_numerator(j: int) -> Polynomial:
    # bump^(j)(t) = p_j(t) / (1 - t^2)^(2j) * bump(t)
    if j == 0:
        return Polynomial([1.0])
    previous = _bump_numerator(j - 1)
    t = Polynomial([0.0, 1.0])
    one_minus = Polynomial([1.0, 0.0, -1.0])
    return previous.deriv() * one_minus ** 2 + 4 * (j - 1) * t * one_minus * previous - 2 * t * previous


def bump_derivative(t, j: int):
    """
    j-th derivative of the bump, evaluated through p_j(t) exp(-1/(1 - t^2) - 2j log(1 - t^2)).
    """
    if j < 0:
        raise ValueError("j must be non-negative.")
    t = np.asarray(t, dtype=np.float64)
    inside = np.abs(t) < 1
    safe = np.where(inside, t, 0.0)
    gap = 1.0 - safe * safe
    log_scale = -1.0 / gap - 2 * j * np.log(gap)
    return np.where(inside, _bump_numerator(j)(safe) * np.exp(log_scale), 0.0)


def smooth_step(t):
    """
    C-infinity step: 0 for t <= 0, 1 for t >= 1, f(t) / (f(t) + f(1 - t)) with f(t) = exp(-1/t) between.
    """
    t = np.asarray(t, dtype=np.float64)

    def f(s):
        positive = s > 0
        return np.where(positive, np.exp(-1.0 / np.where(positive, s, 1.0)), 0.0)

    rising, falling = f(t), f(1.0 - t)
    return rising / (rising + falling)


def dyadic_window(x, scale: float = 1.0):
    """The bump carried onto [scale, 2 scale]."""
    return bump(2.0 * np.asarray(x, dtype=np.float64) / scale - 3.0)


def log_gaussian_window(x, scale: float = 1.0, width: float = LOG_GAUSSIAN_WIDTH):
    """exp(-log(x / (sqrt(2) scale))^2 / (2 width^2)) for x > 0."""
    x = np.asarray(x, dtype=np.float64)
    positive = x > 0
    u = np.log(np.where(positive, x, 1.0) / (LOG_GAUSSIAN_CENTER * scale))
    return np.where(positive, np.exp(-u * u / (2 * width * width)), 0.0)


def _zero(x, scale: float = 1.0):
    return np.zeros_like(np.asarray(x, dtype=np.float64))


class InertWindow(typing.NamedTuple):
    """
    A named window w(x / scale) with its support in units of scale.
    """
    name: str
    profile: typing.Callable
    support: tuple[float, float]

    def __call__(self, x, scale: float = 1.0):
        return self.profile(x, scale)

    def interval(self, scale: float) -> tuple[float, float]:
        return self.support[0] * scale, self.support[1] * scale


WINDOWS = {
    "bump": InertWindow("bump", dyadic_window, (1.0, 2.0)),
    "zero": InertWindow("zero", _zero, (1.0, 2.0)),
    # 8 widths either side of the centre, where the window is below 1e-13
    "lognormal": InertWindow(
        "lognormal",
        log_gaussian_window,
        (LOG_GAUSSIAN_CENTER * math.exp(-8 * LOG_GAUSSIAN_WIDTH), LOG_GAUSSIAN_CENTER * math.exp(8 * LOG_GAUSSIAN_WIDTH)),
    ),
}


def get_window(name: str) -> InertWindow:
    try:
        return WINDOWS[name]
    except KeyError:
        raise ValueError(f"window must be one of {sorted(WINDOWS)}.") from None


def derivative_bounds(j_max: int = 6, samples: int = 20001) -> np.ndarray:
    """
    C(j) = sup over x in [1, 2] of |x^j d^j/dx^j dyadic_window(x)| for j = 0..j_max.

    C(0) = 1/e.
    """
    if j_max < 0:
        raise ValueError("j_max must be non-negative.")
    x = np.linspace(1.0, 2.0, samples)
    t = 2.0 * x - 3.0
    return np.array([float(np.max(np.abs(x ** j * 2.0 ** j * bump_derivative(t, j)))) for j in range(j_max + 1)])
