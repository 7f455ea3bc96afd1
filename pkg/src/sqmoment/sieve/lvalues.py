"""
Central values L(1/2 + it, (./m)) for odd squarefree m and their weighted second moment.

For m > 1 the character (./m) is primitive of conductor m, even when m = 1 mod 4 and odd
otherwise, with root number 1. With gamma(s) = pi^(-s/2) Gamma((s + kappa)/2) and
Lambda(s) = m^(s/2) gamma(s) L(s), shifting the contour of

    I(s) = (2 pi i)^-1 int_(c) Lambda(s + u) G(u) du / u,    G(u) = exp(u^2 / b^2),

across u = 0 and applying Lambda(s) = Lambda(1 - s) gives

    Lambda(s) = I(s) + I(1 - s) - [m = 1] (G(1 - s) / (1 - s) + G(s) / s),

the bracket being the residues of the poles of the completed zeta function. On the critical
line I(1 - s) = conj I(s), so L(s) = J + exp(-2 i theta) conj J - polar terms, where
J = I(s) / (m^(s/2) gamma(s)) and theta = arg(m^(s/2) gamma(s)).
"""
import functools
import logging
import math
import typing

import mpmath
import numpy as np
import pandas as pd
from scipy.special import loggamma

from ..arith import is_squarefree, odd_squarefree
from ..errors import DomainViolationError, ModulusRangeError
from ..oscillatory.quadrature import apply_rule, breakpoints_from_rate, panel_rule
from .largesieve import EPS_EXPONENT, jacobi_symbols

logger = logging.getLogger(__name__)

MAX_CONDUCTOR = 10 ** 4
MAX_HEIGHT = 10 ** 3
MAX_MOMENT_RANGE = 4000
# G(u) = exp(u^2 / SMOOTHING^2); the Dirichlet sums run to LENGTH_FACTOR times the square root
# of the analytic conductor at height |t| + SHIFT, where the smoothed weight is below 1e-12
SMOOTHING = 5.0
LINE = 1.0
TAIL = 1e-16
LENGTH_FACTOR = 8.2
SHIFT = 28.0
ORACLE_DPS = 30


def _check_character(m: int, t: float):
    if m < 1 or m % 2 == 0 or not is_squarefree(m):
        raise ValueError("m must be a positive odd squarefree integer.")
    if m > MAX_CONDUCTOR:
        raise ModulusRangeError(f"m is limited to {MAX_CONDUCTOR}.")
    if abs(t) > MAX_HEIGHT:
        raise DomainViolationError(f"|t| is limited to {MAX_HEIGHT}.")


def parity(m: int) -> int:
    """kappa with (-1/m) = (-1)^kappa."""
    return 0 if m % 4 == 1 else 1


def sum_length(m: int, t: float) -> int:
    return int(math.ceil(LENGTH_FACTOR * math.sqrt(m * (abs(t) + SHIFT) / (2 * math.pi)))) + 10


def v_reach(m: int, t: float) -> float:
    """
    Half-width of the truncated v-integral on Re u = LINE.

    With |G(1 + iv)| = exp((1 - v^2) / SMOOTHING^2) and the gamma ratio growing at most like
    exp(pi |v| / 4) towards smaller heights, the integrand is bounded by

        sqrt(m (|t| + 100)) zeta(3/2) exp(pi |v| / 4 + (1 - v^2) / SMOOTHING^2),

    and the reach is the positive v where this equals TAIL.
    """
    log_bound = 0.5 * math.log(m * (abs(t) + 100.0)) + math.log(3.0) - math.log(TAIL)
    b2 = SMOOTHING ** 2
    a = math.pi / 4
    return b2 / 2 * (a + math.sqrt(a * a + 4 * (1 / b2 + log_bound) / b2))


def _log_gamma_factor(s, m: int, kappa: int):
    # log(m^(s/2) gamma(s))
    return s / 2 * math.log(m / math.pi) + loggamma((s + kappa) / 2)


def _smoothing(u):
    return np.exp(u * u / SMOOTHING ** 2)


def quadratic_L_value(m: int, t: float = 0.0) -> complex:
    """
    L(1/2 + it, (./m)) by the smoothed approximate functional equation.

    Over m <= 1000 and |t| <= 1000 it agrees with lvalue_oracle to 1e-6 relative.

    m = 1 gives zeta(1/2 + it).
    """
    _check_character(m, t)
    kappa = parity(m)
    s = complex(0.5, t)
    length = sum_length(m, t)
    n = np.arange(1, length + 1, dtype=np.int64)
    chi = jacobi_symbols(n, m).astype(np.float64)
    keep = chi != 0
    log_n = np.log(n[keep].astype(np.float64))

    reach = v_reach(m, t)
    rate = math.log(length) + 0.5 * math.log(m / math.pi) + 1.0
    breakpoints = breakpoints_from_rate(
        lambda v: rate + 0.5 * np.log((np.abs(t + v) + 2) / 2), -reach, reach, min_panels=16
    )
    v, weights = panel_rule(breakpoints)
    u = LINE + 1j * v
    log_ratio = _log_gamma_factor(s + u, m, kappa) - _log_gamma_factor(s, m, kappa)
    kernel = (np.exp(log_ratio) * _smoothing(u) / u / (2 * math.pi))[None, :]

    def integrand(rows, nodes):
        return np.exp(-(s + LINE + 1j * nodes) * rows) * kernel

    J = complex(np.dot(chi[keep], apply_rule(integrand, log_n, v, weights)))
    log_factor = complex(_log_gamma_factor(s, m, kappa))
    value = J + np.exp(-2j * log_factor.imag) * J.conjugate()
    if m == 1:
        # in logarithms: 1 / gamma(s) overflows at large |t| where G(s) underflows
        value -= (
            np.exp((1 - s) ** 2 / SMOOTHING ** 2 - log_factor) / (1 - s)
            + np.exp(s * s / SMOOTHING ** 2 - log_factor) / s
        )
    logger.debug("L(1/2 + %gi, (./%d)) = %s from %d terms and %d nodes", t, m, value, length, len(v))
    return complex(value)


@functools.lru_cache(maxsize=1024)
def lvalue_oracle(m: int, t: float = 0.0) -> complex:
    """
    L(1/2 + it, (./m)) = m^-s sum_{a <= m} (a/m) zeta(s, a/m) with mpmath's Hurwitz zeta.
    """
    _check_character(m, t)
    with mpmath.workdps(ORACLE_DPS):
        s = mpmath.mpc(0.5, t)
        if m == 1:
            return complex(mpmath.zeta(s))
        chi = jacobi_symbols(np.arange(1, m + 1), m)
        total = mpmath.fsum(
            int(chi[a - 1]) * mpmath.zeta(s, mpmath.mpf(a) / m) for a in range(1, m + 1) if chi[a - 1]
        )
        return complex(mpmath.power(m, -s) * total)


class MomentReport(typing.NamedTuple):
    """
    sum over odd squarefree m <= M of m^(-1/2) |L(1/2 + it, (./m))|^2 against
    (M^(1/2) + (1 + |t|)^(1/2)) (M (1 + |t|))^0.1.
    """
    M: int
    t: float
    total: float
    normalizer: float
    terms: int

    @property
    def ratio(self) -> float:
        return self.total / self.normalizer


def weighted_second_moment(M: int, t: float = 0.0) -> MomentReport:
    if not 1 <= M <= MAX_MOMENT_RANGE:
        raise ModulusRangeError(f"M must lie in [1, {MAX_MOMENT_RANGE}].")
    moduli = odd_squarefree(M)
    total = math.fsum(abs(quadratic_L_value(int(m), t)) ** 2 / math.sqrt(m) for m in moduli)
    normalizer = (math.sqrt(M) + math.sqrt(1 + abs(t))) * (M * (1 + abs(t))) ** EPS_EXPONENT
    report = MomentReport(M, float(t), total, normalizer, len(moduli))
    logger.info("second moment M=%d t=%g: ratio %.4g over %d moduli", M, t, report.ratio, report.terms)
    return report


def moment_scan(M_values: typing.Iterable[int], t_values: typing.Iterable[float]) -> pd.DataFrame:
    """One row per (M, t) with the total, the normalizer and the ratio."""
    t_values = list(t_values)
    rows = [weighted_second_moment(M, t)._asdict() for M in sorted(M_values) for t in t_values]
    frame = pd.DataFrame(rows, columns=list(MomentReport._fields))
    frame["ratio"] = frame["total"] / frame["normalizer"]
    return frame
