"""
Stationary point of the v-phase

    phi(v) = -2vT - 2t log v + t v^2 / 6,    phi'(v) = -2T - 2t / v + t v / 3,

for t < 0. phi'(v) v = 0 is a quadratic in v; the root with v0 ~ -t/T is

    v0 = -2t / (T (1 + sqrt(1 + 2t^2 / (3T^2)))) = -t/T + t^3 / (6T^3) + O(t^5 / T^5),

and phi(v0) = 2t - 2t log(|t|/T) + t^3 / (6T^2) + O(t^5 / T^4).
"""
import math
import typing

import numpy as np

from ..errors import DomainViolationError

GUARD = 0.1


class VPoint(typing.NamedTuple):
    v0: float
    phase_value: float
    second_derivative: float


def v_integral_point(t: float, T: float, guard: float = GUARD) -> VPoint:
    """
    :param guard: |t| must not exceed T^(1 - guard)
    :raises DomainViolationError: for t > 0 (no positive root) or |t| beyond the guard
    """
    if T < 1:
        raise ValueError("T must be at least 1.")
    if not 0 < guard < 1:
        raise ValueError("guard must lie in (0, 1).")
    if t > 0:
        raise DomainViolationError("t must be non-positive: the stationary root is negative for t > 0.")
    if -t > T ** (1 - guard):
        raise DomainViolationError(f"|t| = {-t:g} exceeds T^(1 - guard) = {T ** (1 - guard):g}.")
    if t == 0:
        return VPoint(0.0, 0.0, 0.0)
    v0 = -2 * t / (T * (1 + math.sqrt(1 + 2 * t * t / (3 * T * T))))
    phase_value = -2 * v0 * T - 2 * t * math.log(v0) + t * v0 * v0 / 6
    return VPoint(v0, phase_value, 2 * t / v0 ** 2 + t / 3)


class ExpansionFit(typing.NamedTuple):
    """Fitted a' in v0 = -t/T + a' t^3/T^3 and a in phi(v0) = 2t - 2t log(|t|/T) + a t^3/T^2."""
    root_coefficient: float
    phase_coefficient: float


def fit_expansion_constants(T: float, t_values: typing.Sequence[float]) -> ExpansionFit:
    """Medians of the rescaled cubic corrections over t_values; both tend to 1/6."""
    t_values = np.asarray(t_values, dtype=np.float64)
    if t_values.size == 0 or np.any(t_values >= 0):
        raise ValueError("t_values must be a non-empty sequence of negative numbers.")
    roots, phases = [], []
    for t in t_values:
        point = v_integral_point(float(t), T)
        roots.append((point.v0 + t / T) * T ** 3 / t ** 3)
        leading = 2 * t - 2 * t * math.log(-t / T)
        phases.append((point.phase_value - leading) * T ** 2 / t ** 3)
    return ExpansionFit(float(np.median(roots)), float(np.median(phases)))
