"""
The 2-adic series Z^(2) split by the relation between lambda and nu.

The series is the sum over nu, gamma >= 2 and lambda >= 4 with min(lambda, nu) = min(lambda, gamma) of

    gcd(2^nu, 2^(lambda - 2 - delta)) / 2^(lambda beta + nu a2 + gamma a3)

where a2 = u2 - iU - s and a3 = u3 + iU - s.
"""
import enum
import math
import typing

import numpy as np

from ..errors import DivergentParameterError, SingularEvaluationError
from .point import SeriesPoint, SeriesValue

LOG2 = math.log(2.0)
POLE_TOLERANCE = 1e-12


class CaseLabel(enum.Enum):
    """i) lambda <= nu, ii) lambda = nu + 1, iii) lambda = nu + 2, iv) lambda >= nu + 3."""
    I = "i"
    II = "ii"
    III = "iii"
    IV = "iv"

    @classmethod
    def of(cls, lam: int, nu: int) -> "CaseLabel":
        gap = lam - nu
        if gap <= 0:
            return cls.I
        return {1: cls.II, 2: cls.III}.get(gap, cls.IV)


class Z2Part(enum.Enum):
    TOTAL = "total"
    HEAD = "head"
    TAIL = "tail"


def _pow2(exponent: complex) -> complex:
    return complex(np.exp(-exponent * LOG2))


def _inverse(value: complex, what: str) -> complex:
    if abs(value) < POLE_TOLERANCE:
        raise SingularEvaluationError(f"{what} vanishes at this point.")
    return 1 / value


def _check_delta(delta: int):
    if delta not in (0, 1):
        raise ValueError("delta must be 0 or 1.")


def _check_split(L: typing.Optional[float], part: Z2Part) -> float:
    if L is None:
        L = math.inf
    if part is not Z2Part.TOTAL and L != math.inf and (L < 3 or L != int(L)):
        raise ValueError("L must be an integer >= 3 or infinite.")
    return L


def z2_closed(
        case: CaseLabel,
        pt: SeriesPoint,
        delta: int,
        L: typing.Optional[float] = None,
        part: Z2Part = Z2Part.TOTAL
) -> complex:
    """
    Closed form of Z^(2) or of its pieces lambda - nu <= L (head) and lambda - nu > L (tail).

    Only case iv splits; in cases i-iii the head is the whole series and the tail is 0.

    :param case: which relation between lambda and nu is summed
    :param pt: evaluation point
    :param delta: 0 or 1
    :param L: split point, an integer >= 3, or None / math.inf for no split
    :param part: total, head or tail
    """
    _check_delta(delta)
    L = _check_split(L, part)
    alpha, beta = pt.alpha, pt.beta
    if (alpha + beta).real <= 0:
        raise DivergentParameterError("Z^(2) needs Re(alpha + beta) > 0.")
    geometric = _inverse(1 - _pow2(alpha + beta), "1 - 2^(-alpha-beta)")

    if case is not CaseLabel.IV:
        if part is Z2Part.TAIL:
            return 0j
        if case is CaseLabel.I:
            if pt.a2.real <= 0 or pt.a3.real <= 0:
                raise DivergentParameterError("case i needs Re(u2 - iU - s), Re(u3 + iU - s) > 0.")
            return (
                _pow2(2 + delta + 4 * (alpha + beta))
                * _inverse(1 - _pow2(pt.a2), "1 - 2^-a2") * _inverse(1 - _pow2(pt.a3), "1 - 2^-a3") * geometric
            )
        if case is CaseLabel.II:
            return _pow2(1 + delta + 3 * alpha + 4 * beta) * geometric
        return _pow2(delta + 2 * alpha + 4 * beta) * geometric

    prefactor = _pow2(2 * alpha + 2 * beta) * geometric
    if part is Z2Part.HEAD and L != math.inf:
        return prefactor * sum(_pow2(mu * beta) for mu in range(3, int(L) + 1))
    if part is Z2Part.TAIL and L == math.inf:
        return 0j
    if beta.real <= 0:
        raise DivergentParameterError("the tail lambda - nu > L needs Re(beta) > 0.")
    tail_start = L + 1 if part is Z2Part.TAIL else 3
    return prefactor * _pow2(beta * tail_start) * _inverse(1 - _pow2(beta), "1 - 2^-beta")


def _grid_terms(pt: SeriesPoint, delta: int, grid_cutoff: int):
    nu, gamma, lam = np.meshgrid(
        np.arange(2, grid_cutoff + 1), np.arange(2, grid_cutoff + 1), np.arange(4, grid_cutoff + 1), indexing="ij"
    )
    exponent = np.minimum(nu, lam - 2 - delta) - lam * pt.beta - nu * pt.a2 - gamma * pt.a3
    terms = np.exp(exponent * LOG2)
    valid = np.minimum(lam, nu) == np.minimum(lam, gamma)
    return nu, gamma, lam, np.where(valid, terms, 0)


def z2_oracle(
        case: CaseLabel,
        pt: SeriesPoint,
        delta: int,
        L: typing.Optional[float] = None,
        grid_cutoff: int = 60,
        part: Z2Part = Z2Part.TOTAL
) -> SeriesValue:
    """
    Direct triple sum over nu, gamma <= grid_cutoff and lambda <= grid_cutoff.

    :returns: the truncated sum with the size of its outermost layer, scaled by the
        geometric ratio, as the tail estimate
    """
    _check_delta(delta)
    L = _check_split(L, part)
    if grid_cutoff < 10:
        raise ValueError("grid_cutoff must be at least 10.")
    nu, gamma, lam, terms = _grid_terms(pt, delta, grid_cutoff)
    gap = lam - nu
    mask = {
        CaseLabel.I: gap <= 0,
        CaseLabel.II: gap == 1,
        CaseLabel.III: gap == 2,
        CaseLabel.IV: gap >= 3,
    }[case]
    if part is Z2Part.HEAD:
        mask = mask & (gap <= L)
    elif part is Z2Part.TAIL:
        mask = mask & (gap > L)
    selected = np.where(mask, terms, 0)

    outer = (nu == grid_cutoff) | (gamma == grid_cutoff) | (lam == grid_cutoff)
    rate = min(pt.a2.real, pt.a3.real, pt.beta.real, (pt.alpha + pt.beta).real)
    ratio = 2.0 ** -rate if rate > 0 else 1.0
    layer = float(np.abs(selected[outer]).sum())
    error = layer / (1 - ratio) if ratio < 1 else math.inf
    return SeriesValue(complex(selected.sum()), error)


def z2_bound_ratio(pt: SeriesPoint, L: int, delta: int = 0) -> float:
    """
    |Z^(2)_{<=L}| / (L (2^(-L Re beta) + 1)) in case iv.
    """
    head = z2_closed(CaseLabel.IV, pt, delta, L, Z2Part.HEAD)
    return abs(head) / (L * (2.0 ** (-L * pt.beta.real) + 1))
