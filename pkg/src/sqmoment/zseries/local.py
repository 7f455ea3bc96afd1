"""
Local factors of Z_{k,l} at odd primes.

For p not dividing 2kl the factor is

    (1 + p^(-a-2b) - p^(-1-2a-2b) + chi(p) p^(-1-2a-3b)) / ((1 - chi(p) p^(-b)) (1 - p^(-2a-2b)))

and for p | kl it is (1 - p^(-1-2a-2b)) / (1 - p^(-2a-2b)), with a = alpha, b = beta.
"""
import logging

from ..errors import DomainViolationError, SingularEvaluationError
from .point import SeriesPoint, SeriesValue

logger = logging.getLogger(__name__)

POLE_TOLERANCE = 1e-12


def _guarded(denominator: complex, what: str) -> complex:
    if abs(denominator) < POLE_TOLERANCE:
        raise SingularEvaluationError(f"{what} vanishes at this point.")
    return denominator


def _check_prime(p: int):
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime.")


def local_factor_unramified(p: int, chi_p: int, pt: SeriesPoint) -> complex:
    """
    Local factor at a prime not dividing 2kl.

    :param p: odd prime
    :param chi_p: (p / kl), either -1 or 1
    :param pt: point with Re(beta) > 0 and Re(alpha + beta) > 0
    """
    _check_prime(p)
    if chi_p not in (-1, 1):
        raise ValueError("chi_p must be -1 or 1 at an unramified prime.")
    alpha, beta = pt.alpha, pt.beta
    if beta.real <= 0 or (alpha + beta).real <= 0:
        raise DomainViolationError("the local factor needs Re(beta) > 0 and Re(alpha + beta) > 0.")
    numerator = 1 + p ** (-alpha - 2 * beta) - p ** (-1 - 2 * alpha - 2 * beta) + chi_p * p ** (-1 - 2 * alpha - 3 * beta)
    denominator = (
        _guarded(1 - chi_p * p ** -beta, "1 - chi(p) p^-beta")
        * _guarded(1 - p ** (-2 * alpha - 2 * beta), "1 - p^(-2 alpha - 2 beta)")
    )
    return numerator / denominator


def local_factor_uncancelled(p: int, chi_p: int, pt: SeriesPoint) -> complex:
    """
    The same factor before (1 + chi(p) p^-beta) is cancelled against 1 - p^(-2 beta).

    It has spurious poles where p^(-2 beta) = 1, which the cancelled form does not.
    """
    _check_prime(p)
    alpha, beta = pt.alpha, pt.beta
    numerator = (
        (1 + chi_p * p ** -beta) * (1 + p ** (-alpha - 2 * beta))
        - p ** (-1 - 2 * alpha - 2 * beta) * (1 - p ** (-2 * beta))
    )
    denominator = (
        _guarded(1 - p ** (-2 * beta), "1 - p^(-2 beta)")
        * _guarded(1 - p ** (-2 * alpha - 2 * beta), "1 - p^(-2 alpha - 2 beta)")
    )
    return numerator / denominator


def local_factor_ramified(p: int, pt: SeriesPoint) -> complex:
    """
    Local factor at a prime dividing kl.

    :param p: odd prime
    :param pt: point with Re(2 alpha + 2 beta) > 0
    """
    _check_prime(p)
    exponent = 2 * pt.alpha + 2 * pt.beta
    if exponent.real <= 0:
        raise DomainViolationError("the ramified factor needs Re(2 alpha + 2 beta) > 0.")
    return (1 - p ** (-1 - exponent)) / _guarded(1 - p ** -exponent, "1 - p^(-2 alpha - 2 beta)")


def a_p(p: int, pt: SeriesPoint) -> complex:
    """
    Correction at p | kl turning the unramified Euler product into the ramified factor:
    (1 - p^(-1-2a-2b)) / (1 + p^(-a-2b) - p^(-1-2a-2b)).
    """
    _check_prime(p)
    alpha, beta = pt.alpha, pt.beta
    denominator = 1 + p ** (-alpha - 2 * beta) - p ** (-1 - 2 * alpha - 2 * beta)
    return (1 - p ** (-1 - 2 * alpha - 2 * beta)) / _guarded(denominator, "the a_p denominator")


def local_factor_oracle(p: int, chi_p: int, pt: SeriesPoint, cutoff: int = 40) -> SeriesValue:
    """
    Direct evaluation of the local multi-sum over exponents (r1, r2, g1, g2, q).

    Terms are chi(p)^q p^(-beta (q + 2 r1 + 2 r2) - alpha (g1 + g2)) over min(r1, r2) = 0,
    0 <= g_i <= 2 r_i, q in {0, 1}, q = 1 whenever r1 > 0 and q = 0 whenever r2 > 0,
    weighted by 1 - 1/p when g2 = 2 r2 > 0. A ramified prime (chi_p = 0) keeps only
    q = r1 = 0 and g2 = 2 r2.

    :param p: odd prime
    :param chi_p: -1, 0 or 1
    :param pt: point of D0
    :param cutoff: largest r1 and r2, at least 10
    """
    _check_prime(p)
    if chi_p not in (-1, 0, 1):
        raise ValueError("chi_p must be -1, 0 or 1.")
    if cutoff < 10:
        raise ValueError("cutoff must be at least 10.")
    x = p ** -pt.beta
    y = p ** -pt.alpha
    if abs(x) >= 1 or abs(y) >= 1:
        raise DomainViolationError("the local multi-sum needs Re(alpha), Re(beta) > 0.")
    damping = 1 - 1 / p

    total = 0j
    if chi_p == 0:
        for r2 in range(cutoff + 1):
            total += (damping if r2 else 1) * (x * y) ** (2 * r2)
        error = abs(x * y) ** (2 * cutoff + 2) / (1 - abs(x * y) ** 2)
        return SeriesValue(total, error)

    for r1 in range(cutoff + 1):
        for g1 in range(2 * r1 + 1):
            for q in (0, 1):
                if r1 > 0 and q == 0:
                    continue
                total += chi_p ** q * x ** (q + 2 * r1) * y ** g1
    for r2 in range(1, cutoff + 1):
        for g2 in range(2 * r2 + 1):
            total += (damping if g2 == 2 * r2 else 1) * x ** (2 * r2) * y ** g2

    ax, ay = abs(x), abs(y)
    error = 2 * ax ** (2 * cutoff + 2) / ((1 - ax ** 2) * (1 - ay))
    logger.debug("local oracle p=%d chi=%d cutoff=%d error<=%.3g", p, chi_p, cutoff, error)
    return SeriesValue(total, error)
