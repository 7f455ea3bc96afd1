"""
Z_{k,l}: its Euler product identity and the defining multi-sum it is checked against.

    Z_{k,l} = L(beta, chi) zeta(2 alpha + 2 beta) (1 - 2^(-2 alpha - 2 beta)) D(alpha, beta, chi)
              (1 - chi(2) 2^(-beta)) prod_{p | kl} a_p

with chi(n) = (n / kl), optionally twisted by characters mod 8.
"""
import itertools
import logging
import math
import typing

import mpmath
import numpy as np

from ..arith import factorize, odd_squarefree, primes_up_to
from ..errors import DomainViolationError, SingularEvaluationError
from .dseries import d_series
from .local import a_p
from .point import Domain, SeriesPoint, SeriesValue, domain_contains
from .twist import Mod8Character, Mod8Twist, character_at, check_kl, is_principal, series_character

logger = logging.getLogger(__name__)

POLE_DISTANCE = 1e-8
RANKIN_PRIMES = 10 ** 5


def _eta3(twist: typing.Optional[Mod8Twist]) -> typing.Optional[Mod8Character]:
    if twist is None or twist.eta3 is Mod8Character.PRINCIPAL:
        return None
    return twist.eta3


def _outer_sign(twist: typing.Optional[Mod8Twist], k: int, l: int) -> int:
    return 1 if twist is None else twist.outer_sign(k, l)


def z_kl_product(
        k: int,
        l: int,
        pt: SeriesPoint,
        cutoff: int = 10 ** 4,
        twist: typing.Optional[Mod8Twist] = None,
        domain: Domain = Domain.D0
) -> SeriesValue:
    """
    Product form of Z_{k,l}.

    L(beta, chi) and zeta(2 alpha + 2 beta) come from mpmath; D is truncated at primes <= cutoff.

    :param k: positive odd integer
    :param l: positive odd integer
    :param pt: evaluation point, a member of domain
    :param cutoff: prime cutoff of the D series
    :param twist: optional characters mod 8 (eta1 on k, eta2 on l, eta3 on q)
    :param domain: domain pt is required to lie in; outside D0 Re(beta) > 0 is also required
    """
    kl = check_kl(k, l)
    if not domain_contains(domain, pt):
        raise DomainViolationError(f"{pt!r} is not in {domain.value}.")
    alpha, beta = pt.alpha, pt.beta
    if domain is not Domain.D0 and beta.real <= 0:
        raise DomainViolationError("the product form needs Re(beta) > 0.")
    eta3 = _eta3(twist)
    chi = series_character(kl, eta3)
    if is_principal(chi) and abs(beta - 1) < POLE_DISTANCE:
        raise SingularEvaluationError("L(beta, chi) has a pole at beta = 1 for principal chi.")

    l_value = complex(mpmath.dirichlet(beta, [int(v) for v in chi]))
    zeta_value = complex(mpmath.zeta(2 * alpha + 2 * beta))
    d_value = d_series(pt, kl, cutoff, eta3)
    two_adic = (1 - 2 ** (-2 * alpha - 2 * beta)) * (1 - character_at(chi, 2) * 2 ** -beta)
    ramified = math.prod((a_p(p, pt) for p in factorize(kl)), start=1 + 0j)

    value = _outer_sign(twist, k, l) * l_value * zeta_value * two_adic * d_value.value * ramified
    error = abs(value) * d_value.error / max(abs(d_value.value), 1e-300)
    return SeriesValue(value, error)


def _divisor_sum(p: int, top: int, alpha: complex) -> complex:
    return sum(p ** (-g * alpha) for g in range(top + 1))


class _CoprimeSums:
    """Sums of w(n) over n coprime to a given odd squarefree m, by inclusion-exclusion."""

    def __init__(self, weights: np.ndarray):
        self._weights = weights
        self._multiples: dict[int, complex] = {}

    def multiples(self, d: int) -> complex:
        if d not in self._multiples:
            self._multiples[d] = complex(self._weights[d::d].sum())
        return self._multiples[d]

    def coprime_to(self, primes: typing.Sequence[int]) -> complex:
        total = 0j
        for size in range(len(primes) + 1):
            for subset in itertools.combinations(primes, size):
                total += (-1) ** size * self.multiples(math.prod(subset))
        return total


def pair_tail_bound(cutoff: int, sigma: float) -> float:
    """
    Upper bound for the sum over odd n > cutoff of 2^omega(n) tau(n^2) n^-sigma, sigma > 1.

    Rankin: the sum is at most cutoff^-delta times the full series at sigma - delta, an Euler
    product with local factors 1 + 2 x (3 - x) / (1 - x)^2, x = p^-(sigma - delta). Primes beyond
    RANKIN_PRIMES contribute at most exp(6.01 P^(1 - s) / (s - 1)).
    """
    if sigma <= 1:
        return math.inf
    s = 1 + min(0.5, (sigma - 1) / 2)
    x = primes_up_to(RANKIN_PRIMES)[1:].astype(np.float64) ** -s
    log_product = float(np.log1p(2 * x * (3 - x) / (1 - x) ** 2).sum())
    log_product += 6.01 * RANKIN_PRIMES ** (1 - s) / (s - 1)
    return math.exp(log_product - (sigma - s) * math.log(cutoff))


def z_kl_oracle(
        k: int,
        l: int,
        pt: SeriesPoint,
        cutoff: int = 400,
        q_cutoff: int = 2 ** 18,
        twist: typing.Optional[Mod8Twist] = None,
        tail_correction: bool = True
) -> SeriesValue:
    """
    Direct evaluation of the defining multi-sum of Z_{k,l} over odd coprime r1, r2 with r1 r2 <= cutoff,
    g1 | r1^2, g2 | r2^2 with (r2^2 / g2, kl) = 1, and squarefree q <= q_cutoff with rad(r1) | q and
    (q, 2 r2) = 1.

    When chi is principal the q-sum tail is replaced by its mean value
    (6 / pi^2) prod_{p | 2 kl r1 r2} p / (p + 1) Q^(1 - beta) / (beta - 1).

    The attached error is a bound, with b = Re beta > 1 and a = Re alpha. Every divisor sum is at
    most tau(r^2) r^(2 max(0, -a)) and every q-sum at most zeta(b), so the pairs with r1 r2 > cutoff
    contribute at most zeta(b) pair_tail_bound(cutoff, 2b - 2 max(0, -a)). Each kept pair loses at
    most Q^(1 - b) / (b - 1) to the q truncation, twice that with the mean-value correction.

    :param pt: point of D0
    """
    kl = check_kl(k, l)
    if not domain_contains(Domain.D0, pt):
        raise DomainViolationError("the multi-sum converges absolutely only on D0.")
    if cutoff < 1 or q_cutoff < 16:
        raise ValueError("cutoff must be positive and q_cutoff at least 16.")
    alpha, beta = pt.alpha, pt.beta
    chi = series_character(kl, _eta3(twist))
    principal = is_principal(chi)
    kl_primes = set(factorize(kl))

    n = odd_squarefree(q_cutoff)
    weights = np.zeros(q_cutoff + 1, dtype=np.complex128)
    weights[n] = chi[n % len(chi)] * np.exp(-beta * np.log(n.astype(np.float64)))
    sums = _CoprimeSums(weights)

    total, kept = 0j, 0.0
    for r1 in range(1, cutoff + 1, 2):
        f1 = factorize(r1)
        rad1 = math.prod(f1)
        chi_rad1 = character_at(chi, rad1)
        if chi_rad1 == 0:
            continue
        g1_sum = math.prod((_divisor_sum(p, 2 * e, alpha) for p, e in f1.items()), start=1 + 0j)
        for r2 in range(1, cutoff // r1 + 1, 2):
            if math.gcd(r1, r2) != 1:
                continue
            f2 = factorize(r2)
            g2_sum = 1 + 0j
            for p, e in f2.items():
                unrestricted = _divisor_sum(p, 2 * e - 1, alpha) if p not in kl_primes else 0
                g2_sum *= unrestricted + (1 - 1 / p) * p ** (-2 * e * alpha)
            primes = sorted(set(f1) | set(f2))
            q_sum = sums.coprime_to(primes)
            if tail_correction and principal:
                density = 6 / math.pi ** 2 * math.prod(p / (p + 1) for p in {2} | kl_primes | set(primes))
                q_sum += density * q_cutoff ** (1 - beta) / (beta - 1)
            weight = chi_rad1 * rad1 ** -beta * (r1 * r2) ** (-2 * beta) * g1_sum * g2_sum
            kept += abs(weight)
            total += weight * q_sum

    a, b = alpha.real, beta.real
    corrected = 2 if tail_correction and principal else 1
    q_tail = corrected * q_cutoff ** (1 - b) / (b - 1) if b > 1 else math.inf
    pair_tail = (float(mpmath.zeta(b)) if b > 1 else math.inf) * pair_tail_bound(cutoff, 2 * b - 2 * max(0.0, -a))
    error = pair_tail + kept * q_tail
    logger.debug("Z_{%d,%d} oracle: cutoff=%d q_cutoff=%d error <= %.3g", k, l, cutoff, q_cutoff, error)
    return SeriesValue(_outer_sign(twist, k, l) * total, error)
