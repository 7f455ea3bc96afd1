"""
The auxiliary series D(alpha, beta, chi) = sum over odd squarefree n = abc of
mu(b) chi(c) / (n^(alpha + 2 beta) b^(1 + alpha) c^(1 + alpha + beta)),
with its Euler product over odd primes

    1 + p^(-alpha-2beta) (1 - p^(-1-alpha) + chi(p) p^(-1-alpha-beta)).
"""
import enum
import logging
import typing

import numpy as np

from ..arith import mobius_sieve, odd_squarefree, primes_up_to
from ..errors import DomainViolationError
from .point import SeriesPoint, SeriesValue
from .twist import Mod8Character, series_character

logger = logging.getLogger(__name__)

MIN_CUTOFF = 100


class DSeriesForm(enum.Enum):
    SUM = "sum"
    PRODUCT = "product"


def _check_point(pt: SeriesPoint) -> float:
    sigma = (pt.alpha + 2 * pt.beta).real
    if sigma <= 1 or (pt.alpha + pt.beta).real <= 0:
        raise DomainViolationError("D needs Re(alpha + 2 beta) > 1 and Re(alpha + beta) > 0.")
    return sigma


def _powers(n: np.ndarray, exponent: complex) -> np.ndarray:
    return np.exp(-exponent * np.log(n.astype(np.float64)))


def dirichlet_convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """
    Dirichlet convolution of two arithmetic functions tabulated on [0, N]; index 0 is ignored.
    """
    if len(f) != len(g):
        raise ValueError("f and g must have the same length.")
    n_max = len(f) - 1
    h = np.zeros(len(f), dtype=np.result_type(f, g, np.complex128))
    for d in np.flatnonzero(f[1:]) + 1:
        h[d::d] += f[d] * g[1:n_max // d + 1]
    return h


def _character_on(n: np.ndarray, kl: int, eta3: typing.Optional[Mod8Character]) -> np.ndarray:
    table = series_character(kl, eta3)
    return table[n % len(table)].astype(np.float64)


def d_series_coefficients(
        pt: SeriesPoint, kl: int, cutoff: int, eta3: typing.Optional[Mod8Character] = None
) -> np.ndarray:
    """
    Terms of the D series for n <= cutoff; entry n is zero unless n is odd and squarefree.
    """
    n = np.arange(1, cutoff + 1)
    f_b = np.zeros(cutoff + 1, dtype=np.complex128)
    f_c = np.zeros(cutoff + 1, dtype=np.complex128)
    f_b[1:] = mobius_sieve(cutoff)[1:] * _powers(n, 1 + pt.alpha)
    f_c[1:] = _character_on(n, kl, eta3) * _powers(n, 1 + pt.alpha + pt.beta)
    f_b[2::2] = 0
    f_c[2::2] = 0
    ones = np.zeros(cutoff + 1)
    ones[1::2] = 1.0
    h = dirichlet_convolve(ones, dirichlet_convolve(f_b, f_c))

    terms = np.zeros(cutoff + 1, dtype=np.complex128)
    support = odd_squarefree(cutoff)
    terms[support] = h[support] * _powers(support, pt.alpha + 2 * pt.beta)
    return terms


def d_series(
        pt: SeriesPoint,
        kl: int,
        cutoff: int = 10 ** 4,
        eta3: typing.Optional[Mod8Character] = None,
        form: DSeriesForm = DSeriesForm.PRODUCT
) -> SeriesValue:
    """
    D(alpha, beta, chi_kl) truncated at n <= cutoff (sum form) or p <= cutoff (product form).

    :param pt: point with Re(alpha + 2 beta) > 1 and Re(alpha + beta) > 0
    :param kl: positive odd integer defining chi
    :param cutoff: truncation point, at least 100
    :param eta3: optional character mod 8 twisting chi
    :param form: which of the two representations to evaluate
    :returns: value with a tail estimate
    """
    sigma = _check_point(pt)
    if cutoff < MIN_CUTOFF:
        raise ValueError(f"cutoff must be at least {MIN_CUTOFF}.")

    if form is DSeriesForm.SUM:
        terms = d_series_coefficients(pt, kl, cutoff, eta3)
        scale = float(np.max(np.abs(terms) * np.arange(cutoff + 1) ** sigma))
        error = scale * cutoff ** (1 - sigma) / (sigma - 1)
        return SeriesValue(complex(terms.sum()), error)

    p = primes_up_to(cutoff)[1:]
    chi = _character_on(p, kl, eta3)
    local = 1 + _powers(p, pt.alpha + 2 * pt.beta) * (
        1 - _powers(p, 1 + pt.alpha) + chi * _powers(p, 1 + pt.alpha + pt.beta)
    )
    value = complex(np.prod(local))
    error = abs(value) * 3 * cutoff ** (1 - sigma) / (sigma - 1)
    logger.debug("D product over %d primes, tail<=%.3g", len(p), error)
    return SeriesValue(value, error)
