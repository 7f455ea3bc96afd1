"""
Real character sums over an arithmetic progression.

S(a, d, q) = sum over n mod q with n = a mod d of chi(n), where chi is the Jacobi
character mod q_star times the principal character on the primes of q_zero.
"""
import math
from fractions import Fraction

import numpy as np

from ..arith import factorize, is_squarefree, jacobi, jacobi_character, radical
from .types import RealCharacter, SumValue


def validate_character(chi: RealCharacter) -> RealCharacter:
    q, q_star, q_zero = chi
    if q < 1 or q_star < 1 or q_zero < 1:
        raise ValueError("q, q_star and q_zero must be positive integers.")
    if q_star % 2 == 0 or not is_squarefree(q_star):
        raise ValueError("q_star must be odd and squarefree.")
    if math.gcd(q_star, q_zero) != 1:
        raise ValueError("q_star and q_zero must be coprime.")
    if radical(q) != radical(q_star * q_zero):
        raise ValueError("q must have exactly the primes of q_star * q_zero.")
    return chi


def _validate_progression(chi: RealCharacter, a: int, d: int):
    validate_character(chi)
    if d < 1 or chi.q % d:
        raise ValueError("d must be a positive divisor of q.")
    if math.gcd(a, d) != 1:
        raise ValueError("a must be coprime to d.")


def char_sum_ap_exact(chi: RealCharacter, a: int, d: int) -> Fraction:
    """
    Closed form: 0 unless q_star | d, else (q/d) chi_star(a) prod over p | q_zero, p not dividing d of (1 - 1/p).

    :param chi: the character
    :param a: residue coprime to d
    :param d: divisor of q
    :returns: the exact rational value
    """
    _validate_progression(chi, a, d)
    if d % chi.q_star:
        return Fraction(0)
    value = Fraction(chi.q, d) * jacobi(a, chi.q_star)
    for p in factorize(chi.q_zero):
        if d % p:
            value *= Fraction(p - 1, p)
    return value


def char_sum_ap(chi: RealCharacter, a: int, d: int) -> SumValue:
    """Floating view of char_sum_ap_exact."""
    value = char_sum_ap_exact(chi, a, d)
    return SumValue(complex(float(value)), is_exact_zero=d % chi.q_star != 0)


def character_values(chi: RealCharacter) -> np.ndarray:
    """chi(n) for n = 0 .. q-1 as int64."""
    n = np.arange(chi.q, dtype=np.int64)
    values = jacobi_character(chi.q_star)[n % chi.q_star].astype(np.int64)
    values[np.gcd(n, chi.q_zero) != 1] = 0
    return values


def char_sum_ap_table(chi: RealCharacter, d: int) -> np.ndarray:
    """
    Direct sums for every residue class mod d at once.

    :returns: int64 array whose entry r is the sum of chi(n) over n = r mod d
    """
    validate_character(chi)
    if d < 1 or chi.q % d:
        raise ValueError("d must be a positive divisor of q.")
    n = np.arange(chi.q, dtype=np.int64)
    return np.bincount(n % d, weights=character_values(chi), minlength=d).round().astype(np.int64)


def char_sum_ap_direct(chi: RealCharacter, a: int, d: int) -> int:
    """Direct integer summation over n mod q."""
    _validate_progression(chi, a, d)
    return int(char_sum_ap_table(chi, d)[a % d])
