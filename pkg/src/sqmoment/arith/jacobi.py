"""
Jacobi symbol and the fourth-root-of-unity factor of quadratic Gauss sums.
"""
import functools

import numpy as np

from .factor import check_modulus

EpsilonFactor = complex


def jacobi(m: int, n: int) -> int:
    """
    Jacobi symbol (m/n) by the binary reciprocity algorithm.

    Negative m is reduced modulo n first.

    :param m: any integer
    :param n: positive odd integer
    :returns: -1, 0 or 1
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer.")
    n = check_modulus(n, "n")
    m %= n
    result = 1
    while m:
        while m % 2 == 0:
            m //= 2
            if n % 8 in (3, 5):
                result = -result
        m, n = n, m
        if m % 4 == 3 and n % 4 == 3:
            result = -result
        m %= n
    return result if n == 1 else 0


def epsilon(c: int) -> EpsilonFactor:
    """
    :param c: positive odd integer
    :returns: 1 if c = 1 mod 4, 1j if c = 3 mod 4
    """
    if c < 1 or c % 2 == 0:
        raise ValueError("c must be a positive odd integer.")
    return 1 + 0j if c % 4 == 1 else 1j


@functools.lru_cache(maxsize=512)
def jacobi_character(m: int) -> np.ndarray:
    """
    Periodic table of n -> (n/m).

    :param m: positive odd modulus
    :returns: int8 array of length m indexed by n mod m
    """
    table = np.array([jacobi(n, m) for n in range(m)], dtype=np.int8)
    table.flags.writeable = False
    return table


def kronecker_two(n: int) -> int:
    """(2/n) for odd n, and 0 for even n."""
    if n % 2 == 0:
        return 0
    return 1 if n % 8 in (1, 7) else -1
