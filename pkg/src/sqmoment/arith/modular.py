"""
Modular inverses and multiplicative helpers.
"""
import functools
import math

import numpy as np

from ..errors import NonInvertibleError
from .factor import check_modulus, factorize, primes_up_to


def mod_inverse(a: int, c: int) -> int:
    """
    Inverse of a modulo c.

    :param a: residue, any sign
    :param c: positive modulus
    :returns: the representative of a**-1 in [0, c)
    """
    c = check_modulus(c)
    if c == 1:
        return 0
    if math.gcd(a, c) != 1:
        raise NonInvertibleError(f"{a} is not invertible modulo {c}.")
    return pow(a, -1, c)


def valuation(n: int, p: int = 2) -> int:
    """
    p-adic valuation.

    :param n: nonzero integer
    :param p: prime, defaults to 2
    """
    if n == 0:
        raise ValueError("valuation of 0 is infinite.")
    if p == 2:
        n = abs(n)
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def radical(n: int) -> int:
    return math.prod(factorize(n))


def squarefree_part(n: int) -> int:
    """The squarefree A in n = A * B**2."""
    return math.prod(p for p, e in factorize(n).items() if e % 2)


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def mobius(n: int) -> int:
    factors = factorize(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def num_divisors(n: int) -> int:
    return math.prod(e + 1 for e in factorize(n).values())


@functools.lru_cache(maxsize=8)
def squarefree_sieve(limit: int) -> np.ndarray:
    """
    Boolean table of squarefree integers.

    :param limit: inclusive upper bound
    :returns: array f with f[n] True iff n is squarefree; f[0] is False
    """
    flags = np.ones(limit + 1, dtype=bool)
    flags[0] = False
    for p in range(2, math.isqrt(limit) + 1):
        flags[p * p::p * p] = False
    flags.flags.writeable = False
    return flags


def odd_squarefree(limit: int) -> np.ndarray:
    """Odd squarefree integers in [1, limit]."""
    flags = squarefree_sieve(limit).copy()
    flags[::2] = False
    return np.flatnonzero(flags).astype(np.int64)


@functools.lru_cache(maxsize=256)
def coprime_residues(c: int) -> np.ndarray:
    """Residues 0 <= u < c with gcd(u, c) = 1."""
    c = check_modulus(c)
    residues = np.arange(c, dtype=np.int64)
    mask = np.gcd(residues, c) == 1
    units = residues[mask]
    units.flags.writeable = False
    return units


@functools.lru_cache(maxsize=8)
def mobius_sieve(limit: int) -> np.ndarray:
    """
    Table of the Moebius function.

    :param limit: inclusive upper bound
    :returns: int8 array with mu[n] for 0 <= n <= limit and mu[0] = 0
    """
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_up_to(limit):
        p = int(p)
        mu[p::p] *= -1
        mu[p * p::p * p] = 0
    mu.flags.writeable = False
    return mu
