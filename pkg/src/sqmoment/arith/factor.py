"""
Prime table, trial division and the modulus decompositions used by the character sums.
"""
import functools
import math
import typing

import numpy as np

from ..errors import ModulusRangeError

MAX_MODULUS = 2 ** 31
PRIME_TABLE_LIMIT = 10 ** 6


def check_modulus(c: int, name: str = "c") -> int:
    """
    Validates a modulus against the supported range.

    :param c: modulus to check
    :param name: name used in error messages
    :returns: the modulus as a python integer
    """
    c = int(c)
    if c < 1:
        raise ValueError(f"{name} must be a positive integer.")
    if c > MAX_MODULUS:
        raise ModulusRangeError(f"{name} must not exceed 2**31, got {c}.")
    return c


@functools.lru_cache(maxsize=8)
def primes_up_to(limit: int) -> np.ndarray:
    """
    Sieve of Eratosthenes.

    :param limit: inclusive upper bound
    :returns: sorted int64 array of the primes <= limit
    """
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p::2 * p] = False
    primes = np.flatnonzero(flags).astype(np.int64)
    primes.flags.writeable = False
    return primes


def prime_table() -> np.ndarray:
    """Primes below 10**6."""
    return primes_up_to(PRIME_TABLE_LIMIT)


@functools.lru_cache(maxsize=65536)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    factors = []
    for p in prime_table():
        p = int(p)
        if p * p > n:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((p, e))
    if n > 1:
        factors.append((n, 1))
    return tuple(factors)


def factorize(n: int) -> dict[int, int]:
    """
    Factors n by trial division over the prime table.

    :param n: integer with 1 <= n <= 10**12
    :returns: mapping prime -> exponent, empty for n = 1
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer.")
    if n > PRIME_TABLE_LIMIT ** 2:
        raise ModulusRangeError("trial division is limited to n <= 10**12.")
    return dict(_factorize(n))


class FactoredModulus(typing.NamedTuple):
    """
    A modulus c = 2**two_exponent * odd_part with its finer decompositions.

    odd_part = q * r1**2 * r2**2 where q is squarefree, every prime of r1 divides q and
    gcd(q, r2) = 1. squarefree_kernel is q, square_support the radical of r2.
    c = c1 * c2 with c | c1**2, c2 | c1 and c1 / c2 squarefree.
    """
    value: int
    two_exponent: int
    odd_part: int
    delta: int
    squarefree_kernel: int
    square_support: int
    q: int
    r1: int
    r2: int
    c1: int
    c2: int

    def reassemble(self) -> int:
        return 2 ** self.two_exponent * self.q * self.r1 ** 2 * self.r2 ** 2

    @property
    def is_two_power(self) -> bool:
        return self.odd_part == 1


def factor_modulus(c: int) -> FactoredModulus:
    """
    Decomposes a modulus.

    :param c: positive integer up to 2**31
    :returns: the decomposition, trivial for c = 1
    """
    c = check_modulus(c)
    factors = factorize(c)
    lam = factors.pop(2, 0)
    odd_part = c >> lam

    q = r1 = r2 = square_support = 1
    for p, e in factors.items():
        if e % 2:
            q *= p
            r1 *= p ** ((e - 1) // 2)
        else:
            r2 *= p ** (e // 2)
            square_support *= p

    # c = A * B**2 with A squarefree
    a_part, b_part = 1, 1
    for p, e in {2: lam, **factors}.items():
        a_part *= p ** (e % 2)
        b_part *= p ** (e // 2)

    return FactoredModulus(
        value=c,
        two_exponent=lam,
        odd_part=odd_part,
        delta=lam % 2,
        squarefree_kernel=q,
        square_support=square_support,
        q=q,
        r1=r1,
        r2=r2,
        c1=a_part * b_part,
        c2=b_part,
    )
