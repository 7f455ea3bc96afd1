"""
Quadratic Gauss sums G(a/c) = sum over x mod c of e(a x**2 / c).
"""
import cmath
import math

import numpy as np

from ..arith import check_modulus, epsilon, factor_modulus, jacobi, kronecker_two
from ..errors import NonInvertibleError, SizeGuardError, UnsupportedModulusError
from ..numeric import e_mod
from .types import SumValue

ORACLE_MAX_MODULUS = 2 ** 24


def _oracle_guard(c: int) -> int:
    c = check_modulus(c)
    if c > ORACLE_MAX_MODULUS:
        raise SizeGuardError(f"direct summation is limited to c <= {ORACLE_MAX_MODULUS}.")
    return c


def gauss_sum_oracle(a: int, c: int) -> SumValue:
    """
    Direct summation of the Gauss sum.

    :param a: any integer
    :param c: positive modulus
    """
    c = _oracle_guard(c)
    x = np.arange(c, dtype=np.int64)
    return SumValue(complex(np.sum(e_mod((a % c) * (x * x % c), c))))


def gauss_sum_linear(a: int, b: int, c: int) -> SumValue:
    """Direct summation of sum over x mod c of e((a x**2 + b x) / c)."""
    c = _oracle_guard(c)
    x = np.arange(c, dtype=np.int64)
    return SumValue(complex(np.sum(e_mod((a % c) * (x * x % c) + (b % c) * x, c))))


def gauss_sum_two_power(tau: int, j: int) -> complex:
    """
    G(tau / 2**j) = (1 + i**tau) 2**(j/2) (2/tau)**j for odd tau and j >= 2.
    """
    if tau % 2 == 0:
        raise NonInvertibleError("tau must be odd.")
    if j < 2:
        raise UnsupportedModulusError("j must be at least 2.")
    return (1 + 1j ** (tau % 4)) * 2 ** (j / 2) * kronecker_two(tau) ** j


def gauss_sum_closed(a: int, c: int) -> SumValue:
    """
    Closed form of the Gauss sum for a coprime to c.

    Odd c gives (a/c) eps_c sqrt(c). For c = 2**k c_o with k >= 2,
    G = eps_{c_o} sqrt(c) (a 2**delta / c_o) times 1 + e_4(a c_o) when k is even
    and sqrt(2) e_8(a c_o) when k is odd. The case 2 || c is not covered.

    :param a: integer coprime to c
    :param c: positive modulus
    """
    c = check_modulus(c)
    if math.gcd(a, c) != 1:
        raise NonInvertibleError("a must be coprime to c.")
    f = factor_modulus(c)
    if f.two_exponent == 0:
        return SumValue(jacobi(a, c) * epsilon(c) * math.sqrt(c))
    if f.two_exponent == 1:
        raise UnsupportedModulusError("no closed form when 2 exactly divides c.")

    c_o, delta = f.odd_part, f.delta
    prefactor = epsilon(c_o) * math.sqrt(c) * jacobi(a * 2 ** delta, c_o)
    if delta == 0:
        return SumValue(prefactor * (1 + 1j ** (a * c_o % 4)))
    return SumValue(prefactor * math.sqrt(2) * cmath.exp(2j * math.pi * (a * c_o % 8) / 8))
