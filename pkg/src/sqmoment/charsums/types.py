"""Result and argument records for the character sums."""
import math
import typing

from ..arith import FactoredModulus, factor_modulus


class SumValue(typing.NamedTuple):
    """
    A sum with a flag for vanishing forced by structure rather than cancellation.

    :param value: the complex value
    :param is_exact_zero: True when the sum is identically 0 for arithmetic reasons
    """
    value: complex
    is_exact_zero: bool = False

    @classmethod
    def zero(cls) -> "SumValue":
        return cls(0j, True)

    def __complex__(self) -> complex:
        return complex(self.value)


class CharSumCase(typing.NamedTuple):
    """Arguments of T(a, b; c) with the reduced a' = a/(a,c) and b' = b/(b,c)."""
    a: int
    b: int
    modulus: FactoredModulus

    @classmethod
    def build(cls, a: int, b: int, c: int) -> "CharSumCase":
        return cls(a, b, factor_modulus(c))

    @property
    def gcd_a(self) -> int:
        return math.gcd(self.a, self.modulus.value)

    @property
    def gcd_b(self) -> int:
        return math.gcd(self.b, self.modulus.value)

    @property
    def a_reduced(self) -> int:
        return self.a // self.gcd_a

    @property
    def b_reduced(self) -> int:
        return self.b // self.gcd_b


class RealCharacter(typing.NamedTuple):
    """
    The real character n -> (n/q_star) * [gcd(n, q_zero) = 1] viewed modulo q.

    q_star is odd squarefree, gcd(q_star, q_zero) = 1, and q has exactly the primes of
    q_star * q_zero.
    """
    q: int
    q_star: int
    q_zero: int
