"""
The quadratic character n -> (n / kl) and its twists by real characters mod 8.
"""
import enum
import functools
import typing

import numpy as np

from ..arith import jacobi_character


class Mod8Character(enum.IntEnum):
    """Real characters mod 8, labelled by the discriminant d of n -> (d/n)."""
    PRINCIPAL = 1
    MINUS_FOUR = -4
    EIGHT = 8
    MINUS_EIGHT = -8

    def at(self, n: int) -> int:
        if n % 2 == 0:
            return 0
        minus_four = 1 if n % 4 == 1 else -1
        eight = 1 if n % 8 in (1, 7) else -1
        return {
            Mod8Character.PRINCIPAL: 1,
            Mod8Character.MINUS_FOUR: minus_four,
            Mod8Character.EIGHT: eight,
            Mod8Character.MINUS_EIGHT: minus_four * eight,
        }[self]


class Mod8Twist(typing.NamedTuple):
    """(eta1, eta2, eta3): eta1 twists k, eta2 twists l, eta3 twists the summation variable q."""
    eta1: Mod8Character = Mod8Character.PRINCIPAL
    eta2: Mod8Character = Mod8Character.PRINCIPAL
    eta3: Mod8Character = Mod8Character.PRINCIPAL

    def outer_sign(self, k: int, l: int) -> int:
        return self.eta1.at(k) * self.eta2.at(l)


@functools.lru_cache(maxsize=512)
def series_character(kl: int, eta3: typing.Optional[Mod8Character] = None) -> np.ndarray:
    """
    Periodic table of chi(n) = (n / kl), times eta3(n) when a twist is given.

    :param kl: positive odd integer
    :param eta3: optional character mod 8
    :returns: int8 array over one period (kl, or 8 kl when twisted)
    """
    if kl < 1 or kl % 2 == 0:
        raise ValueError("kl must be a positive odd integer.")
    base = jacobi_character(kl)
    if eta3 is None:
        return base
    n = np.arange(8 * kl)
    twist = np.array([eta3.at(int(r)) for r in range(8)], dtype=np.int8)
    table = (base[n % kl] * twist[n % 8]).astype(np.int8)
    table.flags.writeable = False
    return table


def is_principal(table: np.ndarray) -> bool:
    """True when the character takes the value 1 on every unit of its period."""
    period = len(table)
    n = np.arange(period)
    units = np.gcd(n, period) == 1
    return bool(np.all(table[units] == 1))


def character_at(table: np.ndarray, n: int) -> int:
    return int(table[n % len(table)])


def check_kl(k: int, l: int) -> int:
    if k < 1 or l < 1 or k % 2 == 0 or l % 2 == 0:
        raise ValueError("k and l must be positive odd integers.")
    return k * l
