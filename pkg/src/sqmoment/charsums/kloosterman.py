"""
Kloosterman sums S(m, n; c) by direct summation over units.
"""
import functools

import numpy as np

from ..arith import coprime_residues
from ..numeric import e_mod
from .gauss import _oracle_guard
from .types import SumValue


@functools.lru_cache(maxsize=256)
def unit_inverses(c: int) -> tuple[np.ndarray, np.ndarray]:
    """
    :param c: positive modulus
    :returns: the units mod c and their inverses, aligned
    """
    units = coprime_residues(c)
    inverses = np.array([pow(int(u), -1, c) for u in units], dtype=np.int64)
    inverses.flags.writeable = False
    return units, inverses


def kloosterman(m: int, n: int, c: int) -> SumValue:
    """
    S(m, n; c) = sum over units x of e((m x + n x^-1) / c).

    The value is real up to rounding in the imaginary part.
    """
    c = _oracle_guard(c)
    units, inverses = unit_inverses(c)
    phases = ((m % c) * units + (n % c) * inverses) % c
    return SumValue(complex(np.sum(e_mod(phases, c))))
