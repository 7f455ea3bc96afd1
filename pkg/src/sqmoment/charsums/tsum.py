"""
The double sum T(a, b; c) = sum over x, y mod c of S(x**2, y**2; c) e_c(2xy + ax + by).

Opening the Kloosterman sum and completing the square collapses it to
T(a, b; c) = c * sum over units t with a t = b (mod c) of sum over z of e_c(t z**2 + b z),
which is what the oracle evaluates. The closed form needs 2**4 | c.
"""
import collections
import functools
import logging
import math
import typing

import numpy as np
import pandas as pd

from ..arith import check_modulus, coprime_residues, epsilon, factorize, jacobi
from ..errors import SizeGuardError, UnsupportedModulusError
from ..numeric import e_mod, relative_error
from .kloosterman import unit_inverses
from .types import CharSumCase, SumValue

logger = logging.getLogger(__name__)

ORACLE_MAX_MODULUS = 4096
NAIVE_MAX_MODULUS = 256
FIXTURE_COLUMNS = ["a", "b", "c", "re", "im", "oracle_re", "oracle_im", "rel_err"]


@functools.lru_cache(maxsize=4)
def _quadratic_table(c: int) -> tuple[np.ndarray, np.ndarray]:
    # row t: g_t(b) = sum_z e_c(t z^2 + b z) for every b, through one inverse FFT per unit
    units = coprime_residues(c)
    z = np.arange(c, dtype=np.int64)
    squares = z * z % c
    rows = e_mod(units[:, None] * squares[None, :] % c, c)
    table = c * np.fft.ifft(rows, axis=1)
    table.flags.writeable = False
    return units, table


def t_sum_oracle(a: int, b: int, c: int) -> SumValue:
    """
    Exact T(a, b; c) from the one-variable collapse.

    :param a: integer
    :param b: integer
    :param c: modulus up to 4096
    """
    c = check_modulus(c)
    if c > ORACLE_MAX_MODULUS:
        raise SizeGuardError(f"t_sum_oracle is limited to c <= {ORACLE_MAX_MODULUS}.")
    units, table = _quadratic_table(c)
    mask = ((a % c) * units - b) % c == 0
    if not mask.any():
        return SumValue.zero()
    return SumValue(complex(c * np.sum(table[mask, b % c])))


def t_sum_naive(a: int, b: int, c: int) -> SumValue:
    """
    T(a, b; c) straight from its definition, for c <= 256.
    """
    c = check_modulus(c)
    if c > NAIVE_MAX_MODULUS:
        raise SizeGuardError(f"t_sum_naive is limited to c <= {NAIVE_MAX_MODULUS}.")
    units, inverses = unit_inverses(c)
    r = np.arange(c, dtype=np.int64)
    # S(r, s; c) for every pair of residues
    kloosterman_block = e_mod(r[:, None] * units[None, :] % c, c) @ e_mod(r[:, None] * inverses[None, :] % c, c).T
    x = r
    squares = x * x % c
    phases = (2 * x[:, None] * x[None, :] + (a % c) * x[:, None] + (b % c) * x[None, :]) % c
    return SumValue(complex(np.sum(kloosterman_block[np.ix_(squares, squares)] * e_mod(phases, c))))


def _v_sum(residue: int, modulus: int, odd_part: int, delta: int) -> complex:
    # odd v mod 2^(2+delta) with v = residue mod modulus
    period = 4 << delta
    exponents = [v * odd_part % period for v in range(1, period, 2) if (v - residue) % modulus == 0]
    if delta == 0:
        return complex(sum(1 + 1j ** k for k in exponents))
    # e_8(k) and e_8(k + 4) cancel; odd eighth roots are otherwise independent
    counts = collections.Counter(exponents)
    if all(counts[k] == counts[(k + 4) % 8] for k in list(counts)):
        return 0j
    return complex(math.sqrt(2) * sum(e_mod(k, 8) for k in exponents))


def t_sum_closed(a: int, b: int, c: int) -> SumValue:
    """
    Closed evaluation of T(a, b; c) for c = 2**j c_o with j >= 4.

    T vanishes unless (a, c) = (b, c) and 4 | (a, b). Otherwise, with a' = a/(a,c),
    b' = b/(b,c), c* the squarefree kernel of c_o and c_sq the radical of its square part,

        T = c**(3/2) eps_{c_o} e_c(-ab/4) (a, c/2**(2+delta)) (a' b' 2**delta / c*)
            * prod over p | c_sq, p not dividing c_o/(a,c_o) of (1 - 1/p)
            * [c* | c_o/(a, c_o)] * g,

    where g sums 1 + e_4(v c_o) (delta = 0) or sqrt(2) e_8(v c_o) (delta = 1) over odd v
    mod 2**(2+delta) with v = b'^-1 a' modulo gcd(2**j/(a, 2**j), 2**(2+delta)).

    :param a: integer
    :param b: integer
    :param c: modulus divisible by 16
    """
    case = CharSumCase.build(a, b, c)
    f = case.modulus
    if f.two_exponent < 4:
        raise UnsupportedModulusError("t_sum_closed needs 2**4 | c.")

    if case.gcd_a != case.gcd_b or a % 4 or b % 4:
        return SumValue.zero()

    c_o, delta, c_star = f.odd_part, f.delta, f.squarefree_kernel
    d = c_o // math.gcd(a, c_o)
    if d % c_star:
        return SumValue.zero()

    a1, b1 = case.a_reduced, case.b_reduced
    two_j = 1 << f.two_exponent
    modulus = math.gcd(two_j // math.gcd(a, two_j), 4 << delta)
    residue = a1 * pow(b1, -1, modulus) % modulus if modulus > 1 else 0
    g = _v_sum(residue, modulus, c_o, delta)

    local = 1.0
    for p in factorize(f.square_support):
        if d % p:
            local *= 1 - 1 / p

    value = (
        c ** 1.5 * epsilon(c_o) * e_mod((-(a * b) // 4) % c, c)
        * math.gcd(a, c >> (2 + delta)) * jacobi(a1 * b1 * 2 ** delta, c_star)
        * local * g
    )
    if value == 0:
        return SumValue.zero()
    return SumValue(complex(value))


def compare_t_sums(a: int, b: int, c: int, oracle: typing.Callable[[int, int, int], SumValue] = t_sum_oracle) -> dict:
    """
    One fixture row: closed form against the oracle.

    Relative errors are taken against max(|oracle|, c) so exact zeros on both sides compare equal.
    """
    closed = t_sum_closed(a, b, c)
    reference = oracle(a, b, c)
    rel_err = relative_error(closed.value, reference.value, scale=float(c))
    if closed.is_exact_zero and abs(reference.value) > 1e-6 * c:
        logger.warning("T(%d, %d; %d) closed form vanishes but oracle gives %s", a, b, c, reference.value)
    return {
        "a": a, "b": b, "c": c,
        "re": closed.value.real, "im": closed.value.imag,
        "oracle_re": reference.value.real, "oracle_im": reference.value.imag,
        "rel_err": rel_err,
    }


def write_t_fixture(rows: typing.Iterable[dict], path) -> pd.DataFrame:
    """
    Writes verified T values as CSV, sorted by (c, a, b).

    :param rows: rows as returned by compare_t_sums
    :param path: destination file
    :returns: the written frame
    """
    frame = pd.DataFrame(list(rows), columns=FIXTURE_COLUMNS).sort_values(["c", "a", "b"], kind="mergesort")
    frame.to_csv(path, index=False, float_format="%.12e")
    return frame
