"""
Double Poisson summation of the Kloosterman-square sum.

With G(m, n) = S(m^2, n^2; c) e_c(2mn), periodic in m and n mod c, splitting m = x + c i,
n = y + c j and applying sum_i f(x + c i) = c^-1 sum_k f^(k / c) e(k x / c) in each variable gives

    sum_{m,n} G(m, n) F(m, n) = c^-2 sum_{k,l} T(k, l; c) F^(k / c, l / c),

with T(k, l; c) = sum_{x,y mod c} G(x, y) e_c(kx + ly) and F^(xi, eta) = int F(x, y) e(-x xi - y eta).
Replacing k by -k gives the form with T(-k, l; c) F^(-k/c, l/c).
"""
import logging
import math
import typing

import numpy as np

from ..arith import check_modulus, valuation
from ..charsums import SumValue, t_sum_closed, unit_inverses
from ..errors import SizeGuardError, UnsupportedModulusError
from ..numeric import e_mod, relative_error
from .testfunctions import TestFunctionPair, gaussian, gaussian_linear

logger = logging.getLogger(__name__)

MAX_BLOCK = 4_000_000
ROUNDOFF = 1e-12

TSum = typing.Callable[[int, int, int], SumValue]


def check_poisson_modulus(c: int) -> int:
    c = check_modulus(c)
    if valuation(c) < 4:
        raise UnsupportedModulusError("the Poisson identity is checked for 2**4 | c.")
    return c


def _check_block(rows: int, columns: int):
    if rows * columns > MAX_BLOCK:
        raise SizeGuardError(f"a {rows} x {columns} block exceeds {MAX_BLOCK} entries.")


def kloosterman_square_block(m: np.ndarray, n: np.ndarray, c: int) -> np.ndarray:
    """
    S(m^2, n^2; c) e_c(2mn) for m down the rows and n across the columns.
    """
    units, inverses = unit_inverses(c)
    m = np.asarray(m, dtype=np.int64) % c
    n = np.asarray(n, dtype=np.int64) % c
    left = e_mod((m * m % c)[:, None] * units[None, :] % c, c)
    right = e_mod(inverses[:, None] * (n * n % c)[None, :] % c, c)
    return (left @ right) * e_mod(2 * m[:, None] * n[None, :] % c, c)


def direct_side(c: int, F: TestFunctionPair, trunc: typing.Optional[int] = None) -> complex:
    """
    sum over |m|, |n| <= trunc of S(m^2, n^2; c) e_c(2mn) F(m, n).

    Each term of F is summed over the integers where its factors are above the Gaussian tail,
    so trunc only matters when it cuts into that range.
    """
    return _direct_sums(c, F, trunc)[0]


def _direct_sums(c: int, F: TestFunctionPair, trunc: typing.Optional[int]) -> tuple[complex, float]:
    # the sum and the sum of absolute values of its terms
    c = check_poisson_modulus(c)
    total, absolute = 0j, 0.0
    for term in F.terms:
        m, n = term.x.lattice_window(trunc), term.y.lattice_window(trunc)
        if term.coefficient == 0 or not len(m) or not len(n):
            continue
        _check_block(len(m), len(n))
        block = kloosterman_square_block(m, n, c)
        fx, fy = term.x(m), term.y(n)
        total += term.coefficient * (fx @ block @ fy)
        absolute += abs(term.coefficient) * float(np.abs(fx) @ np.abs(block) @ np.abs(fy))
    return complex(total), absolute


def t_table(k: np.ndarray, l: np.ndarray, c: int, t_sum: TSum = t_sum_closed, cache: typing.Optional[dict] = None) -> np.ndarray:
    """
    T(k, l; c) for k down the rows and l across the columns, one t_sum call per residue pair.
    """
    cache = {} if cache is None else cache
    table = np.empty((len(k), len(l)), dtype=np.complex128)
    for i, a in enumerate(np.asarray(k, dtype=np.int64) % c):
        for j, b in enumerate(np.asarray(l, dtype=np.int64) % c):
            key = (int(a), int(b))
            if key not in cache:
                cache[key] = complex(t_sum(key[0], key[1], c).value)
            table[i, j] = cache[key]
    return table


def dual_side(c: int, F: TestFunctionPair, trunc: typing.Optional[int] = None, t_sum: TSum = t_sum_closed) -> complex:
    """
    c^-2 sum over |k|, |l| <= trunc of T(k, l; c) F^(k / c, l / c).

    Each term of F is summed over the frequencies where its transform is above the Gaussian tail.

    :param t_sum: evaluator of T(a, b; c), the closed form by default
    """
    c = check_poisson_modulus(c)
    cache = {}
    total = 0j
    for term in F.terms:
        k, l = term.x.dual_window(c, trunc), term.y.dual_window(c, trunc)
        if term.coefficient == 0 or not len(k) or not len(l):
            continue
        _check_block(len(k), len(l))
        table = t_table(k, l, c, t_sum, cache)
        total += term.coefficient * (term.x.transform(k / c) @ table @ term.y.transform(l / c))
    return complex(total / c ** 2)


class PoissonCase(typing.NamedTuple):
    """
    Both sides of the identity for one modulus and test function.

    :param absolute: sum of the absolute values of the direct terms
    :param relative_error: |dual - direct| over |direct|, or over 1e-12 absolute when direct is smaller
    """
    c: int
    label: str
    direct: complex
    dual: complex
    absolute: float
    relative_error: float

    def passed(self, tol: float) -> bool:
        return self.relative_error <= tol


def compare_sides(
        c: int,
        F: TestFunctionPair,
        label: str = "",
        trunc: typing.Optional[int] = None,
        t_sum: TSum = t_sum_closed
) -> PoissonCase:
    direct, absolute = _direct_sums(c, F, trunc)
    dual = dual_side(c, F, trunc, t_sum)
    case = PoissonCase(
        c, label, direct, dual, absolute, relative_error(dual, direct, scale=ROUNDOFF * absolute)
    )
    logger.debug("poisson c=%d %s: direct=%s dual=%s rel=%.3g", c, label, direct, dual, case.relative_error)
    return case


def gaussian_shapes(c: int) -> dict[str, TestFunctionPair]:
    """
    Three test functions scaled to c: widths of order sqrt(c) keep both sides to a few
    hundred terms per axis.
    """
    w = math.sqrt(c)
    return {
        "centred": gaussian(center=(c, c), width=(w, w)),
        "modulated": gaussian(
            center=(0.3 * c, -0.2 * c), width=(0.8 * w, 1.3 * w), frequency=(0.25, -0.125), coefficient=0.5 - 0.25j
        ),
        "linear": gaussian_linear(
            center=(0.5 * c + 0.5, 0.25 * c), width=(w, 0.7 * w), frequency=(0.0625, 0.1),
            slope=(0.3 / w, -0.2j / (0.7 * w)),
        ),
    }
