"""
Poisson summation of the off-diagonal Kloosterman-square sum weighted by K+.

For each modulus c the smooth summand is

    Psi(x, y) = w(x / N) w(y / N) (x / y)^(-iU) K+(4 pi x y / c),

summed directly against S(m^2, n^2; c) e_c(2mn) over the lattice, and dually as
c^-2 sum T(k, l; c) Psi^(k / c, l / c) with Psi^ by tensor Gauss-Legendre quadrature.
K+ is evaluated by quadrature on a grid of its argument and splined.
"""
import logging
import math
import typing

import numpy as np
from scipy.interpolate import CubicSpline

from ..charsums import t_sum_closed
from ..errors import SizeGuardError
from ..numeric import relative_error
from ..oscillatory import SpectralWeightParams, get_window, k_plus, panel_rule
from .identity import MAX_BLOCK, TSum, check_poisson_modulus, kloosterman_square_block, t_table

logger = logging.getLogger(__name__)

MAX_T = 200
MAX_N = 400
MAX_MODULI = 20
# the dual sum runs over |k / c| <= FREQUENCY_WIDTHS / N, and over twice that for the truncation check
FREQUENCY_WIDTHS = 80.0
KPLUS_NODES = 129
ROW_CHUNK = 64


class DemoParams(typing.NamedTuple):
    T: float
    Delta: float
    U: float
    N: float
    moduli: tuple[int, ...]
    window: str = "bump"

    def validated(self) -> "DemoParams":
        SpectralWeightParams(self.T, self.Delta, self.U, self.N, float(min(self.moduli or (1,)))).validated()
        if self.T > MAX_T or self.N > MAX_N:
            raise ValueError(f"the demo is limited to T <= {MAX_T} and N <= {MAX_N}.")
        if not 1 <= len(self.moduli) <= MAX_MODULI:
            raise ValueError(f"moduli must hold between 1 and {MAX_MODULI} entries.")
        for c in self.moduli:
            check_poisson_modulus(c)
        if max(self.moduli) > 2 * min(self.moduli):
            raise ValueError("moduli must lie in a single dyadic range.")
        get_window(self.window)
        return self


class ModulusComparison(typing.NamedTuple):
    """
    :param truncation_change: relative change of the dual side when the frequency range is doubled
    :param converged: every K+ quadrature met its tolerance
    """
    c: int
    direct: complex
    dual: complex
    relative_error: float
    truncation_change: float
    converged: bool


class DemoReport(typing.NamedTuple):
    params: DemoParams
    cases: tuple[ModulusComparison, ...]
    direct: complex
    dual: complex
    relative_error: float
    truncation_change: float
    converged: bool

    def passed(self, tol: float = 1e-4, truncation_tol: float = 1e-6) -> bool:
        return self.converged and self.relative_error <= tol and self.truncation_change <= truncation_tol


def _summand(params: DemoParams, c: int):
    w = get_window(params.window)
    lo, hi = w.interval(params.N)
    grid = np.linspace(4 * math.pi * lo * lo / c, 4 * math.pi * hi * hi / c, KPLUS_NODES)
    results = [k_plus(float(x), params.T, params.Delta) for x in grid]
    kernel = CubicSpline(grid, np.array([r.value for r in results]))
    converged = all(r.converged for r in results)

    def psi(x, y):
        x, y = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
        twist = np.exp(-1j * params.U * (np.log(x) - np.log(y)))
        return w(x, params.N) * w(y, params.N) * twist * kernel(4 * math.pi * x * y / c)

    return psi, (lo, hi), converged


def _direct(psi, support: tuple[float, float], c: int) -> complex:
    m = np.arange(math.ceil(support[0]), math.floor(support[1]) + 1, dtype=np.int64)
    if m.size * m.size > MAX_BLOCK:
        raise SizeGuardError(f"{m.size} lattice points per axis exceed the block limit.")
    block = kloosterman_square_block(m, m, c)
    return complex(np.sum(block * psi(m[:, None].astype(np.float64), m[None, :].astype(np.float64))))


def _transform(psi, support: tuple[float, float], frequencies: np.ndarray) -> np.ndarray:
    # Psi^(xi_i, xi_j) for every pair, by a tensor rule resolving the top frequency
    lo, hi = support
    top = float(np.max(np.abs(frequencies)))
    nodes, weights = panel_rule(np.linspace(lo, hi, int(math.ceil((hi - lo) * top)) + 17))
    waves = np.exp(-2j * math.pi * frequencies[:, None] * nodes[None, :]) * weights[None, :]
    out = np.zeros((len(frequencies), len(frequencies)), dtype=np.complex128)
    for start in range(0, len(nodes), ROW_CHUNK):
        rows = slice(start, start + ROW_CHUNK)
        values = psi(nodes[rows, None], nodes[None, :])
        out += waves[:, rows] @ (values @ waves.T)
    return out


def _compare_modulus(params: DemoParams, c: int, t_sum: TSum) -> ModulusComparison:
    psi, support, converged = _summand(params, c)
    direct = _direct(psi, support, c)

    reach = int(math.ceil(c * FREQUENCY_WIDTHS / params.N))
    k = np.arange(-2 * reach, 2 * reach + 1, dtype=np.int64)
    if k.size * k.size > MAX_BLOCK:
        raise SizeGuardError(f"{k.size} frequencies per axis exceed the block limit.")
    weighted = t_table(k, k, c, t_sum) * _transform(psi, support, k / c) / c ** 2
    inner = slice(reach, 3 * reach + 1)
    dual = complex(np.sum(weighted[inner, inner]))
    doubled = complex(np.sum(weighted))

    comparison = ModulusComparison(
        c, direct, dual,
        relative_error(dual, direct),
        relative_error(doubled, dual),
        converged,
    )
    logger.info("off-diagonal c=%d: %s", c, comparison)
    return comparison


def off_diagonal_demo(params: DemoParams, t_sum: TSum = t_sum_closed) -> DemoReport:
    """
    Both sides for every modulus of params and for their total.
    """
    params = params.validated()
    cases = tuple(_compare_modulus(params, c, t_sum) for c in params.moduli)
    direct = sum((case.direct for case in cases), 0j)
    dual = sum((case.dual for case in cases), 0j)
    return DemoReport(
        params, cases, direct, dual,
        relative_error(dual, direct),
        max(case.truncation_change for case in cases),
        all(case.converged for case in cases),
    )
