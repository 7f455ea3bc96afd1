"""
Panel quadrature for oscillatory integrands.

Panels are laid out so that the phase turns by at most max_phase on each of them, then
refined by bisection until every panel passes a two-level Gauss-Legendre comparison.
"""
import functools
import logging
import math
import typing

import numpy as np

logger = logging.getLogger(__name__)

PANEL_PHASE = math.pi
MAX_SAMPLES = 2 ** 21 + 1
MAX_PANELS = 2 ** 20
CHUNK = 2 ** 22
ROUNDOFF_FLOOR = 50 * np.finfo(float).eps


class QuadResult(typing.NamedTuple):
    """
    :param value: the integral
    :param error: estimated absolute error
    :param converged: False when the tolerance was not met within the refinement budget
    :param evaluations: number of integrand evaluations
    """
    value: complex
    error: float
    converged: bool
    evaluations: int

    def __complex__(self) -> complex:
        return complex(self.value)


@functools.lru_cache(maxsize=16)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def _breakpoints_from_steps(x: np.ndarray, steps: np.ndarray, max_phase: float, min_panels: int) -> np.ndarray:
    # measure = phase turned / max_phase + uniform share; each unit of measure is one panel
    measure = np.concatenate([[0.0], np.cumsum(steps)]) / max_phase
    measure += min_panels * (x - x[0]) / (x[-1] - x[0])
    count = max(int(math.ceil(measure[-1])), 1)
    breakpoints = np.interp(np.linspace(0.0, measure[-1], count + 1), measure, x)
    breakpoints[0], breakpoints[-1] = x[0], x[-1]
    return breakpoints


def phase_breakpoints(
        phase: typing.Callable[[np.ndarray], np.ndarray],
        a: float,
        b: float,
        max_phase: float = PANEL_PHASE,
        min_panels: int = 8,
        samples: int = 2049
) -> np.ndarray:
    """
    Panel edges on [a, b] such that phase varies by at most max_phase on each panel.

    The phase is sampled on a grid that is refined until neighbouring samples differ by
    less than max_phase / 4.
    """
    if not b > a:
        raise ValueError("b must be greater than a.")
    if max_phase <= 0 or min_panels < 1:
        raise ValueError("max_phase must be positive and min_panels at least 1.")
    while True:
        x = np.linspace(a, b, samples)
        steps = np.abs(np.diff(np.asarray(phase(x), dtype=np.float64)))
        if steps.max() <= max_phase / 4 or samples >= MAX_SAMPLES:
            break
        samples = 2 * samples - 1
    return _breakpoints_from_steps(x, steps, max_phase, min_panels)


def breakpoints_from_rate(
        rate: typing.Callable[[np.ndarray], np.ndarray],
        a: float,
        b: float,
        max_phase: float = PANEL_PHASE,
        min_panels: int = 8,
        samples: int = 8193
) -> np.ndarray:
    """
    Panel edges on [a, b] for an integrand whose phase turns at most rate(x) per unit length.
    """
    if not b > a:
        raise ValueError("b must be greater than a.")
    x = np.linspace(a, b, samples)
    middle = (x[:-1] + x[1:]) / 2
    steps = np.abs(np.asarray(rate(middle), dtype=np.float64)) * np.diff(x)
    return _breakpoints_from_steps(x, steps, max_phase, min_panels)


def panel_rule(breakpoints: np.ndarray, n: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """
    Composite n-point Gauss-Legendre nodes and weights over the given panels.
    """
    nodes, weights = gauss_legendre(n)
    left, right = np.asarray(breakpoints[:-1]), np.asarray(breakpoints[1:])
    half = (right - left) / 2
    x = ((left + right) / 2)[:, None] + half[:, None] * nodes[None, :]
    w = half[:, None] * weights[None, :]
    return x.ravel(), w.ravel()


def apply_rule(
        integrand: typing.Callable[[np.ndarray, np.ndarray], np.ndarray],
        rows: np.ndarray,
        nodes: np.ndarray,
        weights: np.ndarray
) -> np.ndarray:
    """
    sum_k weights[k] integrand(rows, nodes[k]) for every row, evaluated in chunks.

    integrand receives rows as a column and nodes as a row and must broadcast.
    """
    rows = np.asarray(rows, dtype=np.float64)
    flat = rows.ravel()
    out = np.empty(len(flat), dtype=np.complex128)
    step = max(1, CHUNK // max(len(nodes), 1))
    for start in range(0, len(flat), step):
        block = flat[start:start + step]
        out[start:start + step] = integrand(block[:, None], nodes[None, :]) @ weights
    return out.reshape(rows.shape)


def _panel_sums(integrand, left, right, nodes, weights):
    half = (right - left) / 2
    x = ((left + right) / 2)[:, None] + half[:, None] * nodes[None, :]
    values = np.asarray(integrand(x.ravel()), dtype=np.complex128).reshape(x.shape)
    return (values @ weights) * half, (np.abs(values) @ weights) * half


def quad_panels(
        integrand: typing.Callable[[np.ndarray], np.ndarray],
        breakpoints: np.ndarray,
        epsabs: float = 1e-12,
        epsrel: float = 1e-10,
        n: int = 16,
        max_rounds: int = 30
) -> QuadResult:
    """
    Adaptive composite Gauss-Legendre quadrature starting from the given panels.

    A panel is accepted when its n-point value and the sum over its two halves agree to its
    share of the tolerance max(epsabs, epsrel |I|, roundoff |f|_1); rejected panels are bisected.
    """
    nodes, weights = gauss_legendre(n)
    breakpoints = np.asarray(breakpoints, dtype=np.float64)
    left, right = breakpoints[:-1], breakpoints[1:]
    length = breakpoints[-1] - breakpoints[0]
    total, error, evaluations = 0j, 0.0, 0
    tolerance = None
    converged = True

    for round_index in range(max_rounds):
        whole, _ = _panel_sums(integrand, left, right, nodes, weights)
        middle = (left + right) / 2
        first, abs_first = _panel_sums(integrand, left, middle, nodes, weights)
        second, abs_second = _panel_sums(integrand, middle, right, nodes, weights)
        evaluations += 3 * n * len(left)
        halves = first + second
        difference = np.abs(halves - whole)
        if tolerance is None:
            absint = float(np.sum(abs_first + abs_second))
            tolerance = max(epsabs, epsrel * abs(complex(halves.sum())), ROUNDOFF_FLOOR * absint)

        accept = difference <= tolerance * (right - left) / length
        last = round_index == max_rounds - 1 or 2 * np.count_nonzero(~accept) > MAX_PANELS
        if last and not accept.all():
            converged = False
            accept[:] = True
        total += complex(halves[accept].sum())
        error += float(difference[accept].sum())
        if accept.all():
            break
        keep = ~accept
        left, right = np.concatenate([left[keep], middle[keep]]), np.concatenate([middle[keep], right[keep]])

    if not converged:
        logger.warning("quadrature did not converge: error estimate %.3g > tolerance %.3g", error, tolerance)
    return QuadResult(total, error, converged, evaluations)


def quad_oscillatory_1d(
        phase: typing.Callable[[np.ndarray], np.ndarray],
        weight: typing.Callable[[np.ndarray], np.ndarray],
        a: float,
        b: float,
        epsabs: float = 1e-12,
        epsrel: float = 1e-10,
        max_phase: float = PANEL_PHASE,
        min_panels: int = 8,
        max_rounds: int = 30
) -> QuadResult:
    """
    Integral of weight(x) exp(i phase(x)) over [a, b].

    :param phase: real phase, vectorized
    :param weight: real or complex amplitude, vectorized
    """
    breakpoints = phase_breakpoints(phase, a, b, max_phase, min_panels)
    return quad_panels(
        lambda x: weight(x) * np.exp(1j * phase(x)), breakpoints, epsabs, epsrel, max_rounds=max_rounds
    )


def _axis_breakpoints(grid: np.ndarray, sampled: np.ndarray, axis: int, max_phase: float, min_panels: int):
    steps = np.abs(np.diff(sampled, axis=axis)).max(axis=1 - axis)
    return _breakpoints_from_steps(grid, steps, max_phase, min_panels)


def _tensor_rule(integrand, bx, by, n):
    x, wx = panel_rule(bx, n)
    y, wy = panel_rule(by, n)
    rows = apply_rule(integrand, x, y, wy)
    return complex(rows @ wx), float(np.abs(rows) @ wx), len(x) * len(y)


def quad_oscillatory_2d(
        phase: typing.Callable[[np.ndarray, np.ndarray], np.ndarray],
        weight: typing.Callable[[np.ndarray, np.ndarray], np.ndarray],
        x_range: tuple[float, float],
        y_range: tuple[float, float],
        epsabs: float = 1e-10,
        epsrel: float = 1e-8,
        max_phase: float = PANEL_PHASE,
        min_panels: int = 8,
        max_rounds: int = 4,
        samples: int = 257
) -> QuadResult:
    """
    Integral of weight(x, y) exp(i phase(x, y)) over a rectangle by tensor Gauss-Legendre panels.

    Panel edges along each axis follow the largest phase increment across the other axis.
    The 8- and 12-point tensor rules are compared; while they disagree all panels are halved.
    """
    (xa, xb), (ya, yb) = x_range, y_range
    if not (xb > xa and yb > ya):
        raise ValueError("ranges must be increasing.")
    while True:
        gx, gy = np.linspace(xa, xb, samples), np.linspace(ya, yb, samples)
        sampled = np.asarray(phase(gx[:, None], gy[None, :]), dtype=np.float64)
        jump = max(np.abs(np.diff(sampled, axis=0)).max(), np.abs(np.diff(sampled, axis=1)).max())
        if jump <= max_phase / 4 or samples >= 4097:
            break
        samples = 2 * samples - 1
    bx = _axis_breakpoints(gx, sampled, 0, max_phase, min_panels)
    by = _axis_breakpoints(gy, sampled, 1, max_phase, min_panels)

    def integrand(x, y):
        return weight(x, y) * np.exp(1j * phase(x, y))

    evaluations = 0
    for _ in range(max_rounds):
        coarse, _, count_coarse = _tensor_rule(integrand, bx, by, 8)
        fine, absint, count_fine = _tensor_rule(integrand, bx, by, 12)
        evaluations += count_coarse + count_fine
        error = abs(fine - coarse)
        tolerance = max(epsabs, epsrel * abs(fine), ROUNDOFF_FLOOR * absint)
        if error <= tolerance:
            return QuadResult(fine, error, True, evaluations)
        bx = np.sort(np.concatenate([bx, (bx[:-1] + bx[1:]) / 2]))
        by = np.sort(np.concatenate([by, (by[:-1] + by[1:]) / 2]))
    logger.warning("2-d quadrature did not converge: error estimate %.3g > tolerance %.3g", error, tolerance)
    return QuadResult(fine, error, False, evaluations)
