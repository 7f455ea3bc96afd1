"""
Empirical ratios for the quadratic large sieve

    sum*_{m <= M} |sum*_{n <= N} a_n (n/m)|^2  against  (M + N) sum |a_n|^2,

where both starred sums run over odd squarefree integers.
"""
import enum
import logging
import math
import typing

import numpy as np
import pandas as pd

from ..arith import jacobi, odd_squarefree
from ..errors import SizeGuardError

logger = logging.getLogger(__name__)

MAX_RANGE = 2 ** 16
MAX_TABLE = 2 ** 26
EPS_EXPONENT = 0.1


def jacobi_symbols(a, n) -> np.ndarray:
    """
    Elementwise Jacobi symbol (a/n) by the binary reciprocity algorithm on whole arrays.

    :param a: integer array
    :param n: array of positive odd integers, broadcastable against a
    :returns: int8 array of -1, 0 and 1
    """
    a, n = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(n, dtype=np.int64))
    if np.any(n < 1) or np.any(n % 2 == 0):
        raise ValueError("n must hold positive odd integers.")
    a, n = np.array(a % n, dtype=np.int64), np.array(n, dtype=np.int64)
    result = np.ones(a.shape, dtype=np.int8)
    active = a != 0
    while active.any():
        even = active & (a % 2 == 0)
        while even.any():
            a[even] //= 2
            flip = even & ((n % 8 == 3) | (n % 8 == 5))
            result[flip] = -result[flip]
            even = active & (a % 2 == 0)
        a[active], n[active] = n[active], a[active].copy()
        flip = active & (a % 4 == 3) & (n % 4 == 3)
        result[flip] = -result[flip]
        a[active] %= n[active]
        active = a != 0
    return np.where(n == 1, result, 0).astype(np.int8)


def jacobi_table(M: int, N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    (n/m) for odd squarefree m <= M down the rows and odd squarefree n <= N across the columns.

    :returns: the m values, the n values and the int8 table
    """
    if M < 1 or N < 1:
        raise ValueError("M and N must be positive.")
    if M > MAX_RANGE or N > MAX_RANGE:
        raise SizeGuardError(f"M and N are limited to {MAX_RANGE}.")
    m, n = odd_squarefree(M), odd_squarefree(N)
    if m.size * n.size > MAX_TABLE:
        raise SizeGuardError(f"a {m.size} x {n.size} character table exceeds {MAX_TABLE} entries.")
    logger.debug("jacobi table %d x %d", m.size, n.size)
    return m, n, jacobi_symbols(n[None, :], m[:, None])


class CoefficientMode(str, enum.Enum):
    RANDOM_UNIT = "random_unit"
    RANDOM_GAUSSIAN = "random_gaussian"
    SINGLE_SPIKE = "single_spike"
    CHARACTER_SPIKE = "character_spike"


class SieveScanConfig(typing.NamedTuple):
    """
    :param spike: the index n0 of single_spike, or the modulus m0 of character_spike whose
        character (n/m0) becomes the coefficients
    """
    M: int
    N: int
    trials: int = 1
    mode: CoefficientMode = CoefficientMode.RANDOM_GAUSSIAN
    seed: int = 0
    spike: int = 1

    def validated(self) -> "SieveScanConfig":
        if self.M < 1 or self.N < 1 or self.trials < 1:
            raise ValueError("M, N and trials must be positive.")
        mode = CoefficientMode(self.mode)
        if mode is CoefficientMode.SINGLE_SPIKE and not (
                self.spike <= self.N and self.spike in set(odd_squarefree(self.N).tolist())):
            raise ValueError("spike must be an odd squarefree integer up to N.")
        if mode is CoefficientMode.CHARACTER_SPIKE and (self.spike < 1 or self.spike % 2 == 0):
            raise ValueError("spike must be a positive odd modulus.")
        return self._replace(mode=mode)


def coefficients(cfg: SieveScanConfig, trial: int, n: np.ndarray) -> np.ndarray:
    """
    a_n for one trial; the generator is seeded by (seed, trial).
    """
    rng = np.random.default_rng([cfg.seed, trial])
    if cfg.mode is CoefficientMode.RANDOM_UNIT:
        return np.exp(2j * math.pi * rng.random(n.size))
    if cfg.mode is CoefficientMode.RANDOM_GAUSSIAN:
        return rng.standard_normal(n.size) + 1j * rng.standard_normal(n.size)
    if cfg.mode is CoefficientMode.SINGLE_SPIKE:
        return (n == cfg.spike).astype(np.complex128)
    return jacobi_symbols(n, cfg.spike).astype(np.complex128)


class SieveReport(typing.NamedTuple):
    config: SieveScanConfig
    lhs: np.ndarray
    normalizer: np.ndarray

    @property
    def ratio(self) -> np.ndarray:
        return np.divide(self.lhs, self.normalizer, out=np.zeros_like(self.lhs), where=self.normalizer > 0)

    @property
    def eps_ratio(self) -> np.ndarray:
        """The ratio divided by (MN)^0.1."""
        return self.ratio / float(self.config.M * self.config.N) ** EPS_EXPONENT

    @property
    def max_ratio(self) -> float:
        return float(self.ratio.max())

    @property
    def median_ratio(self) -> float:
        return float(np.median(self.ratio))

    def quantiles(self, q: typing.Sequence[float] = (0.5, 0.9, 0.99)) -> dict[float, float]:
        return {float(p): float(v) for p, v in zip(q, np.quantile(self.ratio, q))}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "M": self.config.M,
            "N": self.config.N,
            "trial": np.arange(len(self.lhs)),
            "lhs": self.lhs,
            "normalizer": self.normalizer,
            "ratio": self.ratio,
        })


def large_sieve_ratio(cfg: SieveScanConfig) -> SieveReport:
    cfg = cfg.validated()
    _, n, table = jacobi_table(cfg.M, cfg.N)
    table = table.astype(np.float64)
    lhs, normalizer = np.empty(cfg.trials), np.empty(cfg.trials)
    for trial in range(cfg.trials):
        a = coefficients(cfg, trial, n)
        lhs[trial] = float(np.sum(np.abs(table @ a) ** 2))
        normalizer[trial] = (cfg.M + cfg.N) * float(np.sum(np.abs(a) ** 2))
    report = SieveReport(cfg, lhs, normalizer)
    logger.info(
        "large sieve M=%d N=%d %s: max ratio %.4g over %d trials", cfg.M, cfg.N, cfg.mode.value,
        report.max_ratio, cfg.trials,
    )
    return report


def check_jacobi_table(samples: int = 10_000, seed: int = 0, limit: int = MAX_RANGE) -> int:
    """
    Number of random pairs (n, m) with odd m on which jacobi_symbols disagrees with arith.jacobi.
    """
    rng = np.random.default_rng(seed)
    n = rng.integers(-limit, limit, samples)
    m = 2 * rng.integers(0, limit // 2, samples) + 1
    vectorized = jacobi_symbols(n, m)
    return sum(int(vectorized[i]) != jacobi(int(n[i]), int(m[i])) for i in range(samples))
