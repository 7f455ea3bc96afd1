"""
Parameter sweeps. Scans record values without judging them and write CSV only.
"""
import logging
import math
import typing

import numpy as np

from ..arith import primes_up_to
from ..oscillatory import ibp_decay_ratios, k_plus
from ..sieve import SieveScanConfig, large_sieve_ratio
from ..zseries import Domain, a_p, random_point
from .config import SuiteConfig
from .report import RunReport
from .runner import Case
from .suites import build_report

logger = logging.getLogger(__name__)

APBOUND_POINTS = 3


def _k_plus_row(x: float, T: float, Delta: float) -> dict:
    result = k_plus(x, T, Delta)
    return {
        "x": x, "re": result.value.real, "im": result.value.imag, "abs": abs(result.value),
        "error": result.error, "converged": result.converged,
    }


def kplus_scan(cfg: SuiteConfig) -> list[Case]:
    return [
        Case((i,), f"x={x:.6g}", _k_plus_row, {"x": float(x), "T": cfg.T, "Delta": cfg.Delta})
        for i, x in enumerate(cfg.grid)
    ]


def _kplus_summary(rows: list[dict]) -> dict:
    peak = max(rows, key=lambda row: row["abs"])
    return {"max_abs": peak["abs"], "x_at_max": peak["x"], "unconverged": sum(not row["converged"] for row in rows)}


def _sieve_rows(config: dict) -> list[dict]:
    return large_sieve_ratio(SieveScanConfig(**config)).to_frame().to_dict("records")


def sieve_scan(cfg: SuiteConfig) -> list[Case]:
    config = SieveScanConfig(cfg.M, cfg.sieve_N, cfg.trials, cfg.coefficients, cfg.seed, cfg.spike).validated()
    return [Case((config.M, config.N), f"M={config.M} N={config.N}", _sieve_rows, {"config": config._asdict()})]


def _sieve_summary(rows: list[dict]) -> dict:
    ratios = np.array([row["ratio"] for row in rows])
    summary = {"max_ratio": float(ratios.max()), "median_ratio": float(np.median(ratios))}
    summary.update({f"q{q:g}": float(v) for q, v in zip((0.9, 0.99), np.quantile(ratios, (0.9, 0.99)))})
    return summary


def _ibp_rows(r_values: list[float]) -> list[dict]:
    decay = ibp_decay_ratios(r_values)
    ratios = [None] + [float(r) for r in decay.ratios]
    return [
        {"R": float(r), "envelope": float(envelope), "ratio": ratio}
        for r, envelope, ratio in zip(decay.r_values, decay.envelopes, ratios)
    ]


def ibp_scan(cfg: SuiteConfig) -> list[Case]:
    return [Case((0,), "doubling", _ibp_rows, {"r_values": sorted(cfg.r_values)})]


def _ibp_summary(rows: list[dict]) -> dict:
    return {"min_ratio": min(row["ratio"] for row in rows if row["ratio"] is not None)}


def _apbound_rows(index: int, seed: int, p_max: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    pt = [random_point(rng, Domain.DINF) for _ in range(index + 1)][index]
    rows = []
    for p in primes_up_to(p_max).tolist():
        if p == 2:
            continue
        gap = abs(a_p(p, pt) - 1)
        rows.append({"point": index, "p": p, "gap": gap, "scaled": p * gap})
    return rows


def apbound_scan(cfg: SuiteConfig) -> list[Case]:
    return [
        Case((i,), f"point={i}", _apbound_rows, {"index": i, "seed": cfg.seed, "p_max": cfg.p_max})
        for i in range(APBOUND_POINTS)
    ]


def _apbound_summary(rows: list[dict]) -> dict:
    scaled = [row["scaled"] for row in rows]
    return {"max_scaled": max(scaled), "finite": all(math.isfinite(v) for v in scaled)}


class Scan(typing.NamedTuple):
    build: typing.Callable[[SuiteConfig], list[Case]]
    summarize: typing.Callable[[list[dict]], dict]


SCANS: dict[str, Scan] = {
    "kplus": Scan(kplus_scan, _kplus_summary),
    "sieve": Scan(sieve_scan, _sieve_summary),
    "ibp": Scan(ibp_scan, _ibp_summary),
    "apbound": Scan(apbound_scan, _apbound_summary),
}


def scan(cfg: SuiteConfig) -> RunReport:
    """
    Runs a sweep and writes its CSV.

    :raises ConfigError: on an empty grid or an unwritable output directory
    """
    entry = SCANS[cfg.suite]
    report = build_report(cfg, entry.build(cfg))
    rows = [row for row in report.cases if "error" not in row]
    report = report._replace(summary=entry.summarize(rows) if rows else {})
    logger.info("scan %s: %d rows, %s", cfg.suite, report.n_cases, report.summary)
    report.write()
    return report
