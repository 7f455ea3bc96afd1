"""
Run reports and their JSON and CSV renderings.
"""
import json
import logging
import math
import pathlib
import subprocess
import typing

import pandas as pd

from .. import __version__
from ..errors import ConfigError
from .config import Mode, ReturnCode, SuiteConfig

logger = logging.getLogger(__name__)


def version_string() -> str:
    """git describe of the source tree, or the package version outside a checkout."""
    try:
        described = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            cwd=pathlib.Path(__file__).resolve().parent, capture_output=True, text=True, check=True, timeout=10,
        ).stdout.strip()
    except (OSError, subprocess.SubprocessError):
        return __version__
    return described or __version__


def _finite_or_none(value) -> typing.Optional[float]:
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


class RunReport(typing.NamedTuple):
    """
    :param cases: one row per case, sorted by case key; verify rows carry rel_err and passed
    :param summary: aggregate figures printed after a scan
    """
    config: SuiteConfig
    version: str
    cases: list[dict]
    wall_ms: float
    summary: dict = {}

    @property
    def suite(self) -> str:
        return self.config.suite

    @property
    def n_cases(self) -> int:
        return len(self.cases)

    @property
    def failures(self) -> list[dict]:
        return [row for row in self.cases if row.get("passed") is False]

    @property
    def n_failures(self) -> int:
        return len(self.failures)

    @property
    def max_rel_err(self) -> typing.Optional[float]:
        errors = [row["rel_err"] for row in self.cases if row.get("rel_err") is not None]
        return max(errors) if errors else None

    @property
    def worst_case(self) -> typing.Optional[dict]:
        """The first failing row, else the row with the largest relative error."""
        if self.failures:
            return self.failures[0]
        rows = [row for row in self.cases if row.get("rel_err") is not None]
        return max(rows, key=lambda row: row["rel_err"]) if rows else None

    @property
    def return_code(self) -> ReturnCode:
        return ReturnCode.OK if self.n_failures == 0 else ReturnCode.FAILURE

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "config": self.config.model_dump(mode="json"),
            "n_cases": self.n_cases,
            "n_failures": self.n_failures,
            "max_rel_err": _finite_or_none(self.max_rel_err),
            "wall_ms": self.wall_ms,
            "worst_case": _clean(self.worst_case),
            "cases": [_clean(row) for row in self.cases],
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.cases)

    def paths(self) -> tuple[pathlib.Path, pathlib.Path]:
        stem = self.config.out / f"{self.config.mode.value}-{self.suite}"
        return stem.with_suffix(".json"), stem.with_suffix(".csv")

    def write(self) -> list[pathlib.Path]:
        """
        Writes the CSV, and the JSON report for verify runs, under the configured output directory.

        :raises ConfigError: when the directory cannot be created or written
        """
        json_path, csv_path = self.paths()
        try:
            self.config.out.mkdir(parents=True, exist_ok=True)
            self.to_frame().to_csv(csv_path, index=False, float_format="%.12e")
            written = [csv_path]
            if self.config.mode is Mode.VERIFY:
                json_path.write_text(json.dumps(self.to_json(), indent=2, allow_nan=False) + "\n", encoding="utf-8")
                written.insert(0, json_path)
        except OSError as err:
            raise ConfigError(f"cannot write reports to {self.config.out}: {err}") from err
        logger.info("wrote %s", ", ".join(str(path) for path in written))
        return written


def _clean(row: typing.Optional[dict]) -> typing.Optional[dict]:
    if row is None:
        return None
    return {key: _finite_or_none(value) if isinstance(value, float) else value for key, value in row.items()}
