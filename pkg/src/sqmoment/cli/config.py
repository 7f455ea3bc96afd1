"""
Suite configuration: return codes, the validated SuiteConfig model and its resolution from
command-line flags, a flat KEY=value file and defaults.
"""
import enum
import logging
import math
import pathlib
import typing

import numpy as np
import pydantic
from dotenv import dotenv_values

from ..errors import ConfigError
from ..sieve import CoefficientMode

logger = logging.getLogger(__name__)

ENV_PREFIX = "SQMOMENT_"


class ReturnCode(enum.IntEnum):
    """Process exit codes"""
    OK = 0
    FAILURE = 1
    CONFIG_ERROR = 2


class Mode(str, enum.Enum):
    VERIFY = "verify"
    SCAN = "scan"


SUITE_NAMES: dict[Mode, tuple[str, ...]] = {
    Mode.VERIFY: (
        "charsums", "gauss", "charsum-ap", "zseries-local", "zseries-global", "z2", "oscillatory", "stationary",
        "kplus", "mellin", "poisson", "sieve", "lvalues",
    ),
    Mode.SCAN: ("kplus", "sieve", "ibp", "apbound"),
}

# defaults that differ between suites; applied below flags and the config file
SUITE_DEFAULTS: dict[str, dict[str, typing.Any]] = {
    "charsums": {"tol": 1e-6, "c_max": 1500},
    "gauss": {"tol": 1e-9, "c_max": 4096},
    "zseries-local": {"tol": 1e-10},
    "zseries-global": {"tol": 1e-6},
    "z2": {"tol": 1e-12},
    "stationary": {"tol": 1e-8},
    "kplus": {"tol": 1e-3},
    "poisson": {"tol": 1e-8},
    "lvalues": {"M": 200},
    "apbound": {"p_max": 1000},
}

LIST_FIELDS = ("j", "moduli", "U", "X", "heights", "r_values")


def parse_grid(text: str) -> np.ndarray:
    """
    Parses "log:a:b:n" (n points geometrically spaced from a to b) or "lin:a:b:n".

    :raises ConfigError: on a malformed or empty grid
    """
    parts = text.split(":")
    if len(parts) != 4 or parts[0] not in ("log", "lin"):
        raise ConfigError(f"grid must look like log:a:b:n or lin:a:b:n, got {text!r}.")
    try:
        lo, hi, n = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError as err:
        raise ConfigError(f"grid {text!r} has a non-numeric bound or count.") from err
    if n < 1:
        raise ConfigError("grid must have at least one point.")
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ConfigError("grid bounds must be finite with a <= b.")
    if parts[0] == "log":
        if lo <= 0:
            raise ConfigError("log grid bounds must be positive.")
        return np.geomspace(lo, hi, n)
    return np.linspace(lo, hi, n)


class SuiteConfig(pydantic.BaseModel):
    """
    Everything a verification suite or scan reads. The dump of a resolved config is embedded
    in every report.
    """
    model_config = pydantic.ConfigDict(extra="forbid", frozen=True)

    mode: Mode = Mode.VERIFY
    suite: str
    out: pathlib.Path = pathlib.Path("out")
    seed: int = 0
    tol: float = pydantic.Field(1e-6, gt=0)
    bound: float = pydantic.Field(10.0, gt=1)
    jobs: int = pydantic.Field(1, ge=1)
    deterministic: bool = False

    # character sums
    c_max: int = pydantic.Field(1500, ge=1)
    j: list[int] = pydantic.Field(default_factory=lambda: [4, 5, 6], min_length=1)
    rand_pairs: int = pydantic.Field(200, ge=0)
    block: int = pydantic.Field(16, ge=0)
    samples: int = pydantic.Field(50, ge=1)
    q_max: int = pydantic.Field(1000, ge=1)

    # Dirichlet series
    p_max: int = pydantic.Field(100, ge=3)
    points: int = pydantic.Field(20, ge=1)
    kl_max: int = pydantic.Field(15, ge=1)

    # oscillatory integrals and weights
    T: float = pydantic.Field(100.0, gt=0)
    Delta: float = pydantic.Field(10.0, gt=0)
    U: list[float] = pydantic.Field(default_factory=lambda: [50.0, 100.0, 200.0, 400.0], min_length=1)
    X: list[float] = pydantic.Field(default_factory=lambda: [20.0, 50.0, 100.0], min_length=1)
    x_grid: str = "log:1e2:1e6:40"
    r_values: list[float] = pydantic.Field(default_factory=lambda: [100.0, 200.0, 400.0], min_length=2)

    # Poisson summation
    moduli: list[int] = pydantic.Field(default_factory=lambda: [16, 48, 80, 112], min_length=1)
    shapes: int = pydantic.Field(3, ge=1, le=3)

    # large sieve and L-values
    M: int = pydantic.Field(1024, ge=1)
    N: typing.Optional[int] = pydantic.Field(None, ge=1)
    trials: int = pydantic.Field(200, ge=1)
    coefficients: CoefficientMode = CoefficientMode.RANDOM_GAUSSIAN
    spike: int = pydantic.Field(1, ge=1)
    m_max: int = pydantic.Field(50, ge=1)
    heights: list[float] = pydantic.Field(default_factory=lambda: [0.0, 10.0], min_length=1)

    @pydantic.model_validator(mode="before")
    @classmethod
    def _suite_defaults(cls, data: typing.Any) -> typing.Any:
        if isinstance(data, dict):
            data = {**SUITE_DEFAULTS.get(data.get("suite"), {}), **data}
        return data

    @pydantic.field_validator(*LIST_FIELDS, mode="before")
    @classmethod
    def _split_lists(cls, value: typing.Any) -> typing.Any:
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @pydantic.field_validator("x_grid")
    @classmethod
    def _check_grid(cls, value: str) -> str:
        parse_grid(value)
        return value

    @pydantic.model_validator(mode="after")
    def _known_suite(self) -> "SuiteConfig":
        names = SUITE_NAMES[self.mode]
        if self.suite not in names:
            raise ValueError(f"unknown {self.mode.value} suite {self.suite!r}; expected one of {', '.join(names)}.")
        return self

    @property
    def grid(self) -> np.ndarray:
        return parse_grid(self.x_grid)

    @property
    def sieve_N(self) -> int:
        return self.M if self.N is None else self.N


FIELD_NAMES = {name.lower(): name for name in SuiteConfig.model_fields}


def read_config_file(path: typing.Union[str, pathlib.Path]) -> dict[str, str]:
    """
    Reads a flat KEY=value file. Keys are the long flag names, case-insensitive, with "-"
    written as "_" and an optional SQMOMENT_ prefix.

    :raises ConfigError: when the file is missing or names an unknown key
    """
    path = pathlib.Path(path)
    if not path.is_file():
        raise ConfigError(f"config file {path} does not exist.")
    values = {}
    for key, value in dotenv_values(path).items():
        name = key.upper().replace("-", "_")
        if name.startswith(ENV_PREFIX):
            name = name[len(ENV_PREFIX):]
        if name.lower() not in FIELD_NAMES:
            raise ConfigError(f"unknown config key {key!r} in {path}.")
        if value is not None:
            values[FIELD_NAMES[name.lower()]] = value
    return values


def resolve_config(
        mode: typing.Union[Mode, str],
        suite: str,
        flags: typing.Optional[dict[str, typing.Any]] = None,
        config_path: typing.Optional[typing.Union[str, pathlib.Path]] = None
) -> SuiteConfig:
    """
    Merges flags over the config file over the defaults and validates the result.

    :param flags: flag values; None entries count as not given
    :raises ConfigError: on any invalid value
    """
    merged = read_config_file(config_path) if config_path is not None else {}
    merged.update({key: value for key, value in (flags or {}).items() if value is not None})
    merged.update(mode=mode, suite=suite)
    try:
        cfg = SuiteConfig(**merged)
    except pydantic.ValidationError as err:
        raise ConfigError(str(err)) from err
    logger.info("resolved %s %s: %s", cfg.mode.value, cfg.suite, cfg.model_dump(mode="json"))
    return cfg
