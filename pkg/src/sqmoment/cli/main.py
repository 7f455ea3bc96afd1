"""
Command line: sqmoment (verify|scan) <suite> [flags].
"""
import argparse
import logging
import sys
import typing

from .config import SUITE_NAMES, Mode, ReturnCode, resolve_config
from .report import RunReport, version_string
from .scans import scan
from .suites import run_suite

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _ints(text: str) -> list[int]:
    return [int(item) for item in text.split(",") if item.strip()]


def _floats(text: str) -> list[float]:
    return [float(item) for item in text.split(",") if item.strip()]


# (flag, config field, type, help); every flag defaults to None so the config file can fill it
FLAGS: tuple[tuple[str, str, typing.Callable, str], ...] = (
    ("--out", "out", str, "output directory for the JSON and CSV reports"),
    ("--seed", "seed", int, "seed of every random draw"),
    ("--tol", "tol", float, "relative error tolerance"),
    ("--bound", "bound", float, "bound for ratio and magnitude checks"),
    ("--jobs", "jobs", int, "worker processes"),
    ("--c-max", "c_max", int, "largest modulus of the character sum suites"),
    ("--j", "j", _ints, "2-adic valuations of the T-sum moduli, e.g. 4,5,6"),
    ("--rand-pairs", "rand_pairs", int, "random (a, b) pairs per modulus"),
    ("--block", "block", int, "exhaustive |a|, |b| <= block"),
    ("--samples", "samples", int, "residues sampled per Gauss sum modulus"),
    ("--q-max", "q_max", int, "largest modulus of the progression sums"),
    ("--p-max", "p_max", int, "largest prime of the local factor checks and scans"),
    ("--points", "points", int, "random series points"),
    ("--kl-max", "kl_max", int, "largest k and l of the Euler product check"),
    ("--T", "T", float, "spectral height"),
    ("--Delta", "Delta", float, "spectral window width"),
    ("--U", "U", _floats, "twists of the regime-one magnitude law"),
    ("--X", "X", _floats, "scales of the Mellin surrogate"),
    ("--x-grid", "x_grid", str, "x grid as log:a:b:n or lin:a:b:n"),
    ("--r-values", "r_values", _floats, "frequencies of the integration by parts scan"),
    ("--moduli", "moduli", _ints, "Poisson moduli, each divisible by 16"),
    ("--shapes", "shapes", int, "number of Poisson test functions (1 to 3)"),
    ("--M", "M", int, "number of moduli (large sieve) or moment range (L-values)"),
    ("--N", "N", int, "length of the large sieve sum, M when omitted"),
    ("--trials", "trials", int, "large sieve trials"),
    ("--coefficients", "coefficients", str, "large sieve coefficients"),
    ("--spike", "spike", int, "index or modulus of the spike coefficients"),
    ("--m-max", "m_max", int, "largest conductor of the L-value checks"),
    ("--heights", "heights", _floats, "heights t of the L-value checks"),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqmoment", description=__doc__)
    subparsers = parser.add_subparsers(dest="mode", required=True)
    for mode, func, summary in (
            (Mode.VERIFY, run_suite, "check closed forms against their oracles"),
            (Mode.SCAN, scan, "sweep parameters and record values"),
    ):
        sub = subparsers.add_parser(mode.value, help=summary)
        sub.add_argument("suite", help=", ".join(SUITE_NAMES[mode]))
        sub.add_argument("--config", help="flat KEY=value file; flags take precedence")
        sub.add_argument(
            "--deterministic", action="store_const", const=True, default=None,
            help="zero the wall time so repeated reports are byte-identical",
        )
        sub.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
        for flag, field, kind, text in FLAGS:
            sub.add_argument(flag, dest=field, type=kind, default=None, help=text)
        sub.set_defaults(func=func)
    return parser


def _summary_line(report: RunReport) -> str:
    cfg = report.config
    parts = [f"{cfg.mode.value} {cfg.suite}: {report.n_cases} cases"]
    if cfg.mode is Mode.VERIFY:
        parts.append(f"{report.n_failures} failures")
        if report.max_rel_err is not None:
            parts.append(f"max rel err {report.max_rel_err:.3g}")
    parts += [f"{key} {value:.6g}" if isinstance(value, float) else f"{key} {value}" for key, value in report.summary.items()]
    return ", ".join(parts)


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=LOG_LEVELS[min(args.verbose, 2)], format=LOG_FORMAT, stream=sys.stderr)
    flags = {field: getattr(args, field) for _, field, _, _ in FLAGS}
    flags["deterministic"] = args.deterministic
    try:
        cfg = resolve_config(args.mode, args.suite, flags, args.config)
        report = args.func(cfg)
    except ValueError as err:
        logger.error("%s", err)
        print(f"sqmoment {version_string()}: error: {err}", file=sys.stderr)
        return ReturnCode.CONFIG_ERROR
    print(_summary_line(report))
    for row in report.failures:
        print(f"FAILED {row['case']}", file=sys.stderr)
    return report.return_code
