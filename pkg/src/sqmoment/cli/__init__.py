"""
Command-line front end: verification suites, parameter scans and their JSON and CSV reports.
"""
__all__ = [
    "ReturnCode", "Mode", "SuiteConfig", "SUITE_NAMES", "parse_grid", "read_config_file", "resolve_config",
    "RunReport", "version_string", "Case", "execute",
    "VERIFY_SUITES", "run_suite", "SCANS", "scan", "build_parser", "main",
]

from .config import ReturnCode, Mode, SuiteConfig, SUITE_NAMES, parse_grid, read_config_file, resolve_config
from .report import RunReport, version_string
from .runner import Case, execute
from .suites import VERIFY_SUITES, run_suite
from .scans import SCANS, scan
from .main import build_parser, main
