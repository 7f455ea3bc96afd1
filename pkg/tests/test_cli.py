import json

import numpy as np
import pandas as pd
import pytest

from sqmoment.cli import (
    Case, ReturnCode, SUITE_NAMES, SCANS, VERIFY_SUITES, Mode, execute, main, parse_grid, read_config_file,
    resolve_config, version_string,
)
from sqmoment.cli import suites
from sqmoment.cli.suites import characters_mod, t_sum_moduli
from sqmoment.errors import ConfigError, GuardBandError

REPORT_KEYS = ["suite", "version", "config", "n_cases", "n_failures", "max_rel_err", "wall_ms", "worst_case", "cases"]


def _forced_failure() -> dict:
    return {"rel_err": 1.0, "passed": False}


def _row(value: int) -> dict:
    return {"value": value}


def _guard_band() -> dict:
    raise GuardBandError("roots coalesce at rho = 1.")


# configuration

def test_return_codes():
    assert [int(code) for code in ReturnCode] == [0, 1, 2]


def test_registries_match_suite_names():
    assert set(VERIFY_SUITES) == set(SUITE_NAMES[Mode.VERIFY])
    assert set(SCANS) == set(SUITE_NAMES[Mode.SCAN])


def test_parse_grid():
    grid = parse_grid("log:1e2:1e6:40")
    assert len(grid) == 40
    assert grid[0] == pytest.approx(1e2) and grid[-1] == pytest.approx(1e6)
    assert np.allclose(np.diff(np.log(grid)), np.log(1e4) / 39)
    assert parse_grid("lin:0:1:5").tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]


@pytest.mark.parametrize("text", ["log:1e2:1e6:0", "log:0:1:5", "geo:1:2:3", "log:1:2", "lin:2:1:4", "lin:a:1:4"])
def test_parse_grid_rejects(text):
    with pytest.raises(ConfigError):
        parse_grid(text)


def test_suite_defaults():
    assert resolve_config("verify", "charsums").tol == 1e-6
    assert resolve_config("verify", "poisson").tol == 1e-8
    assert resolve_config("verify", "gauss").c_max == 4096
    assert resolve_config("verify", "lvalues").M == 200
    cfg = resolve_config("scan", "sieve", {"M": 64})
    assert cfg.sieve_N == 64


def test_flags_override_config_file(tmp_path):
    path = tmp_path / "suite.env"
    path.write_text("SQMOMENT_TOL=0.001\nC_MAX=64\nj=4,5\nseed=7\n")
    assert read_config_file(path) == {"tol": "0.001", "c_max": "64", "j": "4,5", "seed": "7"}
    cfg = resolve_config("verify", "charsums", {"tol": 1e-4, "seed": None}, path)
    assert cfg.tol == 1e-4
    assert cfg.c_max == 64
    assert cfg.j == [4, 5]
    assert cfg.seed == 7


def test_config_file_errors(tmp_path):
    with pytest.raises(ConfigError):
        read_config_file(tmp_path / "missing.env")
    path = tmp_path / "bad.env"
    path.write_text("COLOUR=blue\n")
    with pytest.raises(ConfigError):
        read_config_file(path)


@pytest.mark.parametrize("mode, suite, flags", [
    ("verify", "charsums", {"tol": 0.0}),
    ("verify", "charsums", {"tol": -1e-6}),
    ("verify", "charsums", {"j": ""}),
    ("verify", "poisson", {"shapes": 4}),
    ("verify", "sieve", {"jobs": 0}),
    ("verify", "nonsense", {}),
    ("verify", "ibp", {}),
    ("scan", "poisson", {}),
    ("scan", "kplus", {"x_grid": "log:1e2:1e6:0"}),
    ("verify", "charsums", {"colour": "blue"}),
])
def test_invalid_configs(mode, suite, flags):
    with pytest.raises(ConfigError):
        resolve_config(mode, suite, flags)


def test_config_is_frozen():
    cfg = resolve_config("verify", "z2")
    with pytest.raises(Exception):
        cfg.tol = 1.0


# case execution

def test_rows_are_sorted_by_key():
    cases = [Case((k,), f"k={k}", _row, {"value": k}) for k in (3, 1, 2)]
    assert [row["value"] for row in execute(cases)] == [1, 2, 3]
    assert execute(cases, jobs=2) == execute(cases)


def test_suite_helpers():
    assert t_sum_moduli(100, [4]) == [16, 48, 80]
    assert t_sum_moduli(100, [4, 5]) == [16, 32, 48, 80, 96]
    assert characters_mod(12) == [(12, 1, 6), (12, 3, 2)]
    assert characters_mod(1) == [(1, 1, 1)]


def test_version_string():
    version = version_string()
    assert isinstance(version, str) and version


# verify

def test_verify_poisson(tmp_path, capsys):
    code = main(["verify", "poisson", "--moduli", "16,48,80", "--shapes", "3", "--tol", "1e-8", "--out", str(tmp_path)])
    assert code == ReturnCode.OK
    report = json.loads((tmp_path / "verify-poisson.json").read_text())
    assert list(report) == REPORT_KEYS
    assert report["suite"] == "poisson"
    assert report["n_cases"] == 9
    assert report["n_failures"] == 0
    assert report["max_rel_err"] <= 1e-8
    assert report["config"]["moduli"] == [16, 48, 80]
    assert [case["c"] for case in report["cases"]] == [16] * 3 + [48] * 3 + [80] * 3
    frame = pd.read_csv(tmp_path / "verify-poisson.csv")
    assert len(frame) == 9
    assert "poisson: 9 cases, 0 failures" in capsys.readouterr().out


def test_verify_charsums(tmp_path):
    args = ["verify", "charsums", "--c-max", "96", "--j", "4,5", "--rand-pairs", "20", "--block", "4",
            "--seed", "42", "--tol", "1e-6", "--out", str(tmp_path)]
    assert main(args) == ReturnCode.OK
    report = json.loads((tmp_path / "verify-charsums.json").read_text())
    assert [case["c"] for case in report["cases"]] == [16, 32, 48, 80, 96]
    assert all(case["pairs"] == 81 + 20 for case in report["cases"])
    assert report["n_failures"] == 0


def test_verify_rejects_small_valuation(tmp_path):
    assert main(["verify", "charsums", "--j", "3", "--c-max", "64", "--out", str(tmp_path)]) == ReturnCode.CONFIG_ERROR


def test_verify_charsum_ap(tmp_path):
    assert main(["verify", "charsum-ap", "--q-max", "30", "--out", str(tmp_path)]) == ReturnCode.OK
    frame = pd.read_csv(tmp_path / "verify-charsum-ap.csv")
    assert len(frame) == 30
    assert (frame["mismatches"] == 0).all()


def test_verify_stationary(tmp_path):
    assert main(["verify", "stationary", "--out", str(tmp_path)]) == ReturnCode.OK
    report = json.loads((tmp_path / "verify-stationary.json").read_text())
    assert [case["check"] for case in report["cases"]] == [
        "u-taylor", "u-point", "u-remainder", "eps-point", "eps-parity",
    ]


def test_verify_sieve(tmp_path):
    assert main(["verify", "sieve", "--M", "128", "--trials", "5", "--out", str(tmp_path)]) == ReturnCode.OK
    report = json.loads((tmp_path / "verify-sieve.json").read_text())
    assert report["max_rel_err"] is None
    assert [case["case"] for case in report["cases"]] == ["random_gaussian", "single_spike"]


def test_verify_lvalues(tmp_path):
    args = ["verify", "lvalues", "--m-max", "7", "--heights", "0", "--M", "20", "--out", str(tmp_path)]
    assert main(args) == ReturnCode.OK
    report = json.loads((tmp_path / "verify-lvalues.json").read_text())
    assert report["n_cases"] == 4 + 1


def test_unknown_suite_exits_with_config_error(tmp_path, capsys):
    assert main(["verify", "nonsense", "--out", str(tmp_path)]) == ReturnCode.CONFIG_ERROR
    assert "nonsense" in capsys.readouterr().err
    assert not list(tmp_path.iterdir())


def test_failing_case_exits_with_failure(tmp_path, monkeypatch, capsys):
    monkeypatch.setitem(suites.VERIFY_SUITES, "stationary", lambda cfg: [Case((0,), "forced", _forced_failure, {})])
    assert main(["verify", "stationary", "--out", str(tmp_path)]) == ReturnCode.FAILURE
    report = json.loads((tmp_path / "verify-stationary.json").read_text())
    assert report["n_failures"] == 1
    assert report["worst_case"]["case"] == "forced"
    assert "FAILED forced" in capsys.readouterr().err


def test_numerical_error_becomes_failing_row(tmp_path, monkeypatch, capsys):
    monkeypatch.setitem(suites.VERIFY_SUITES, "stationary", lambda cfg: [
        Case((0,), "coalescing", _guard_band, {}),
        Case((1,), "fine", _row, {"value": 1}),
    ])
    assert main(["verify", "stationary", "--out", str(tmp_path)]) == ReturnCode.FAILURE
    report = json.loads((tmp_path / "verify-stationary.json").read_text())
    assert report["n_cases"] == 2
    assert report["n_failures"] == 1
    assert report["worst_case"]["error"].startswith("GuardBandError")
    assert "FAILED coalescing" in capsys.readouterr().err


def test_config_error_inside_a_case_still_exits_with_config_error(tmp_path, monkeypatch):
    monkeypatch.setitem(suites.VERIFY_SUITES, "stationary", lambda cfg: [Case((0,), "bad", parse_grid, {"text": "geo:1:2:3"})])
    assert main(["verify", "stationary", "--out", str(tmp_path)]) == ReturnCode.CONFIG_ERROR


def test_unwritable_output(tmp_path):
    blocked = tmp_path / "blocked"
    blocked.write_text("")
    assert main(["verify", "stationary", "--out", str(blocked)]) == ReturnCode.CONFIG_ERROR


def test_deterministic_reports_are_byte_identical(tmp_path):
    args = ["verify", "charsums", "--c-max", "48", "--j", "4", "--rand-pairs", "10", "--block", "2",
            "--seed", "3", "--deterministic", "--out", str(tmp_path)]
    assert main(args) == ReturnCode.OK
    first = [(tmp_path / name).read_bytes() for name in ("verify-charsums.json", "verify-charsums.csv")]
    assert main(args) == ReturnCode.OK
    second = [(tmp_path / name).read_bytes() for name in ("verify-charsums.json", "verify-charsums.csv")]
    assert first == second
    assert json.loads(first[0])["wall_ms"] == 0


def test_worker_pool_matches_serial_run(tmp_path):
    serial, pooled = tmp_path / "serial", tmp_path / "pooled"
    assert main(["verify", "stationary", "--deterministic", "--out", str(serial)]) == ReturnCode.OK
    assert main(["verify", "stationary", "--deterministic", "--jobs", "2", "--out", str(pooled)]) == ReturnCode.OK
    assert (serial / "verify-stationary.csv").read_bytes() == (pooled / "verify-stationary.csv").read_bytes()


# scan

def test_scan_kplus_rows(tmp_path):
    args = ["scan", "kplus", "--T", "100", "--Delta", "10", "--x-grid", "log:1e3:1e4:5", "--out", str(tmp_path)]
    assert main(args) == ReturnCode.OK
    frame = pd.read_csv(tmp_path / "scan-kplus.csv")
    assert len(frame) == 5
    assert list(frame.columns) == ["case", "x", "re", "im", "abs", "error", "converged"]
    assert np.all(np.diff(frame["x"]) > 0)
    assert not (tmp_path / "scan-kplus.json").exists()


@pytest.mark.slow
def test_scan_kplus_full_grid(tmp_path):
    args = ["scan", "kplus", "--T", "100", "--Delta", "10", "--x-grid", "log:1e2:1e6:40", "--out", str(tmp_path)]
    assert main(args) == ReturnCode.OK
    assert len(pd.read_csv(tmp_path / "scan-kplus.csv")) == 40


def test_scan_empty_grid(tmp_path):
    assert main(["scan", "kplus", "--x-grid", "log:1e2:1e6:0", "--out", str(tmp_path)]) == ReturnCode.CONFIG_ERROR


def test_scan_sieve(tmp_path, capsys):
    args = ["scan", "sieve", "--M", "128", "--N", "64", "--trials", "4", "--out", str(tmp_path)]
    assert main(args) == ReturnCode.OK
    frame = pd.read_csv(tmp_path / "scan-sieve.csv")
    assert list(frame.columns) == ["case", "M", "N", "trial", "lhs", "normalizer", "ratio"]
    assert frame["trial"].tolist() == [0, 1, 2, 3]
    assert "max_ratio" in capsys.readouterr().out


def test_scan_ibp(tmp_path):
    assert main(["scan", "ibp", "--out", str(tmp_path)]) == ReturnCode.OK
    frame = pd.read_csv(tmp_path / "scan-ibp.csv")
    assert frame["R"].tolist() == [100.0, 200.0, 400.0]
    assert (frame["ratio"].iloc[1:] >= 8).all()


def test_scan_apbound(tmp_path):
    assert main(["scan", "apbound", "--p-max", "200", "--out", str(tmp_path)]) == ReturnCode.OK
    frame = pd.read_csv(tmp_path / "scan-apbound.csv")
    assert set(frame["point"]) == {0, 1, 2}
    assert np.isfinite(frame["scaled"]).all()
