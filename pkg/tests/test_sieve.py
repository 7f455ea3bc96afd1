import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.ntheory import jacobi_symbol

from sqmoment.arith import odd_squarefree
from sqmoment.errors import DomainViolationError, ModulusRangeError, SizeGuardError
from sqmoment.sieve import (
    CoefficientMode, SieveScanConfig, check_jacobi_table, jacobi_symbols, jacobi_table, large_sieve_ratio,
    lvalue_oracle, moment_scan, parity, quadratic_L_value, v_reach, weighted_second_moment,
)

ZETA_HALF = -1.4603545088095868
ZETA_FIRST_ZERO = 14.134725141734693


# characters

@settings(max_examples=300)
@given(st.integers(min_value=-10 ** 6, max_value=10 ** 6), st.integers(min_value=0, max_value=5000))
def test_jacobi_symbols_match_sympy(a, k):
    n = 2 * k + 1
    assert int(jacobi_symbols(a, n)) == jacobi_symbol(a % n, n)


def test_jacobi_symbols_on_arrays():
    n = np.arange(1, 200, 2)
    a = np.arange(-50, 50)
    table = jacobi_symbols(a[:, None], n[None, :])
    assert table.shape == (100, 100)
    assert all(table[i, j] == jacobi_symbol(int(a[i]) % int(n[j]), int(n[j])) for i in range(0, 100, 7) for j in range(100))


def test_jacobi_table_matches_scalar_symbol():
    assert check_jacobi_table() == 0


def test_jacobi_table_layout():
    m, n, table = jacobi_table(30, 30)
    assert m.tolist() == [1, 3, 5, 7, 11, 13, 15, 17, 19, 21, 23, 29]
    assert table.shape == (12, 12)
    assert table.dtype == np.int8
    for i, mi in enumerate(m):
        for j, nj in enumerate(n):
            assert (table[i, j] == 0) == (math.gcd(int(mi), int(nj)) > 1)


def test_jacobi_symbols_reject_even_moduli():
    with pytest.raises(ValueError):
        jacobi_symbols(3, 4)


# large sieve

def test_single_spike_counts_coprime_moduli():
    report = large_sieve_ratio(SieveScanConfig(1024, 1024, mode=CoefficientMode.SINGLE_SPIKE, spike=15))
    expected = sum(1 for m in odd_squarefree(1024) if math.gcd(int(m), 15) == 1)
    assert report.lhs[0] == pytest.approx(expected)
    assert report.max_ratio < 1


def test_length_one_sum():
    report = large_sieve_ratio(SieveScanConfig(1024, 1, mode="single_spike", spike=1))
    assert report.lhs[0] == pytest.approx(len(odd_squarefree(1024)))
    assert report.max_ratio < 1


def test_gaussian_trials_ratio_is_bounded():
    report = large_sieve_ratio(SieveScanConfig(1024, 1024, trials=200, mode="random_gaussian", seed=42))
    assert len(report.lhs) == 200
    assert np.all(report.lhs >= 0)
    assert report.max_ratio <= 10
    quantiles = report.quantiles()
    assert quantiles[0.5] <= quantiles[0.9] <= quantiles[0.99] <= report.max_ratio


@pytest.mark.parametrize("mode", ["random_unit", "character_spike"])
def test_other_modes_are_bounded(mode):
    report = large_sieve_ratio(SieveScanConfig(512, 512, trials=5, mode=mode, spike=15))
    assert report.max_ratio <= 10
    assert np.all(report.eps_ratio <= report.ratio)


def test_character_spike_stays_near_gaussian_ratios():
    gaussian = large_sieve_ratio(SieveScanConfig(1024, 1024, trials=100, mode="random_gaussian", seed=1))
    for m0 in (1, 3, 15, 105):
        spike = large_sieve_ratio(SieveScanConfig(1024, 1024, mode="character_spike", spike=m0))
        assert spike.max_ratio <= 4 * gaussian.max_ratio


def test_trials_are_reproducible():
    cfg = SieveScanConfig(256, 256, trials=4, seed=7)
    first, second = large_sieve_ratio(cfg), large_sieve_ratio(cfg)
    assert np.array_equal(first.lhs, second.lhs)
    assert len(set(first.lhs.tolist())) == 4


def test_report_frame():
    frame = large_sieve_ratio(SieveScanConfig(128, 64, trials=3)).to_frame()
    assert list(frame.columns) == ["M", "N", "trial", "lhs", "normalizer", "ratio"]
    assert len(frame) == 3
    assert (frame["M"] == 128).all()


@pytest.mark.parametrize("cfg", [
    SieveScanConfig(0, 10),
    SieveScanConfig(10, 10, trials=0),
    SieveScanConfig(10, 10, mode="single_spike", spike=9),
    SieveScanConfig(10, 10, mode="single_spike", spike=11),
    SieveScanConfig(10, 10, mode="character_spike", spike=4),
    SieveScanConfig(10, 10, mode="triangular"),
])
def test_invalid_configs(cfg):
    with pytest.raises(ValueError):
        cfg.validated()


def test_size_guard():
    with pytest.raises(SizeGuardError):
        jacobi_table(2 ** 17, 10)


# L-values

def test_zeta_at_the_centre():
    assert quadratic_L_value(1, 0.0).real == pytest.approx(ZETA_HALF, abs=1e-5)
    assert lvalue_oracle(1, 0.0).real == pytest.approx(ZETA_HALF, abs=1e-12)


def test_zeta_vanishes_at_its_first_zero():
    assert abs(quadratic_L_value(1, ZETA_FIRST_ZERO)) < 1e-6


@pytest.mark.parametrize("m, t", [(3, 0.0), (5, 0.0), (7, 2.5), (15, 10.0), (43, 1.0), (1, 30.0), (3, 100.0)])
def test_approximate_functional_equation_matches_oracle(m, t):
    expected = lvalue_oracle(m, t)
    assert abs(quadratic_L_value(m, t) - expected) <= 1e-6 * max(1.0, abs(expected))


@pytest.mark.parametrize("m, t", [
    (1, 500.0), (1, 1000.0), (1, -1000.0), (15, 1000.0), (43, 500.0), (43, 700.0), (43, 1000.0), (43, -1000.0),
])
def test_approximate_functional_equation_at_large_heights(m, t):
    expected = lvalue_oracle(m, t)
    assert abs(quadratic_L_value(m, t) - expected) <= 1e-6 * max(1.0, abs(expected))


@pytest.mark.slow
@pytest.mark.parametrize("t", [500.0, 1000.0, -1000.0])
def test_approximate_functional_equation_at_large_conductor(t):
    expected = lvalue_oracle(997, t)
    assert abs(quadratic_L_value(997, t) - expected) <= 1e-6 * max(1.0, abs(expected))


def test_contour_reach_grows_with_height_and_conductor():
    assert v_reach(1, 0.0) > 40
    assert v_reach(1, 0.0) < v_reach(1, 1000.0) < v_reach(997, 1000.0) < 50
    assert v_reach(43, -700.0) == v_reach(43, 700.0)


@pytest.mark.parametrize("m", [1, 5, 21, 35])
def test_central_values_are_real(m):
    assert abs(quadratic_L_value(m, 0.0).imag) <= 1e-12


def test_chi_5_central_value_is_positive():
    assert quadratic_L_value(5, 0.0).real > 0


def test_parity():
    assert [parity(m) for m in (1, 3, 5, 7, 15, 21)] == [0, 1, 0, 1, 1, 0]


def test_l_value_guards():
    for m in (9, 2, 0):
        with pytest.raises(ValueError):
            quadratic_L_value(m)
    with pytest.raises(ModulusRangeError):
        quadratic_L_value(10007)
    with pytest.raises(DomainViolationError):
        quadratic_L_value(3, 1001.0)


# weighted second moment

def test_moment_of_a_single_modulus():
    report = weighted_second_moment(1, 0.0)
    assert report.terms == 1
    assert report.total == pytest.approx(abs(quadratic_L_value(1, 0.0)) ** 2)


def test_moment_ratio_is_bounded():
    frame = moment_scan([100, 200], [0.0, 10.0])
    assert len(frame) == 4
    assert (frame["ratio"] <= 10).all()
    assert (frame["ratio"] > 0).all()


def test_moment_grows_like_the_square_root():
    small, large = weighted_second_moment(100).total, weighted_second_moment(200).total
    assert 1 < large / small <= 2 * math.sqrt(2) * 1.2


def test_moment_range_guard():
    with pytest.raises(ModulusRangeError):
        weighted_second_moment(4001)
