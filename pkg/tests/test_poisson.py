import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sqmoment.charsums import kloosterman, t_sum_oracle
from sqmoment.errors import SizeGuardError, UnsupportedModulusError
from sqmoment.numeric import e_mod
from sqmoment.poisson import (
    DemoParams, TestFunctionPair, check_transform, compare_sides, direct_side, dual_side, gaussian,
    gaussian_linear, gaussian_shapes, kloosterman_square_block, off_diagonal_demo,
)

SHAPES = ["centred", "modulated", "linear"]


def close(x, y, tol):
    return abs(x - y) <= tol * max(abs(y), 1e-300)


# test functions

@pytest.mark.parametrize("shape", SHAPES)
def test_closed_transform_matches_quadrature(shape):
    assert check_transform(gaussian_shapes(48)[shape]) <= 1e-10


def test_closed_transform_of_a_sum():
    F = gaussian((0.5, -1.0), (1.0, 2.0), (0.3, 0.0)) + gaussian_linear((2.0, 0.0), (0.5, 1.5), slope=(1.0j, -0.5))
    assert check_transform(F) <= 1e-10


def test_unit_gaussian_is_self_dual():
    F = gaussian()
    xi = np.linspace(-2, 2, 9)
    assert np.allclose(F.transform(xi, 0.0), np.exp(-math.pi * xi ** 2), atol=1e-15)
    assert np.allclose(F(xi, 0.0), F.transform(xi, 0.0), atol=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5))
def test_conjugate_reflected_values(x, y):
    F = gaussian_shapes(16)["linear"] + gaussian_shapes(16)["modulated"]
    G = F.conjugate_reflected()
    assert cmath.isclose(G(x, y), F(x, -y).conjugate(), rel_tol=1e-12, abs_tol=1e-12)


def test_width_must_be_positive():
    with pytest.raises(ValueError):
        gaussian(width=(1.0, 0.0))


def test_check_transform_needs_a_term():
    with pytest.raises(ValueError):
        check_transform(TestFunctionPair())


def test_test_function_pair_is_not_collected():
    assert TestFunctionPair.__test__ is False


# the identity

def test_kloosterman_square_block_matches_kloosterman():
    c = 48
    m = np.array([-3, 0, 5, 17])
    n = np.array([1, 7, 50])
    block = kloosterman_square_block(m, n, c)
    for i, a in enumerate(m):
        for j, b in enumerate(n):
            expected = kloosterman(int(a * a), int(b * b), c).value * e_mod(2 * a * b, c)
            assert abs(block[i, j] - expected) < 1e-9


@pytest.mark.parametrize("c", [16, 48, 80, 112])
@pytest.mark.parametrize("shape", SHAPES)
def test_poisson_identity(c, shape):
    case = compare_sides(c, gaussian_shapes(c)[shape], shape)
    assert case.passed(1e-8), case


@pytest.mark.slow
@pytest.mark.parametrize("shape", SHAPES)
def test_poisson_identity_large_modulus(shape):
    case = compare_sides(2448, gaussian_shapes(2448)[shape], shape)
    assert case.passed(1e-8), case


def test_unit_gaussian_at_c():
    F = gaussian(center=(16, 16))
    assert close(dual_side(16, F), direct_side(16, F), 1e-8)


def test_zero_function():
    for F in (TestFunctionPair(), gaussian(coefficient=0.0)):
        assert direct_side(16, F) == 0
        assert dual_side(16, F) == 0


def test_off_lattice_function_has_empty_direct_side():
    F = gaussian(center=(16.5, 16.5), width=(0.05, 0.05))
    assert direct_side(16, F) == 0


def test_truncation_beyond_the_tail_changes_nothing():
    F = gaussian_shapes(16)["centred"]
    assert direct_side(16, F, trunc=1000) == direct_side(16, F)
    assert direct_side(16, F, trunc=0) == 0


@pytest.mark.parametrize("c", [16, 48])
def test_oracle_t_sums_change_nothing(c):
    for F in gaussian_shapes(c).values():
        closed = dual_side(c, F)
        assert close(dual_side(c, F, t_sum=t_sum_oracle), closed, 1e-10)


def test_both_sides_are_linear():
    shapes = gaussian_shapes(48)
    a, b = 2 - 1j, 0.5j
    F = shapes["centred"].scaled(a) + shapes["linear"].scaled(b)
    for side in (direct_side, dual_side):
        expected = a * side(48, shapes["centred"]) + b * side(48, shapes["linear"])
        assert close(side(48, F), expected, 1e-12)


@pytest.mark.parametrize("shape", SHAPES)
def test_conjugate_reflection_conjugates_both_sides(shape):
    F = gaussian_shapes(80)[shape]
    G = F.conjugate_reflected()
    assert close(direct_side(80, G), direct_side(80, F).conjugate(), 1e-12)
    assert close(dual_side(80, G), dual_side(80, F).conjugate(), 1e-8)


def test_modulus_must_carry_two_to_the_fourth():
    with pytest.raises(UnsupportedModulusError):
        direct_side(8, gaussian())
    with pytest.raises(UnsupportedModulusError):
        dual_side(24, gaussian())


def test_size_guard():
    with pytest.raises(SizeGuardError):
        direct_side(16, gaussian(width=(2000.0, 2000.0)))
    with pytest.raises(SizeGuardError):
        dual_side(16, gaussian(width=(0.001, 0.001)))


# off-diagonal demo

def test_off_diagonal_demo_single_modulus():
    report = off_diagonal_demo(DemoParams(T=100.0, Delta=20.0, U=0.0, N=100.0, moduli=(16,)))
    assert report.relative_error <= 1e-4
    assert report.truncation_change < 1e-6
    assert abs(report.direct) > 0
    assert len(report.cases) == 1


def test_off_diagonal_demo_zero_window():
    report = off_diagonal_demo(DemoParams(100.0, 20.0, 0.0, 100.0, (16, 32), window="zero"))
    assert report.direct == 0 and report.dual == 0
    assert report.relative_error == 0 and report.truncation_change == 0


@pytest.mark.parametrize("params", [
    DemoParams(300.0, 20.0, 0.0, 100.0, (16,)),
    DemoParams(100.0, 20.0, 0.0, 500.0, (16,)),
    DemoParams(100.0, 20.0, 0.0, 100.0, ()),
    DemoParams(100.0, 20.0, 0.0, 100.0, (16, 48)),
    DemoParams(100.0, 20.0, -1.0, 100.0, (16,)),
    DemoParams(100.0, 20.0, 0.0, 100.0, (16,), window="square"),
])
def test_demo_params_validation(params):
    with pytest.raises(ValueError):
        params.validated()


def test_demo_rejects_odd_two_part():
    with pytest.raises(UnsupportedModulusError):
        DemoParams(100.0, 20.0, 0.0, 100.0, (24,)).validated()
