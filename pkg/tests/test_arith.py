import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sqmoment.arith import (
    divisors, epsilon, euler_phi, factor_modulus, factorize, is_squarefree, jacobi, mobius,
    mod_inverse, odd_squarefree, radical, squarefree_part, squarefree_sieve, valuation,
)
from sqmoment.errors import ModulusRangeError, NonInvertibleError

odd = st.integers(min_value=0, max_value=5000).map(lambda k: 2 * k + 1)


@pytest.mark.parametrize("m, n, expected", [(1, 15, 1), (3, 9, 0), (2, 15, 1), (-1, 3, -1), (-1, 5, 1)])
def test_jacobi_examples(m, n, expected):
    assert jacobi(m, n) == expected


@pytest.mark.parametrize("n", [0, -3, 4, 10])
def test_jacobi_rejects_even_or_nonpositive(n):
    with pytest.raises(ValueError):
        jacobi(1, n)


def test_jacobi_rejects_huge_modulus():
    with pytest.raises(ModulusRangeError):
        jacobi(1, 2 ** 31 + 1)


def test_jacobi_matches_euler_criterion_on_small_primes():
    for p in sympy.primerange(3, 98):
        for m in range(-p, 2 * p):
            euler = pow(m % p, (p - 1) // 2, p)
            expected = 0 if m % p == 0 else (1 if euler == 1 else -1)
            assert jacobi(m, p) == expected


@settings(max_examples=300)
@given(st.integers(min_value=-10 ** 6, max_value=10 ** 6), odd)
def test_jacobi_is_product_over_prime_factors(m, n):
    expected = math.prod(jacobi(m, p) ** e for p, e in factorize(n).items())
    assert jacobi(m, n) == expected
    assert jacobi(m, n) == sympy.jacobi_symbol(m % n, n)


def test_quadratic_reciprocity_exhaustive():
    for m in range(1, 501, 2):
        for n in range(1, 501, 2):
            if math.gcd(m, n) != 1:
                continue
            sign = -1 if ((m - 1) // 2) * ((n - 1) // 2) % 2 else 1
            assert jacobi(m, n) * jacobi(n, m) == sign


def test_epsilon():
    assert epsilon(5) == 1
    assert epsilon(7) == 1j
    assert epsilon(1) == 1
    with pytest.raises(ValueError):
        epsilon(4)


def test_epsilon_squared_is_character_of_minus_one():
    for c in range(1, 10001, 2):
        assert epsilon(c) ** 2 == jacobi(-1, c)


def test_factor_modulus_examples():
    f = factor_modulus(16)
    assert (f.two_exponent, f.odd_part, f.delta, f.q, f.r1, f.r2) == (4, 1, 0, 1, 1, 1)

    f = factor_modulus(2448)
    assert (f.two_exponent, f.delta, f.odd_part, f.q, f.r1, f.r2) == (4, 0, 153, 17, 1, 3)
    assert (f.squarefree_kernel, f.square_support) == (17, 3)

    f = factor_modulus(200)
    assert (f.two_exponent, f.delta, f.odd_part, f.q, f.r1, f.r2) == (3, 1, 25, 1, 1, 5)
    assert (f.c1, f.c2) == (20, 10)

    f = factor_modulus(1)
    assert f.reassemble() == 1 and f.c1 == f.c2 == 1


def test_factor_modulus_rejects_out_of_range():
    with pytest.raises(ModulusRangeError):
        factor_modulus(2 ** 31 + 2)
    with pytest.raises(ValueError):
        factor_modulus(0)


@pytest.mark.slow
def test_factor_modulus_round_trip_exhaustive():
    for c in range(1, 10 ** 5 + 1):
        f = factor_modulus(c)
        assert f.reassemble() == c
        assert f.c1 * f.c2 == c


@settings(max_examples=500)
@given(st.integers(min_value=1, max_value=2 ** 31))
def test_factor_modulus_invariants(c):
    f = factor_modulus(c)
    assert f.value == c == f.reassemble()
    assert f.odd_part % 2 == 1 and f.delta == f.two_exponent % 2
    assert is_squarefree(f.q)
    assert f.q % radical(f.r1) == 0
    assert math.gcd(f.q, f.r2) == 1
    assert f.squarefree_kernel == math.prod(p for p, e in factorize(f.odd_part).items() if e % 2)
    assert f.square_support == math.prod(p for p, e in factorize(f.odd_part).items() if e % 2 == 0)
    assert (f.c1 * f.c1) % c == 0 and f.c1 % f.c2 == 0
    assert is_squarefree(f.c1 // f.c2)


def test_mod_inverse():
    assert mod_inverse(3, 16) == 11
    assert mod_inverse(1, 97) == 1
    assert mod_inverse(-3, 16) == 5
    with pytest.raises(NonInvertibleError):
        mod_inverse(4, 16)


def test_valuation():
    assert valuation(48) == 4
    assert valuation(-48) == 4
    assert valuation(75, 5) == 2
    with pytest.raises(ValueError):
        valuation(0)


@settings(max_examples=200)
@given(st.integers(min_value=1, max_value=10 ** 9))
def test_multiplicative_helpers_match_sympy(n):
    assert factorize(n) == sympy.factorint(n)
    assert euler_phi(n) == sympy.totient(n)
    assert mobius(n) == sympy.mobius(n)
    assert radical(n) == math.prod(sympy.primefactors(n))
    a = squarefree_part(n)
    assert is_squarefree(a) and math.isqrt(n // a) ** 2 == n // a


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


def test_squarefree_sieve():
    flags = squarefree_sieve(1000)
    assert [n for n in range(1, 1001) if flags[n]] == [n for n in range(1, 1001) if is_squarefree(n)]
    assert list(odd_squarefree(20)) == [1, 3, 5, 7, 11, 13, 15, 17, 19]
