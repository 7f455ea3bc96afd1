"""
Exact integer arithmetic shared by every other package.
"""
__all__ = [
    "MAX_MODULUS", "FactoredModulus", "EpsilonFactor",
    "check_modulus", "factor_modulus", "factorize", "primes_up_to", "prime_table",
    "jacobi", "epsilon", "jacobi_character", "kronecker_two",
    "mod_inverse", "valuation", "divisors", "radical", "squarefree_part", "is_squarefree",
    "mobius", "euler_phi", "num_divisors", "squarefree_sieve", "odd_squarefree", "coprime_residues", "mobius_sieve",
]

from .factor import MAX_MODULUS, FactoredModulus, check_modulus, factor_modulus, factorize, primes_up_to, prime_table
from .jacobi import EpsilonFactor, jacobi, epsilon, jacobi_character, kronecker_two
from .modular import (
    mod_inverse, valuation, divisors, radical, squarefree_part, is_squarefree,
    mobius, euler_phi, num_divisors, squarefree_sieve, odd_squarefree, coprime_residues, mobius_sieve,
)
