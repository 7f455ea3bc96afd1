"""
Double Poisson summation of S(m^2, n^2; c) e_c(2mn) against test functions with exact transforms,
and the K+-weighted off-diagonal sum at toy scale.
"""
__all__ = [
    "GaussianFactor", "GaussianTerm", "TestFunctionPair", "gaussian", "gaussian_linear", "check_transform",
    "check_poisson_modulus", "kloosterman_square_block", "direct_side", "dual_side", "t_table", "PoissonCase",
    "compare_sides", "gaussian_shapes",
    "DemoParams", "ModulusComparison", "DemoReport", "off_diagonal_demo",
]

from .testfunctions import GaussianFactor, GaussianTerm, TestFunctionPair, gaussian, gaussian_linear, check_transform
from .identity import (
    check_poisson_modulus, kloosterman_square_block, direct_side, dual_side, t_table, PoissonCase, compare_sides,
    gaussian_shapes,
)
from .demo import DemoParams, ModulusComparison, DemoReport, off_diagonal_demo
