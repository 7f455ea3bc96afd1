"""
The quadratic large sieve at desk scale and the central values of quadratic L-functions.
"""
__all__ = [
    "jacobi_symbols", "jacobi_table", "check_jacobi_table", "CoefficientMode", "SieveScanConfig", "coefficients",
    "SieveReport", "large_sieve_ratio",
    "parity", "sum_length", "v_reach", "quadratic_L_value", "lvalue_oracle", "MomentReport", "weighted_second_moment",
    "moment_scan",
]

from .largesieve import (
    jacobi_symbols, jacobi_table, check_jacobi_table, CoefficientMode, SieveScanConfig, coefficients, SieveReport,
    large_sieve_ratio,
)
from .lvalues import (
    parity, sum_length, v_reach, quadratic_L_value, lvalue_oracle, MomentReport, weighted_second_moment, moment_scan,
)
