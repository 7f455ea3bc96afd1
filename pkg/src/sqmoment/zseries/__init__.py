"""
Dirichlet series attached to the off-diagonal term: local factors, the D series,
the 2-adic series Z^(2) and the Euler product identity for Z_{k,l}.
"""
__all__ = [
    "SeriesPoint", "SeriesValue", "Domain", "DomainLabel", "domain_contains", "random_point",
    "Mod8Character", "Mod8Twist", "series_character", "is_principal", "character_at",
    "local_factor_unramified", "local_factor_ramified", "local_factor_uncancelled", "local_factor_oracle", "a_p",
    "DSeriesForm", "d_series", "d_series_coefficients", "dirichlet_convolve",
    "CaseLabel", "Z2Part", "z2_closed", "z2_oracle", "z2_bound_ratio",
    "z_kl_product", "z_kl_oracle", "pair_tail_bound",
]

from .point import SeriesPoint, SeriesValue, Domain, DomainLabel, domain_contains, random_point
from .twist import Mod8Character, Mod8Twist, series_character, is_principal, character_at
from .local import local_factor_unramified, local_factor_ramified, local_factor_uncancelled, local_factor_oracle, a_p
from .dseries import DSeriesForm, d_series, d_series_coefficients, dirichlet_convolve
from .z2 import CaseLabel, Z2Part, z2_closed, z2_oracle, z2_bound_ratio
from .zkl import z_kl_product, z_kl_oracle, pair_tail_bound
