"""
Finite exponential and character sums with their brute force oracles.
"""
__all__ = [
    "SumValue", "CharSumCase", "RealCharacter",
    "gauss_sum_oracle", "gauss_sum_closed", "gauss_sum_linear", "gauss_sum_two_power",
    "kloosterman", "unit_inverses",
    "char_sum_ap", "char_sum_ap_exact", "char_sum_ap_direct", "char_sum_ap_table", "character_values",
    "validate_character",
    "t_sum_oracle", "t_sum_naive", "t_sum_closed", "compare_t_sums", "write_t_fixture", "FIXTURE_COLUMNS",
]

from .types import SumValue, CharSumCase, RealCharacter
from .gauss import gauss_sum_oracle, gauss_sum_closed, gauss_sum_linear, gauss_sum_two_power
from .kloosterman import kloosterman, unit_inverses
from .progression import (
    char_sum_ap, char_sum_ap_exact, char_sum_ap_direct, char_sum_ap_table, character_values, validate_character,
)
from .tsum import t_sum_oracle, t_sum_naive, t_sum_closed, compare_t_sums, write_t_fixture, FIXTURE_COLUMNS
