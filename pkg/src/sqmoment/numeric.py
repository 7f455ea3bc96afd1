"""
Small numerical helpers shared across packages.
"""
import numpy as np


def e_mod(k, c: int):
    """
    Additive character e(k / c) with the residue reduced exactly before scaling.

    :param k: integer or integer array
    :param c: positive modulus
    """
    k = np.asarray(k, dtype=np.int64) % c
    result = np.exp(2j * np.pi * k / c)
    return complex(result) if result.ndim == 0 else result


def relative_error(value: complex, reference: complex, scale: float = 0.0) -> float:
    """
    |value - reference| relative to |reference|, or to scale when the reference is smaller.

    Two exact zeros compare equal.
    """
    denominator = max(abs(reference), scale)
    difference = abs(value - reference)
    if denominator == 0.0:
        return 0.0 if difference == 0.0 else float("inf")
    return float(difference / denominator)
