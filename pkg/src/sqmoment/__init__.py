"""
Verification toolkit for the finite ingredients of a symmetric-square moment computation.

Closed forms for character sums, Dirichlet series local factors, stationary phase
expansions, Kuznetsov weight transforms, a double Poisson identity and the quadratic
large sieve, each checked against an independent brute force or quadrature oracle.
"""
__all__ = ["__version__", "errors"]

__version__ = "0.3.0"

from . import errors
