"""
Exceptions raised by the toolkit.

Every error is a ValueError so callers validating arguments the usual way keep working.
"""


class SqMomentError(ValueError):
    """Base class for all toolkit errors."""


class NonInvertibleError(SqMomentError):
    """An inverse was requested for a residue sharing a factor with the modulus."""


class UnsupportedModulusError(SqMomentError):
    """The modulus shape is not covered by the requested closed form."""


class ModulusRangeError(SqMomentError):
    """Modulus above the supported 2**31 range."""


class SizeGuardError(SqMomentError):
    """A brute force evaluation would exceed its cost guard."""


class SingularEvaluationError(SqMomentError):
    """A rational function was evaluated too close to one of its poles."""


class DomainViolationError(SqMomentError):
    """Parameters fall outside the region where a series converges."""


class DivergentParameterError(SqMomentError):
    """A geometric tail was requested at parameters where it diverges."""


class GuardBandError(SqMomentError):
    """The two stationary phase regimes coalesce; neither expansion applies."""


class ConfigError(SqMomentError):
    """Invalid suite configuration."""
