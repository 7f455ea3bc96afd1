"""
Evaluation points (s, u1, u2, u3, U) of the Dirichlet series and the domains they live in.
"""
import enum
import typing

import numpy as np

IMAGINARY_AXIS_TOLERANCE = 1e-15


class SeriesPoint:
    """
    A point (s, u1, u2, u3) with Re(s) = 0 and the spectral shift U.

    alpha = u2 + u3 - 2s - 1 and beta = u1 + s are always derived, never stored.

    :param s: purely imaginary
    :param u1: complex
    :param u2: complex
    :param u3: complex
    :param U: real shift, nonnegative
    """
    __slots__ = ("s", "u1", "u2", "u3", "U")

    def __init__(self, s: complex, u1: complex, u2: complex, u3: complex, U: float = 0.0):
        s = complex(s)
        if abs(s.real) > IMAGINARY_AXIS_TOLERANCE:
            raise ValueError("s must lie on the imaginary axis.")
        if U < 0:
            raise ValueError("U must be nonnegative.")
        self.s = complex(0.0, s.imag)
        self.u1 = complex(u1)
        self.u2 = complex(u2)
        self.u3 = complex(u3)
        self.U = float(U)

    @classmethod
    def from_real_parts(cls, re_u: typing.Sequence[float], im_s: float = 0.0, U: float = 0.0) -> "SeriesPoint":
        u1, u2, u3 = re_u
        return cls(1j * im_s, u1, u2, u3, U)

    @property
    def alpha(self) -> complex:
        return self.u2 + self.u3 - 2 * self.s - 1

    @property
    def beta(self) -> complex:
        return self.u1 + self.s

    @property
    def a2(self) -> complex:
        """Exponent of 2**nu in the 2-adic series: u2 - iU - s."""
        return self.u2 - 1j * self.U - self.s

    @property
    def a3(self) -> complex:
        """Exponent of 2**gamma in the 2-adic series: u3 + iU - s."""
        return self.u3 + 1j * self.U - self.s

    @property
    def real_parts(self) -> tuple[float, float, float]:
        return self.u1.real, self.u2.real, self.u3.real

    def as_dict(self) -> dict:
        return {
            "s": self.s.imag, "u1": [self.u1.real, self.u1.imag], "u2": [self.u2.real, self.u2.imag],
            "u3": [self.u3.real, self.u3.imag], "U": self.U,
        }

    def __eq__(self, other):
        if not isinstance(other, SeriesPoint):
            return NotImplemented
        return (self.s, self.u1, self.u2, self.u3, self.U) == (other.s, other.u1, other.u2, other.u3, other.U)

    def __hash__(self):
        return hash((self.s, self.u1, self.u2, self.u3, self.U))

    def __repr__(self):
        return f"SeriesPoint(s={self.s}, u1={self.u1}, u2={self.u2}, u3={self.u3}, U={self.U})"


class Domain(enum.Enum):
    """Regions of (u1, u2, u3) real parts used for the continuation of the series."""
    D0 = "D0"
    D1 = "D1"
    D2 = "D2"
    DINF = "Dinf"


class DomainLabel(typing.NamedTuple):
    """A domain with a margin; margin > 0 replaces each "> c" by ">= c + margin"."""
    domain: Domain
    margin: float = 0.0


# (lower bound for Re u2 and Re u3, lower bound for Re u1 given m = min(Re u2, Re u3))
_DOMAIN_BOUNDS: dict[Domain, tuple[float, typing.Callable[[float], float]]] = {
    Domain.D0: (1.0, lambda m: 1.0),
    Domain.DINF: (0.5, lambda m: 1.0 - m),
    Domain.D1: (1.0, lambda m: max(1.5 - m, 3.0 - 2.0 * m)),
    Domain.D2: (0.5, lambda m: 1.5 - m),
}


def _exceeds(value: float, bound: float, margin: float) -> bool:
    return value >= bound + margin if margin > 0 else value > bound


def domain_contains(label: typing.Union[DomainLabel, Domain], pt: SeriesPoint) -> bool:
    """
    Membership of pt in the domain, tightened by the label's margin.

    D0: Re u1, Re u2, Re u3 > 1.
    Dinf: Re u2, Re u3 > 1/2 and Re u1 + min(Re u2, Re u3) > 1.
    D1: Re u2, Re u3 > 1, Re u1 + min > 3/2 and Re u1 + 2 min > 3.
    D2: Re u2, Re u3 > 1/2 and Re u1 + min > 3/2.
    """
    if isinstance(label, Domain):
        label = DomainLabel(label)
    if label.margin < 0:
        raise ValueError("margin must be nonnegative.")
    x1, x2, x3 = pt.real_parts
    m, sigma = min(x2, x3), label.margin
    if label.domain is Domain.D0:
        return all(_exceeds(x, 1.0, sigma) for x in (x1, x2, x3))
    if label.domain is Domain.DINF:
        return _exceeds(x2, 0.5, sigma) and _exceeds(x3, 0.5, sigma) and _exceeds(x1 + m, 1.0, sigma)
    if label.domain is Domain.D1:
        return (
            _exceeds(x2, 1.0, sigma) and _exceeds(x3, 1.0, sigma)
            and _exceeds(x1 + m, 1.5, sigma) and _exceeds(x1 + 2 * m, 3.0, sigma)
        )
    return _exceeds(x2, 0.5, sigma) and _exceeds(x3, 0.5, sigma) and _exceeds(x1 + m, 1.5, sigma)


def random_point(
        rng: np.random.Generator,
        label: typing.Union[DomainLabel, Domain] = Domain.D0,
        *,
        spread: float = 1.0,
        imag_range: float = 5.0,
        U_max: float = 10.0
) -> SeriesPoint:
    """
    Draws a point of the domain uniformly in a box above its lower boundary.

    :param rng: numpy generator
    :param label: domain and margin
    :param spread: width of the real-part box
    :param imag_range: imaginary parts are drawn in [-imag_range, imag_range]
    :param U_max: U is drawn in [0, U_max]
    """
    if isinstance(label, Domain):
        label = DomainLabel(label)
    low, u1_low = _DOMAIN_BOUNDS[label.domain]
    # a little inside so strict inequalities hold at margin 0
    inset = label.margin + 1e-3
    x2, x3 = rng.uniform(low + inset, low + inset + spread, size=2)
    x1 = rng.uniform(u1_low(min(x2, x3)) + inset, u1_low(min(x2, x3)) + inset + spread)
    y1, y2, y3, t = rng.uniform(-imag_range, imag_range, size=4)
    return SeriesPoint(1j * t, x1 + 1j * y1, x2 + 1j * y2, x3 + 1j * y3, rng.uniform(0.0, U_max))


class SeriesValue(typing.NamedTuple):
    """A truncated series value with an estimate of the neglected tail."""
    value: complex
    error: float = 0.0

    def __complex__(self) -> complex:
        return complex(self.value)
