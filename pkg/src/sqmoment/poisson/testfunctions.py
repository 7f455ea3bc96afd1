"""
Test functions on the plane with closed-form Fourier transforms.

A TestFunctionPair is a finite sum of separable terms a f(x) g(y), each factor being

    f(x) = (1 + s (x - x0)) exp(-pi (x - x0)^2 / w^2) e(alpha x),

whose transform, with the convention F^(xi) = int F(x) e(-x xi) dx, is

    f^(xi) = e(-nu x0) w exp(-pi w^2 nu^2) (1 - i s w^2 nu),    nu = xi - alpha.
"""
import math
import typing

import numpy as np

from ..oscillatory.quadrature import apply_rule, breakpoints_from_rate, panel_rule

# exp(-pi * 3.8 ** 2) < 1e-19
TAIL_WIDTHS = 3.8
CHECK_WIDTHS = 8.0


class GaussianFactor(typing.NamedTuple):
    center: float
    width: float
    frequency: float = 0.0
    slope: complex = 0.0

    def validated(self) -> "GaussianFactor":
        if self.width <= 0:
            raise ValueError("width must be positive.")
        return self

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        u = x - self.center
        return (1 + self.slope * u) * np.exp(-math.pi * (u / self.width) ** 2 + 2j * math.pi * self.frequency * x)

    def transform(self, xi):
        nu = np.asarray(xi, dtype=np.float64) - self.frequency
        envelope = self.width * np.exp(-math.pi * (self.width * nu) ** 2)
        return np.exp(-2j * math.pi * nu * self.center) * envelope * (1 - 1j * self.slope * self.width ** 2 * nu)

    def conjugate(self) -> "GaussianFactor":
        return self._replace(frequency=-self.frequency, slope=complex(self.slope).conjugate())

    def reflected(self) -> "GaussianFactor":
        """x -> -x."""
        return GaussianFactor(-self.center, self.width, -self.frequency, -self.slope)

    def support(self) -> tuple[float, float]:
        reach = TAIL_WIDTHS * self.width * (1 + abs(self.slope) * self.width)
        return self.center - reach, self.center + reach

    def frequency_support(self) -> tuple[float, float]:
        reach = TAIL_WIDTHS / self.width * (1 + abs(self.slope) * self.width)
        return self.frequency - reach, self.frequency + reach

    def lattice_window(self, trunc: typing.Optional[int] = None) -> np.ndarray:
        """Integers where the factor is above the tail, optionally restricted to |m| <= trunc."""
        lo, hi = self.support()
        return _integer_window(lo, hi, trunc)

    def dual_window(self, c: int, trunc: typing.Optional[int] = None) -> np.ndarray:
        """Integers k with k / c inside the frequency support, optionally |k| <= trunc."""
        lo, hi = self.frequency_support()
        return _integer_window(c * lo, c * hi, trunc)

    def numeric_transform(self, xi) -> np.ndarray:
        """int f(x) e(-x xi) dx over center +- 8 widths by composite Gauss-Legendre."""
        xi = np.asarray(xi, dtype=np.float64)
        lo, hi = self.center - CHECK_WIDTHS * self.width, self.center + CHECK_WIDTHS * self.width
        rate = 2 * math.pi * (float(np.max(np.abs(xi - self.frequency), initial=0.0)) + 1 / self.width)
        nodes, weights = panel_rule(breakpoints_from_rate(lambda x: np.full_like(x, rate), lo, hi, min_panels=64))
        values = self(nodes)[None, :]

        def integrand(rows, x):
            return np.exp(-2j * math.pi * rows * x) * values

        return apply_rule(integrand, xi, nodes, weights)


def _integer_window(lo: float, hi: float, trunc: typing.Optional[int]) -> np.ndarray:
    if trunc is not None:
        lo, hi = max(lo, -trunc), min(hi, trunc)
    return np.arange(math.ceil(lo), math.floor(hi) + 1, dtype=np.int64)


class GaussianTerm(typing.NamedTuple):
    coefficient: complex
    x: GaussianFactor
    y: GaussianFactor


class TestFunctionPair(typing.NamedTuple):
    """
    F as a sum of separable Gaussian terms together with its exact transform F^.
    """
    __test__ = False

    terms: tuple[GaussianTerm, ...] = ()

    def __call__(self, x, y):
        x, y = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
        total = np.zeros(np.broadcast(x, y).shape, dtype=np.complex128)
        for term in self.terms:
            total = total + term.coefficient * term.x(x) * term.y(y)
        return total

    def transform(self, xi, eta):
        """F^(xi, eta) = int int F(x, y) e(-x xi - y eta) dx dy."""
        xi, eta = np.asarray(xi, dtype=np.float64), np.asarray(eta, dtype=np.float64)
        total = np.zeros(np.broadcast(xi, eta).shape, dtype=np.complex128)
        for term in self.terms:
            total = total + term.coefficient * term.x.transform(xi) * term.y.transform(eta)
        return total

    def __add__(self, other: "TestFunctionPair") -> "TestFunctionPair":
        if not isinstance(other, TestFunctionPair):
            return NotImplemented
        return TestFunctionPair(self.terms + other.terms)

    def scaled(self, factor: complex) -> "TestFunctionPair":
        return TestFunctionPair(tuple(term._replace(coefficient=term.coefficient * factor) for term in self.terms))

    def conjugate_reflected(self) -> "TestFunctionPair":
        """G(x, y) = conj F(x, -y)."""
        return TestFunctionPair(tuple(
            GaussianTerm(complex(term.coefficient).conjugate(), term.x.conjugate(), term.y.reflected().conjugate())
            for term in self.terms
        ))


def gaussian(
        center: tuple[float, float] = (0.0, 0.0),
        width: tuple[float, float] = (1.0, 1.0),
        frequency: tuple[float, float] = (0.0, 0.0),
        coefficient: complex = 1.0
) -> TestFunctionPair:
    """exp(-pi ((x - x0)^2 / wx^2 + (y - y0)^2 / wy^2)) e(alpha x + beta y)."""
    return gaussian_linear(center, width, frequency, (0.0, 0.0), coefficient)


def gaussian_linear(
        center: tuple[float, float],
        width: tuple[float, float],
        frequency: tuple[float, float] = (0.0, 0.0),
        slope: tuple[complex, complex] = (0.0, 0.0),
        coefficient: complex = 1.0
) -> TestFunctionPair:
    """The Gaussian of gaussian() times (1 + sx (x - x0)) (1 + sy (y - y0))."""
    factors = [
        GaussianFactor(center[i], width[i], frequency[i], slope[i]).validated() for i in range(2)
    ]
    return TestFunctionPair((GaussianTerm(complex(coefficient), *factors),))


def check_transform(F: TestFunctionPair, xi=None, eta=None) -> float:
    """
    Largest difference between the closed-form F^ and a quadrature of F on a frequency grid,
    relative to the largest closed-form value.

    The default grid covers 2 / width around every term's frequency with 9 points per axis.
    """
    if not F.terms:
        raise ValueError("F must have at least one term.")
    if xi is None:
        xi = np.linspace(min(t.x.frequency - 2 / t.x.width for t in F.terms),
                         max(t.x.frequency + 2 / t.x.width for t in F.terms), 9)
    if eta is None:
        eta = np.linspace(min(t.y.frequency - 2 / t.y.width for t in F.terms),
                          max(t.y.frequency + 2 / t.y.width for t in F.terms), 9)
    xi, eta = np.asarray(xi, dtype=np.float64), np.asarray(eta, dtype=np.float64)
    closed = F.transform(xi[:, None], eta[None, :])
    numeric = sum(
        term.coefficient * np.outer(term.x.numeric_transform(xi), term.y.numeric_transform(eta))
        for term in F.terms
    )
    return float(np.max(np.abs(numeric - closed)) / np.max(np.abs(closed)))
