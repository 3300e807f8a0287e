"""Define the level r and the quantities evaluated at A = e^{πi/2r}."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

from vwrt.algebra.laurent import LaurentPoly, delta_poly
from vwrt.algebra.rational import RationalFunc
from vwrt.const import DEFAULT_TOLERANCE
from vwrt.errors import VwrtError

MIN_LEVEL = 2


class InvalidLevel(VwrtError):
    """Define an error related to a level below 2."""

    pass


def _validate_level(r: int) -> None:
    """Raise if r is not an allowed level."""
    if isinstance(r, bool) or not isinstance(r, int) or r < MIN_LEVEL:
        raise InvalidLevel(f"Level r must be an integer ≥ {MIN_LEVEL} (got {r!r})")


def mu(r: int) -> float:
    """Return μ = sqrt(2/r)·sin(π/r).

    Args:
        r: The level.

    Returns:
        A positive real number.
    """
    _validate_level(r)
    return math.sqrt(2 / r) * math.sin(math.pi / r)


def alpha(r: int) -> complex:
    """Return α = (−i)^{r−2}·e^{iπ·3(r−2)/(4r)}.

    Args:
        r: The level.

    Returns:
        A unit-modulus complex number.
    """
    _validate_level(r)
    return (-1j) ** (r - 2) * cmath.exp(1j * math.pi * 3 * (r - 2) / (4 * r))


def delta_closed_form(n: int, r: int) -> float:
    """Return (−1)^n sin((n+1)π/r)/sin(π/r), the value of Δ_n at A = e^{πi/2r}.

    Args:
        n: The index.
        r: The level.

    Returns:
        A real number.
    """
    sign = -1 if n % 2 else 1
    return sign * math.sin((n + 1) * math.pi / r) / math.sin(math.pi / r)


@dataclass(frozen=True)
class LevelParams:
    """Define the numeric data attached to a level r."""

    r: int
    tolerance: float = field(default=DEFAULT_TOLERANCE, compare=False)

    def __post_init__(self) -> None:
        """Perform some post-init validation."""
        _validate_level(self.r)

    @cached_property
    def root(self) -> complex:
        """Return A = e^{πi/2r}.

        Returns:
            A primitive 4r-th root of unity.
        """
        return cmath.exp(1j * math.pi / (2 * self.r))

    @cached_property
    def loop_value(self) -> complex:
        """Return d = −A²−A⁻².

        Returns:
            A real-valued complex number.
        """
        return -(self.root**2) - self.root ** (-2)

    @cached_property
    def mu(self) -> float:
        """Return μ at this level.

        Returns:
            A positive real number.
        """
        return mu(self.r)

    @cached_property
    def alpha(self) -> complex:
        """Return α at this level.

        Returns:
            A unit-modulus complex number.
        """
        return alpha(self.r)

    @property
    def max_color(self) -> int:
        """Return the largest admissible color r−2.

        Returns:
            An integer.
        """
        return self.r - 2

    def delta(self, n: int) -> complex:
        """Return Δ_n evaluated at A.

        Args:
            n: The index.

        Returns:
            A complex number.
        """
        return lp_eval(delta_poly(n), self)

    def power(self, exponent: int) -> complex:
        """Return A^exponent computed from its argument.

        Args:
            exponent: The exponent.

        Returns:
            A unit-modulus complex number.
        """
        return cmath.exp(1j * math.pi * exponent / (2 * self.r))


def lp_eval(p: LaurentPoly, params: LevelParams) -> complex:
    """Evaluate a Laurent polynomial at A = e^{πi/2r}.

    Args:
        p: The polynomial.
        params: The level parameters.

    Returns:
        The complex value.
    """
    return sum((coeff * params.power(exp) for exp, coeff in p.items()), 0j)


def rf_eval(f: RationalFunc, params: LevelParams) -> complex:
    """Evaluate a rational function at A = e^{πi/2r}.

    Args:
        f: The rational function.
        params: The level parameters.

    Returns:
        The complex value.
    """
    return f.evaluate(params.root, tolerance=params.tolerance)


def is_close(a: complex, b: complex, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Compare two complex values with an absolute tolerance.

    Args:
        a: The first value.
        b: The second value.
        tolerance: The absolute tolerance.

    Returns:
        Whether the values agree within the tolerance.
    """
    return cmath.isclose(a, b, rel_tol=0.0, abs_tol=tolerance)

