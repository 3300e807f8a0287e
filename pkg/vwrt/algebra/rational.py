"""Define rational functions in A in a canonical reduced form."""
from __future__ import annotations

import cmath

from sympy import ZZ, Poly, Symbol

from vwrt.algebra.laurent import ONE, ZERO, LaurentPoly
from vwrt.errors import VwrtError

_A = Symbol("A")


class DivisionByZero(VwrtError):
    """Define an error related to inverting the zero rational function."""

    pass


class PoleAtRoot(VwrtError):
    """Define an error related to a denominator vanishing at the chosen root."""

    pass


def _to_poly(p: LaurentPoly, shift: int) -> Poly:
    """Convert A^{-shift}·p into a sympy polynomial over ZZ."""
    return Poly.from_dict(
        {(exp - shift,): coeff for exp, coeff in p.items()}, _A, domain=ZZ
    )


def _from_poly(poly: Poly, shift: int) -> LaurentPoly:
    """Convert a sympy polynomial back into A^{shift}·poly."""
    return LaurentPoly({monom[0] + shift: int(coeff) for monom, coeff in poly.terms()})


def _canonicalize(
    num: LaurentPoly, den: LaurentPoly
) -> tuple[LaurentPoly, LaurentPoly]:
    """Reduce num/den to canonical form.

    The denominator ends up an ordinary polynomial with a positive nonzero constant
    term; every power of A is carried by the numerator.
    """
    if den.is_zero:
        raise DivisionByZero("Denominator is the zero polynomial")
    if num.is_zero:
        return ZERO, ONE
    if den.is_monomial:
        ((exp, coeff),) = den.items()
        if coeff in (1, -1):
            return LaurentPoly.monomial(-exp, coeff) * num, ONE

    num_shift = num.min_degree
    den_shift = den.min_degree
    num_poly = _to_poly(num, num_shift)
    den_poly = _to_poly(den, den_shift)
    divisor = num_poly.gcd(den_poly)
    num_poly = num_poly.exquo(divisor)
    den_poly = den_poly.exquo(divisor)
    if den_poly.nth(0) < 0:
        num_poly = -num_poly
        den_poly = -den_poly
    return _from_poly(num_poly, num_shift - den_shift), _from_poly(den_poly, 0)


class RationalFunc:
    """Define an immutable quotient of Laurent polynomials in canonical form."""

    __slots__ = ("num", "den")

    num: LaurentPoly
    den: LaurentPoly

    def __init__(self, num: LaurentPoly | int, den: LaurentPoly | int = 1) -> None:
        """Initialize.

        Args:
            num: The numerator.
            den: The denominator.
        """
        if isinstance(num, int):
            num = LaurentPoly.constant(num)
        if isinstance(den, int):
            den = LaurentPoly.constant(den)
        reduced_num, reduced_den = _canonicalize(num, den)
        object.__setattr__(self, "num", reduced_num)
        object.__setattr__(self, "den", reduced_den)

    def __setattr__(self, name: str, value: object) -> None:
        """Reject mutation.

        Args:
            name: The attribute name.
            value: The attribute value.

        Raises:
            AttributeError: Always raised.
        """
        raise AttributeError(f"RationalFunc is immutable (cannot set {name})")

    def __add__(self, other: RationalFunc | LaurentPoly | int) -> RationalFunc:
        """Add.

        Args:
            other: The addend.

        Returns:
            The sum.
        """
        other = _coerce(other)
        if other.num.is_zero:
            return self
        if self.num.is_zero:
            return other
        if self.den == other.den:
            return RationalFunc(self.num + other.num, self.den)
        return RationalFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __eq__(self, other: object) -> bool:
        """Compare structurally.

        Args:
            other: The object to compare against.

        Returns:
            Whether numerators and denominators coincide.
        """
        if isinstance(other, LaurentPoly):
            other = RationalFunc(other)
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        """Return the hash.

        Returns:
            An integer hash.
        """
        return hash((self.num, self.den))

    def __mul__(self, other: RationalFunc | LaurentPoly | int) -> RationalFunc:
        """Multiply.

        Args:
            other: The factor.

        Returns:
            The product.
        """
        other = _coerce(other)
        if self.num.is_zero or other.num.is_zero:
            return RationalFunc(ZERO)
        if self.den == ONE and other.den == ONE:
            return RationalFunc(self.num * other.num)
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __neg__(self) -> RationalFunc:
        """Negate.

        Returns:
            The additive inverse.
        """
        return RationalFunc(-self.num, self.den)

    def __reduce__(self) -> tuple[type[RationalFunc], tuple[LaurentPoly, LaurentPoly]]:
        """Pickle through the constructor."""
        return (RationalFunc, (self.num, self.den))

    def __repr__(self) -> str:
        """Define a string representation of this object.

        Returns:
            A string representation.
        """
        if self.den == ONE:
            return repr(self.num)
        return f"({self.num}) / ({self.den})"

    def __sub__(self, other: RationalFunc | LaurentPoly | int) -> RationalFunc:
        """Subtract.

        Args:
            other: The subtrahend.

        Returns:
            The difference.
        """
        return self + -_coerce(other)

    def __truediv__(self, other: RationalFunc | LaurentPoly | int) -> RationalFunc:
        """Divide.

        Args:
            other: The divisor.

        Returns:
            The quotient.
        """
        return self * _coerce(other).inverse()

    @property
    def is_zero(self) -> bool:
        """Return whether this is the zero function.

        Returns:
            Whether the property is true.
        """
        return self.num.is_zero

    def evaluate(self, root: complex, tolerance: float = 1e-12) -> complex:
        """Evaluate at a complex number.

        Args:
            root: The value substituted for A.
            tolerance: Moduli below this count as a vanishing denominator.

        Returns:
            The complex value.

        Raises:
            PoleAtRoot: Raised when the denominator vanishes at the root.
        """
        den_value = evaluate_laurent(self.den, root)
        if abs(den_value) < tolerance:
            raise PoleAtRoot(f"Denominator {self.den} vanishes at A = {root}")
        return evaluate_laurent(self.num, root) / den_value

    def inverse(self) -> RationalFunc:
        """Return the multiplicative inverse.

        Returns:
            The inverse.

        Raises:
            DivisionByZero: Raised when inverting zero.
        """
        if self.num.is_zero:
            raise DivisionByZero("Cannot invert the zero rational function")
        return RationalFunc(self.den, self.num)

    def to_dict(self) -> dict[str, dict[str, int]]:
        """Return a JSON-friendly representation.

        Returns:
            A dictionary with numerator and denominator coefficient maps.
        """
        return {"num": self.num.to_dict(), "den": self.den.to_dict()}


def _coerce(value: RationalFunc | LaurentPoly | int) -> RationalFunc:
    """Coerce a polynomial or integer into a rational function."""
    if isinstance(value, RationalFunc):
        return value
    return RationalFunc(value)


def evaluate_laurent(p: LaurentPoly, root: complex) -> complex:
    """Evaluate a Laurent polynomial at a unit-modulus complex number.

    Powers of the root are taken through its argument so that large exponents
    keep full double precision.

    Args:
        p: The polynomial.
        root: The value substituted for A.

    Returns:
        The complex value.
    """
    if abs(abs(root) - 1.0) > 1e-12:
        return sum((coeff * root**exp for exp, coeff in p.items()), 0j)
    phase = cmath.phase(root)
    return sum((coeff * cmath.exp(1j * phase * exp) for exp, coeff in p.items()), 0j)
