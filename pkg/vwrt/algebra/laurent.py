"""Define Laurent polynomials in A with integer coefficients."""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterator, Mapping
from functools import cache


class LaurentPoly:
    """Define an immutable Laurent polynomial: a map of exponent to coefficient."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None) -> None:
        """Initialize.

        Args:
            coeffs: A mapping of integer exponent to integer coefficient.
        """
        self._coeffs: dict[int, int] = {
            int(exp): int(coeff) for exp, coeff in (coeffs or {}).items() if coeff
        }
        self._hash = hash(frozenset(self._coeffs.items()))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        """Return coeff·A^exponent.

        Args:
            exponent: The exponent of A.
            coeff: The coefficient.

        Returns:
            A LaurentPoly.
        """
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, value: int) -> LaurentPoly:
        """Return a constant polynomial.

        Args:
            value: The constant.

        Returns:
            A LaurentPoly.
        """
        return cls({0: value})

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        """Add.

        Args:
            other: The addend.

        Returns:
            The sum.
        """
        return lp_add(self, _coerce(other))

    __radd__ = __add__

    def __eq__(self, other: object) -> bool:
        """Compare structurally.

        Args:
            other: The object to compare against.

        Returns:
            Whether both polynomials have identical coefficients.
        """
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        """Return the hash.

        Returns:
            An integer hash.
        """
        return self._hash

    def __iter__(self) -> Iterator[int]:
        """Iterate over exponents in ascending order.

        Returns:
            An iterator of exponents.
        """
        return iter(sorted(self._coeffs))

    def __len__(self) -> int:
        """Return the number of nonzero terms.

        Returns:
            The term count.
        """
        return len(self._coeffs)

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        """Multiply.

        Args:
            other: The factor.

        Returns:
            The product.
        """
        return lp_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> LaurentPoly:
        """Negate.

        Returns:
            The additive inverse.
        """
        return LaurentPoly({exp: -coeff for exp, coeff in self._coeffs.items()})

    def __pow__(self, exponent: int) -> LaurentPoly:
        """Raise to a nonnegative integer power.

        Args:
            exponent: The power.

        Returns:
            The power of this polynomial.
        """
        return lp_pow(self, exponent)

    def __repr__(self) -> str:
        """Define a string representation of this object.

        Returns:
            A string representation.
        """
        if not self._coeffs:
            return "0"
        terms = []
        for exp in sorted(self._coeffs, reverse=True):
            coeff = self._coeffs[exp]
            if exp == 0:
                terms.append(str(coeff))
            elif coeff == 1:
                terms.append(f"A^{exp}")
            elif coeff == -1:
                terms.append(f"-A^{exp}")
            else:
                terms.append(f"{coeff}*A^{exp}")
        return " + ".join(terms).replace("+ -", "- ")

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        """Subtract.

        Args:
            other: The subtrahend.

        Returns:
            The difference.
        """
        return lp_add(self, -_coerce(other))

    def __rsub__(self, other: int) -> LaurentPoly:
        """Subtract from an integer.

        Args:
            other: The minuend.

        Returns:
            The difference.
        """
        return lp_add(_coerce(other), -self)

    @property
    def is_monomial(self) -> bool:
        """Return whether this polynomial has exactly one term.

        Returns:
            Whether the property is true.
        """
        return len(self._coeffs) == 1

    @property
    def is_zero(self) -> bool:
        """Return whether this is the zero polynomial.

        Returns:
            Whether the property is true.
        """
        return not self._coeffs

    @property
    def max_degree(self) -> int:
        """Return the highest exponent (0 for the zero polynomial).

        Returns:
            An exponent.
        """
        return max(self._coeffs, default=0)

    @property
    def min_degree(self) -> int:
        """Return the lowest exponent (0 for the zero polynomial).

        Returns:
            An exponent.
        """
        return min(self._coeffs, default=0)

    def coeff(self, exponent: int) -> int:
        """Return the coefficient of A^exponent.

        Args:
            exponent: The exponent.

        Returns:
            The coefficient (0 when absent).
        """
        return self._coeffs.get(exponent, 0)

    def items(self) -> list[tuple[int, int]]:
        """Return (exponent, coefficient) pairs in ascending exponent order.

        Returns:
            A list of pairs.
        """
        return sorted(self._coeffs.items())

    def substitute_inverse(self) -> LaurentPoly:
        """Return the polynomial with A replaced by A⁻¹.

        Returns:
            A LaurentPoly.
        """
        return LaurentPoly({-exp: coeff for exp, coeff in self._coeffs.items()})

    def to_dict(self) -> dict[str, int]:
        """Return a JSON-friendly representation.

        Returns:
            A dictionary of stringified exponent to coefficient.
        """
        return {str(exp): coeff for exp, coeff in self.items()}


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
A = LaurentPoly.monomial(1)
LOOP_VALUE = LaurentPoly({2: -1, -2: -1})


def _coerce(value: LaurentPoly | int) -> LaurentPoly:
    """Coerce an integer into a constant polynomial."""
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(value)


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Add two Laurent polynomials coefficient-wise.

    Args:
        p: The first polynomial.
        q: The second polynomial.

    Returns:
        The sum.
    """
    total = dict(p._coeffs)  # pylint: disable=protected-access
    for exp, coeff in q._coeffs.items():  # pylint: disable=protected-access
        total[exp] = total.get(exp, 0) + coeff
    return LaurentPoly(total)


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Multiply two Laurent polynomials by convolution.

    Args:
        p: The first polynomial.
        q: The second polynomial.

    Returns:
        The product.
    """
    product: defaultdict[int, int] = defaultdict(int)
    for exp_p, coeff_p in p._coeffs.items():  # pylint: disable=protected-access
        for exp_q, coeff_q in q._coeffs.items():  # pylint: disable=protected-access
            product[exp_p + exp_q] += coeff_p * coeff_q
    return LaurentPoly(product)


def lp_pow(p: LaurentPoly, exponent: int) -> LaurentPoly:
    """Raise a Laurent polynomial to a power.

    Negative powers are only defined for monomials.

    Args:
        p: The polynomial.
        exponent: The power.

    Returns:
        The power.

    Raises:
        ValueError: Raised on a negative power of a non-monomial.
    """
    if exponent < 0:
        if not p.is_monomial:
            raise ValueError(f"Cannot invert the non-monomial {p}")
        ((exp, coeff),) = p.items()
        if coeff not in (1, -1):
            raise ValueError(f"Cannot invert the non-unit monomial {p}")
        return LaurentPoly.monomial(-exp, coeff) ** -exponent

    result = ONE
    base = p
    while exponent:
        if exponent & 1:
            result = result * base
        base = base * base
        exponent >>= 1
    return result


@cache
def loop_power(count: int) -> LaurentPoly:
    """Return d^count for the loop value d = −A²−A⁻².

    Args:
        count: The number of closed loops.

    Returns:
        A LaurentPoly.
    """
    return lp_pow(LOOP_VALUE, count)


@cache
def delta_poly(n: int) -> LaurentPoly:
    """Return Δ_n = (−1)^n (A^{2n} + A^{2n−4} + … + A^{−2n}).

    Args:
        n: A nonnegative integer.

    Returns:
        A LaurentPoly.

    Raises:
        ValueError: Raised on a negative index.
    """
    if n < 0:
        raise ValueError(f"Δ_n requires n ≥ 0 (got {n})")
    sign = -1 if n % 2 else 1
    return LaurentPoly({2 * n - 4 * k: sign for k in range(n + 1)})
