"""Define Temperley–Lieb pairings and the Jones–Wenzl projectors."""
from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import cache

from vwrt.algebra.laurent import LOOP_VALUE, delta_poly
from vwrt.algebra.rational import RationalFunc
from vwrt.errors import VwrtError

D = RationalFunc(LOOP_VALUE)


class StrandMismatch(VwrtError):
    """Define an error related to combining elements of different strand counts."""

    pass


class ColorOutOfRange(VwrtError):
    """Define an error related to a projector index beyond r − 2."""

    pass


@dataclass(frozen=True)
class TLPairing:
    """Define a planar perfect matching of n top and n bottom points.

    Top point k is index k and bottom point k is index n + k; `partner[p]` is the
    point matched with p. Around the disk the points read top 0..n−1 followed by
    bottom n−1..0.
    """

    n: int
    partner: tuple[int, ...]

    def __post_init__(self) -> None:
        """Perform some post-init validation.

        Raises:
            ValueError: Raised when the matching is not a planar involution.
        """
        size = 2 * self.n
        if len(self.partner) != size:
            raise ValueError(f"Pairing on {self.n} strands needs {size} entries")
        for point, other in enumerate(self.partner):
            if not 0 <= other < size or other == point or self.partner[other] != point:
                raise ValueError(f"Point {point} is not properly matched")
        chords = sorted(
            tuple(sorted((self._position(p), self._position(q))))
            for p, q in self.pairs
        )
        for first, (a, b) in enumerate(chords):
            for c, d in chords[first + 1 :]:
                if a < c < b < d:
                    raise ValueError(f"Pairing {self.partner} is not planar")

    def _position(self, point: int) -> int:
        """Return the place of a point around the disk boundary."""
        return point if point < self.n else 3 * self.n - 1 - point

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """Return the matched pairs with the smaller point first.

        Returns:
            A list of point pairs.
        """
        return [(p, q) for p, q in enumerate(self.partner) if p < q]

    def __repr__(self) -> str:
        """Define the representation."""
        return f"<TLPairing n={self.n} pairs={self.pairs}>"


def tl_identity(n: int) -> TLPairing:
    """Return the identity n-tangle.

    Args:
        n: The strand count.

    Returns:
        A TLPairing.
    """
    return TLPairing(n, tuple(range(n, 2 * n)) + tuple(range(n)))


def tl_hook(n: int, i: int) -> TLPairing:
    """Return the hook U_i joining strands i and i+1 at the top and at the bottom.

    Args:
        n: The strand count.
        i: The hook index, 1 ≤ i ≤ n − 1.

    Returns:
        A TLPairing.

    Raises:
        ValueError: Raised on an index out of range.
    """
    if not 1 <= i < n:
        raise ValueError(f"Hook U_{i} needs 1 ≤ i < {n}")
    partner = list(tl_identity(n).partner)
    left, right = i - 1, i
    partner[left], partner[right] = right, left
    partner[n + left], partner[n + right] = n + right, n + left
    return TLPairing(n, tuple(partner))


def tl_tensor_identity(x: TLPairing) -> TLPairing:
    """Return x ⊗ 1: a through strand added on the right.

    Args:
        x: A pairing.

    Returns:
        A TLPairing on n + 1 strands.
    """
    n = x.n

    def moved(point: int) -> int:
        return point if point < n else point + 1

    partner = [0] * (2 * n + 2)
    for point, other in enumerate(x.partner):
        partner[moved(point)] = moved(other)
    partner[n], partner[2 * n + 1] = 2 * n + 1, n
    return TLPairing(n + 1, tuple(partner))


def _planar_matchings(positions: list[int]) -> Iterator[list[tuple[int, int]]]:
    """Yield the non-crossing perfect matchings of points in boundary order."""
    if not positions:
        yield []
        return
    first = positions[0]
    for split in range(1, len(positions), 2):
        inside, outside = positions[1:split], positions[split + 1 :]
        for left in _planar_matchings(inside):
            for right in _planar_matchings(outside):
                yield [(first, positions[split])] + left + right


def tl_basis(n: int) -> list[TLPairing]:
    """Return every planar pairing on n strands.

    Args:
        n: The strand count.

    Returns:
        The Catalan(n) basis pairings.
    """
    point_at = list(range(n)) + list(range(2 * n - 1, n - 1, -1))
    basis = []
    for matching in _planar_matchings(list(range(2 * n))):
        partner = [0] * (2 * n)
        for a, b in matching:
            p, q = point_at[a], point_at[b]
            partner[p], partner[q] = q, p
        basis.append(TLPairing(n, tuple(partner)))
    return basis


def compose_pairings(upper: TLPairing, lower: TLPairing) -> tuple[TLPairing, int]:
    """Stack `upper` on `lower`, gluing the bottom of one to the top of the other.

    Args:
        upper: The pairing on top.
        lower: The pairing below.

    Returns:
        The composite pairing and the number of closed loops formed.

    Raises:
        StrandMismatch: Raised when the strand counts differ.
    """
    if upper.n != lower.n:
        raise StrandMismatch(f"Cannot compose {upper.n} with {lower.n} strands")
    n = upper.n
    glued = [False] * n
    result = [-1] * (2 * n)

    def follow(in_upper: bool, point: int) -> int:
        while True:
            if in_upper:
                other = upper.partner[point]
                if other < n:
                    return other
                glued[other - n] = True
                in_upper, point = False, other - n
            else:
                other = lower.partner[point]
                if other >= n:
                    return other
                glued[other] = True
                in_upper, point = True, n + other

    for point in range(n):
        if result[point] < 0:
            end = follow(True, point)
            result[point], result[end] = end, point
    for point in range(n, 2 * n):
        if result[point] < 0:
            end = follow(False, point)
            result[point], result[end] = end, point

    loops = 0
    for start in range(n):
        if glued[start]:
            continue
        loops += 1
        current = start
        while not glued[current]:
            glued[current] = True
            middle = upper.partner[n + current] - n
            glued[middle] = True
            current = lower.partner[middle]
    return TLPairing(n, tuple(result)), loops


def closure_loops(x: TLPairing) -> int:
    """Return the number of loops in the trace closure of a pairing.

    Args:
        x: A pairing.

    Returns:
        The loop count.
    """
    n = x.n
    seen = [False] * (2 * n)
    loops = 0
    for start in range(2 * n):
        if seen[start]:
            continue
        loops += 1
        point = start
        while not seen[point]:
            seen[point] = True
            other = x.partner[point]
            seen[other] = True
            # The closure arc joins top k with bottom k.
            point = other + n if other < n else other - n
    return loops


class TLElement:
    """Define a formal sum of pairings with rational-function coefficients."""

    __slots__ = ("n", "terms")

    def __init__(
        self, n: int, terms: Mapping[TLPairing, RationalFunc] | None = None
    ) -> None:
        """Initialize.

        Args:
            n: The strand count.
            terms: A map of pairing to coefficient.

        Raises:
            StrandMismatch: Raised when a pairing has the wrong strand count.
        """
        self.n = n
        self.terms: dict[TLPairing, RationalFunc] = {}
        for pairing, coeff in (terms or {}).items():
            if pairing.n != n:
                raise StrandMismatch(f"Pairing on {pairing.n} strands in a {n}-element")
            if not coeff.is_zero:
                self.terms[pairing] = coeff

    @classmethod
    def of(cls, pairing: TLPairing, coeff: RationalFunc | int = 1) -> TLElement:
        """Create a one-term element.

        Args:
            pairing: The pairing.
            coeff: Its coefficient.

        Returns:
            A TLElement.
        """
        if isinstance(coeff, int):
            coeff = RationalFunc(coeff)
        return cls(pairing.n, {pairing: coeff})

    def _check(self, other: TLElement) -> None:
        """Raise unless both elements live on the same strand count."""
        if self.n != other.n:
            raise StrandMismatch(f"Cannot combine {self.n} with {other.n} strands")

    def __add__(self, other: TLElement) -> TLElement:
        """Add two elements."""
        self._check(other)
        terms = dict(self.terms)
        for pairing, coeff in other.terms.items():
            terms[pairing] = terms[pairing] + coeff if pairing in terms else coeff
        return TLElement(self.n, terms)

    def __eq__(self, other: object) -> bool:
        """Compare term by term."""
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        """Hash term by term."""
        return hash((self.n, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[tuple[TLPairing, RationalFunc]]:
        """Iterate over (pairing, coefficient) in a stable order."""
        return iter(sorted(self.terms.items(), key=lambda item: item[0].partner))

    def __len__(self) -> int:
        """Return the number of terms."""
        return len(self.terms)

    def __matmul__(self, other: TLElement) -> TLElement:
        """Compose, placing self above other."""
        return tl_compose(self, other)

    def __neg__(self) -> TLElement:
        """Negate every coefficient."""
        return TLElement(self.n, {p: -c for p, c in self.terms.items()})

    def __repr__(self) -> str:
        """Define the representation."""
        return f"<TLElement n={self.n} terms={len(self.terms)}>"

    def __sub__(self, other: TLElement) -> TLElement:
        """Subtract two elements."""
        return self + (-other)

    def coeff(self, pairing: TLPairing) -> RationalFunc:
        """Return the coefficient of a pairing.

        Args:
            pairing: A pairing.

        Returns:
            A RationalFunc, zero when absent.
        """
        return self.terms.get(pairing, RationalFunc(0))

    @property
    def is_zero(self) -> bool:
        """Return whether the element vanishes.

        Returns:
            Whether the property is true.
        """
        return not self.terms

    def scale(self, factor: RationalFunc) -> TLElement:
        """Multiply every coefficient by a scalar.

        Args:
            factor: The scalar.

        Returns:
            A TLElement.
        """
        return TLElement(self.n, {p: c * factor for p, c in self.terms.items()})

    def tensor_identity(self) -> TLElement:
        """Return self ⊗ 1.

        Returns:
            A TLElement on n + 1 strands.
        """
        return TLElement(
            self.n + 1, {tl_tensor_identity(p): c for p, c in self.terms.items()}
        )


def tl_compose(x: TLElement, y: TLElement) -> TLElement:
    """Compose two elements bilinearly, x above y; each closed loop contributes d.

    Args:
        x: The upper element.
        y: The lower element.

    Returns:
        A TLElement.

    Raises:
        StrandMismatch: Raised when the strand counts differ.
    """
    if x.n != y.n:
        raise StrandMismatch(f"Cannot compose {x.n} with {y.n} strands")
    terms: dict[TLPairing, RationalFunc] = {}
    for upper, a in x.terms.items():
        for lower, b in y.terms.items():
            pairing, loops = compose_pairings(upper, lower)
            coeff = a * b
            for _ in range(loops):
                coeff = coeff * D
            terms[pairing] = terms[pairing] + coeff if pairing in terms else coeff
    return TLElement(x.n, terms)


def tl_closure(x: TLElement) -> RationalFunc:
    """Return the bracket of the trace closure: Σ coefficient · d^loops.

    Args:
        x: An element.

    Returns:
        A RationalFunc; the closure of the empty 0-strand element is 1.
    """
    total = RationalFunc(0)
    for pairing, coeff in x.terms.items():
        value = coeff
        for _ in range(closure_loops(pairing)):
            value = value * D
        total = total + value
    return total


@cache
def _projector(n: int) -> TLElement:
    """Return T_n by the Wenzl recursion."""
    if n <= 1:
        return TLElement.of(tl_identity(n))
    previous = _projector(n - 1).tensor_identity()
    hook = TLElement.of(tl_hook(n, n - 1))
    ratio = RationalFunc(delta_poly(n - 2)) / RationalFunc(delta_poly(n - 1))
    return previous - (previous @ hook @ previous).scale(ratio)


def jw(n: int, r: int | None = None) -> TLElement:
    """Return the n-th Jones–Wenzl projector.

    Args:
        n: The strand count.
        r: An optional level bounding n by r − 2.

    Returns:
        A TLElement; T_0 is the empty identity.

    Raises:
        ColorOutOfRange: Raised when n exceeds r − 2.
        ValueError: Raised on a negative n.
    """
    if n < 0:
        raise ValueError(f"Projector index must be nonnegative (got {n})")
    if r is not None and n > r - 2:
        raise ColorOutOfRange(f"Color {n} exceeds r − 2 = {r - 2}")
    return _projector(n)
