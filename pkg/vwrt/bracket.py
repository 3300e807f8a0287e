"""Define the Kauffman bracket of virtual diagrams and of cabled diagrams."""
from __future__ import annotations

from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from itertools import count, product
from math import comb, prod

from vwrt.algebra.laurent import ONE, LaurentPoly, loop_power
from vwrt.algebra.level import LevelParams, lp_eval, rf_eval
from vwrt.algebra.rational import RationalFunc
from vwrt.const import DEFAULT_TERM_BUDGET, LOGGER
from vwrt.diagram.cable import ColoredDiagram, JWBox
from vwrt.diagram.model import Crossing, VirtualDiagram
from vwrt.diagram.moves import Direction, MoveKind, MoveSpec, apply_move
from vwrt.errors import VwrtError
from vwrt.temperley import TLPairing, jw
from vwrt.util import suggest

# (exponent of A, number of closed loops) -> integer coefficient
Weights = Counter[tuple[int, int]]
# A smoothing choice: (exponent of A, pairs of arcs joined)
Option = tuple[int, tuple[tuple[int, int], ...]]


class ComplexityGuardrail(VwrtError):
    """Define an error related to an input whose state sum is too large."""

    pass


class UnsupportedMove(VwrtError):
    """Define an error related to a move with no bracket relation."""

    pass


class Backend(StrEnum):
    """Define the evaluation backends."""

    EXACT = "exact"
    NUMERIC = "numeric"

    @classmethod
    def parse(cls, value: str) -> Backend:
        """Parse a backend name, suggesting a close match on failure.

        Args:
            value: The backend name.

        Returns:
            A Backend.

        Raises:
            ValueError: Raised on an unknown backend.
        """
        try:
            return cls(value)
        except ValueError as err:
            raise ValueError(
                suggest(f"Unknown backend {value!r}", value, [str(b) for b in cls])
            ) from err


@dataclass(frozen=True)
class MoveRelation:
    """Define the measured effect of a move on the bracket."""

    move: MoveSpec
    factor: RationalFunc
    before: LaurentPoly
    after: LaurentPoly

    @property
    def holds(self) -> bool:
        """Return whether after = factor · before exactly.

        Returns:
            Whether the property is true.
        """
        return RationalFunc(self.after) == self.factor * self.before


class _Network:
    """Define the smoothing network of a diagram with optional junctions.

    Virtual crossings are contracted away: their strands pass straight through, so
    each arc of the network is a maximal run of edges between classical crossings
    and junctions. An arc with no ends is a closed loop.
    """

    def __init__(
        self,
        d: VirtualDiagram,
        junctions: Iterable[tuple[JWBox, TLPairing]] = (),
    ) -> None:
        """Initialize.

        Args:
            d: A diagram.
            junctions: Boxes together with the pairing spliced into each.
        """
        fresh = count(max(d.edge_ids, default=-1) + 1)
        self._parent: dict[int, int] = {edge: edge for edge in d.edge_ids}
        entering: dict[int, int] = {}
        self.vertices: list[list[Option]] = []

        for box, pairing in junctions:
            tops, bottoms = list(box.edges), []
            for edge in box.edges:
                # A cut edge keeps its tail; the head side gets a fresh id.
                head_side = edge if d.is_free_loop(edge) else next(fresh)
                self._parent.setdefault(head_side, head_side)
                entering[edge] = head_side
                bottoms.append(head_side)
            ends = tops + bottoms
            self.vertices.append(
                [(0, tuple((ends[p], ends[q]) for p, q in pairing.pairs))]
            )

        for crossing in d.crossings:
            if not crossing.is_classical:
                for edge_in, edge_out in crossing.strands:
                    self._union(entering.get(edge_in, edge_in), edge_out)

        for crossing in d.crossings:
            if not crossing.is_classical:
                continue
            (o_in, o_out), (u_in, u_out) = crossing.strands
            renamed = Crossing(
                crossing.kind,
                (
                    (entering.get(o_in, o_in), o_out),
                    (entering.get(u_in, u_in), u_out),
                ),
                crossing.sign,
            )
            smooth_a, smooth_b = renamed.smoothings()
            self.vertices.append([(1, smooth_a), (-1, smooth_b)])

        self.vertices = [
            [
                (exponent, tuple((self._find(a), self._find(b)) for a, b in joins))
                for exponent, joins in options
            ]
            for options in self.vertices
        ]
        touched = {
            arc
            for options in self.vertices
            for arc in _arcs_of(options[0][1])
        }
        self.free_loops = len({self._find(e) for e in self._parent} - touched)

    def _find(self, edge: int) -> int:
        """Return the arc representative of an edge."""
        root = edge
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[edge] != root:
            self._parent[edge], edge = root, self._parent[edge]
        return root

    def _union(self, first: int, second: int) -> None:
        """Merge the arcs of two edges."""
        self._parent[self._find(first)] = self._find(second)

    def order(self) -> list[int]:
        """Return a vertex order that keeps the set of open arcs small.

        Returns:
            A list of vertex indices.
        """
        ends = [_arcs_of(options[0][1]) for options in self.vertices]
        remaining = set(range(len(self.vertices)))
        open_arcs: Counter[int] = Counter()
        order = []
        while remaining:
            best = min(
                remaining,
                key=lambda v: (-sum(1 for a in ends[v] if open_arcs[a]), v),
            )
            remaining.remove(best)
            order.append(best)
            for arc in ends[best]:
                open_arcs[arc] += 1
                if open_arcs[arc] == 2:
                    del open_arcs[arc]
        return order


def _arcs_of(joins: Sequence[tuple[int, int]]) -> list[int]:
    """Return the arc ends met at a vertex."""
    return [arc for pair in joins for arc in pair]


def _join(partner: dict[int, int], a: int, b: int) -> int:
    """Connect the open ends of arcs a and b; return 1 when a loop closes."""
    if a == b:
        return 1
    end_a = partner.pop(a, a)
    if end_a == b:
        del partner[b]
        return 1
    end_b = partner.pop(b, b)
    partner[end_a] = end_b
    partner[end_b] = end_a
    return 0


def _state_sum(
    network: _Network, term_budget: int = DEFAULT_TERM_BUDGET
) -> LaurentPoly:
    """Sum A^{#A−#B}·d^{#loops} over all states by dynamic programming.

    States that leave the same arcs connected are merged, so the cost follows the
    number of open arcs rather than 2^{#crossings}.
    """
    states: dict[tuple[tuple[int, int], ...], Weights] = {(): Counter({(0, 0): 1})}
    for index in network.order():
        options = network.vertices[index]
        merged: defaultdict[tuple[tuple[int, int], ...], Weights] = defaultdict(Counter)
        for key, weights in states.items():
            for exponent, joins in options:
                partner = dict(key)
                loops = sum(_join(partner, a, b) for a, b in joins)
                bucket = merged[tuple(sorted(partner.items()))]
                for (power, closed), coeff in weights.items():
                    bucket[(power + exponent, closed + loops)] += coeff
        states = merged
        size = sum(len(weights) for weights in states.values())
        if size > term_budget:
            raise ComplexityGuardrail(
                f"State sum holds {size} terms, over the budget of {term_budget}"
            )

    result = LaurentPoly()
    for (power, closed), coeff in states.get((), Counter()).items():
        if coeff:
            loops = closed + network.free_loops
            result = result + LaurentPoly.monomial(power, coeff) * loop_power(loops)
    return result


def kauffman_bracket(
    d: VirtualDiagram, term_budget: int = DEFAULT_TERM_BUDGET
) -> LaurentPoly:
    """Return the unnormalized Kauffman bracket; one loop is d, the empty diagram 1.

    Virtual crossings are never smoothed.

    Args:
        d: A diagram.
        term_budget: The largest state table tolerated.

    Returns:
        A LaurentPoly.
    """
    return _state_sum(_Network(d), term_budget)


def _spliced_terms(
    cd: ColoredDiagram, r: int | None
) -> Iterable[tuple[list[RationalFunc], list[tuple[JWBox, TLPairing]]]]:
    """Yield one (coefficients, junctions) pair per choice of pairing per box."""
    expansions = [list(jw(box.width, r)) for box in cd.boxes]
    for choice in product(*expansions):
        yield (
            [coeff for _, coeff in choice],
            [(box, pairing) for box, (pairing, _) in zip(cd.boxes, choice)],
        )


def colored_bracket(
    cd: ColoredDiagram, r: int | None = None, term_budget: int = DEFAULT_TERM_BUDGET
) -> RationalFunc:
    """Return the bracket of a cabled diagram with its Jones–Wenzl boxes expanded.

    Args:
        cd: A colored diagram.
        r: An optional level bounding the colors by r − 2.
        term_budget: The largest state table tolerated.

    Returns:
        A RationalFunc.
    """
    total = RationalFunc(0)
    spliced = 0
    for coeffs, junctions in _spliced_terms(cd, r):
        value = _state_sum(_Network(cd.base, junctions), term_budget)
        if value.is_zero:
            continue
        term = RationalFunc(value)
        for coeff in coeffs:
            term = term * coeff
        total = total + term
        spliced += 1
    LOGGER.debug("Colored bracket for %s summed %s spliced terms", cd.colors, spliced)
    return total


def evaluation_backend(
    cd: ColoredDiagram,
    params: LevelParams,
    backend: Backend = Backend.EXACT,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> complex:
    """Evaluate a colored bracket at the level's root of unity.

    The exact backend evaluates the reduced rational function; the numeric backend
    evaluates projector coefficients up front and sums complex terms.

    Args:
        cd: A colored diagram.
        params: The level parameters.
        backend: The evaluation backend.
        term_budget: The largest state table tolerated.

    Returns:
        A complex number.
    """
    if backend is Backend.EXACT:
        return rf_eval(colored_bracket(cd, params.r, term_budget), params)

    evaluated: dict[RationalFunc, complex] = {}
    total = 0j
    for coeffs, junctions in _spliced_terms(cd, params.r):
        value = _state_sum(_Network(cd.base, junctions), term_budget)
        if value.is_zero:
            continue
        for coeff in coeffs:
            if coeff not in evaluated:
                evaluated[coeff] = rf_eval(coeff, params)
        weight = prod((evaluated[coeff] for coeff in coeffs), start=1 + 0j)
        total += weight * lp_eval(value, params)
    return total


def _catalan(n: int) -> int:
    """Return the n-th Catalan number."""
    return comb(2 * n, n) // (n + 1)


def estimate_terms(d: VirtualDiagram, r: int | None = None) -> int:
    """Estimate the number of state-sum terms an evaluation would touch.

    Without a level this is 2^{#classical crossings}; with a level it is the sum
    over colorings of the spliced-diagram count times the cabled state count.

    Args:
        d: A diagram.
        r: An optional level.

    Returns:
        An integer estimate.
    """
    if r is None:
        return 2 ** len(d.classical_crossings)
    pairs = Counter(
        tuple(sorted(d.crossing_strand_components(index)))
        for index in d.classical_crossings
    )
    total = 0
    for colors in product(range(r - 1), repeat=d.n_components):
        crossings = sum(colors[i] * colors[j] * n for (i, j), n in pairs.items())
        total += prod(_catalan(a) for a in colors) * 2**crossings
    return total


def _r1_factor(sign: int) -> RationalFunc:
    """Return the bracket factor −A^{3·sign} of one kink."""
    return RationalFunc(LaurentPoly.monomial(3 * sign, -1))


def bracket_behavior_under_moves(
    d: VirtualDiagram, m: MoveSpec, term_budget: int = DEFAULT_TERM_BUDGET
) -> MoveRelation:
    """Apply a move and measure how the bracket changes.

    Args:
        d: A diagram.
        m: The move.
        term_budget: The largest state table tolerated.

    Returns:
        A MoveRelation carrying the expected factor and both brackets.

    Raises:
        UnsupportedMove: Raised for handle slides, which have no bracket relation.
    """
    if m.kind is MoveKind.O2:
        raise UnsupportedMove("Handle slides do not relate brackets by a factor")

    factor = RationalFunc(ONE)
    if m.kind in (MoveKind.R1_POSITIVE, MoveKind.R1_NEGATIVE):
        factor = _r1_factor(m.kind.sign)
    elif m.kind in (MoveKind.O1_POSITIVE, MoveKind.O1_NEGATIVE):
        factor = _r1_factor(m.kind.sign) * RationalFunc(loop_power(1))
    if m.direction is Direction.REVERSE and factor != RationalFunc(ONE):
        factor = factor.inverse()

    before = kauffman_bracket(d, term_budget)
    after = kauffman_bracket(apply_move(d, m), term_budget)
    relation = MoveRelation(m, factor, before, after)
    LOGGER.debug("Move %s: bracket relation holds=%s", m.kind, relation.holds)
    return relation
