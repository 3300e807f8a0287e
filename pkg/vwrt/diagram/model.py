"""Define the combinatorial model of framed virtual link diagrams."""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import cached_property

from networkx.utils import UnionFind

from vwrt.errors import VwrtError
from vwrt.helpers.typing import Strand

OVER = 0
UNDER = 1


class ValidationError(VwrtError):
    """Define an error related to an inconsistent diagram."""

    pass


class UnknownComponent(VwrtError):
    """Define an error related to a component id that is not in a diagram."""

    pass


class Side(StrEnum):
    """Define the two sides of an oriented edge."""

    LEFT = "left"
    RIGHT = "right"


class CrossingKind(StrEnum):
    """Define the kind of a crossing."""

    CLASSICAL = "classical"
    VIRTUAL = "virtual"


@dataclass(frozen=True)
class Crossing:
    """Define a crossing of two strands.

    Each strand is an (incoming edge, outgoing edge) pair. For a classical crossing
    strand 0 is the over strand and strand 1 the under strand; the sign is the
    handedness (right-handed = +1). Virtual crossings carry neither.
    """

    kind: CrossingKind
    strands: tuple[Strand, Strand]
    sign: int = 0

    def __post_init__(self) -> None:
        """Perform some post-init validation.

        Raises:
            ValidationError: Raised on a sign that does not match the crossing kind.
        """
        if self.kind is CrossingKind.CLASSICAL and self.sign not in (1, -1):
            raise ValidationError(
                f"Classical crossing needs sign ±1 (got {self.sign})"
            )
        if self.kind is CrossingKind.VIRTUAL and self.sign != 0:
            raise ValidationError("Virtual crossings carry no sign")

    @property
    def ends(self) -> tuple[int, int, int, int]:
        """Return the four edge-ends in counter-clockwise planar order.

        A virtual crossing is drawn like a positive crossing with strand 1 on top:
        strand 1 crosses strand 0 from its left to its right.

        Returns:
            A tuple of edge ids.
        """
        (o_in, o_out), (u_in, u_out) = self.strands
        if not self.is_classical:
            return (o_in, u_out, o_out, u_in)
        if self.sign > 0:
            return (u_in, o_out, u_out, o_in)
        return (u_in, o_in, u_out, o_out)

    @property
    def outgoing(self) -> tuple[bool, bool, bool, bool]:
        """Return, for each of the four ends, whether its edge leaves the crossing.

        Returns:
            Flags aligned with `ends`.
        """
        if not self.is_classical or self.sign > 0:
            return (False, True, True, False)
        return (False, False, True, True)

    @property
    def is_classical(self) -> bool:
        """Return whether the crossing is classical.

        Returns:
            Whether the property is true.
        """
        return self.kind is CrossingKind.CLASSICAL

    @property
    def over(self) -> Strand:
        """Return the over strand of a classical crossing.

        Returns:
            An (incoming, outgoing) edge pair.
        """
        return self.strands[OVER]

    @property
    def under(self) -> Strand:
        """Return the under strand of a classical crossing.

        Returns:
            An (incoming, outgoing) edge pair.
        """
        return self.strands[UNDER]

    def smoothings(self) -> tuple[tuple[Strand, Strand], tuple[Strand, Strand]]:
        """Return the A- and B-smoothings as pairs of joined edge-ends.

        The A-smoothing joins the regions swept counter-clockwise by the over strand:
        the oriented smoothing at a positive crossing, the turn-back smoothing at a
        negative one.

        Returns:
            A pair (A-smoothing, B-smoothing).
        """
        (o_in, o_out), (u_in, u_out) = self.strands
        oriented = ((o_in, u_out), (u_in, o_out))
        turnback = ((o_in, u_in), (o_out, u_out))
        if self.sign > 0:
            return oriented, turnback
        return turnback, oriented

    def to_dict(self) -> dict[str, object]:
        """Return the extended-PD representation.

        Returns:
            A JSON-friendly dictionary.
        """
        if self.is_classical:
            return {
                "kind": str(self.kind),
                "over": list(self.over),
                "under": list(self.under),
                "sign": self.sign,
            }
        return {"kind": str(self.kind), "strands": [list(s) for s in self.strands]}


@dataclass(frozen=True)
class Edge:
    """Define a directed arc between two crossing visits."""

    id: int  # pylint: disable=invalid-name
    component: int


@dataclass(frozen=True)
class VirtualDiagram:
    """Define an immutable, validated framed virtual link diagram."""

    n_components: int
    crossings: tuple[Crossing, ...] = ()
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        """Perform some post-init validation.

        Raises:
            ValidationError: Raised on inconsistent incidences or open strands.
        """
        if self.n_components < 0:
            raise ValidationError("Component count must be nonnegative")

        ids = [edge.id for edge in self.edges]
        if len(set(ids)) != len(ids):
            dupes = sorted(e for e, n in Counter(ids).items() if n > 1)
            raise ValidationError(f"Duplicate edge ids: {dupes}")
        if list(ids) != sorted(ids):
            object.__setattr__(
                self, "edges", tuple(sorted(self.edges, key=lambda e: e.id))
            )

        component_of = {edge.id: edge.component for edge in self.edges}
        for edge in self.edges:
            if not 0 <= edge.component < self.n_components:
                raise ValidationError(
                    f"Edge {edge.id} names unknown component {edge.component}"
                )

        incoming: Counter[int] = Counter()
        outgoing: Counter[int] = Counter()
        for index, crossing in enumerate(self.crossings):
            for edge_in, edge_out in crossing.strands:
                for edge_id in (edge_in, edge_out):
                    if edge_id not in component_of:
                        raise ValidationError(
                            f"Crossing {index} references unknown edge {edge_id}"
                        )
                if component_of[edge_in] != component_of[edge_out]:
                    raise ValidationError(
                        f"Crossing {index} joins edges {edge_in} and {edge_out} of "
                        "different components"
                    )
                incoming[edge_in] += 1
                outgoing[edge_out] += 1

        for edge in self.edges:
            ins, outs = incoming[edge.id], outgoing[edge.id]
            if ins > 1 or outs > 1:
                raise ValidationError(f"Edge {edge.id} has a strand-end used twice")
            if ins != outs:
                raise ValidationError(f"Edge {edge.id} is an open strand")

        for component in range(self.n_components):
            edges = [e.id for e in self.edges if e.component == component]
            if not edges:
                raise ValidationError(f"Component {component} has no edges")
            free = [e for e in edges if not incoming[e]]
            if free and len(edges) > 1:
                raise ValidationError(
                    f"Crossing-less edge {free[0]} must be the only edge of its "
                    "component"
                )
            if len(self._walk(edges[0])) != len(edges):
                raise ValidationError(
                    f"Component {component} is not a single closed walk"
                )

    @cached_property
    def _heads(self) -> dict[int, tuple[int, int]]:
        """Return a map of edge id to the (crossing, strand) it enters."""
        return {
            strand[0]: (index, slot)
            for index, crossing in enumerate(self.crossings)
            for slot, strand in enumerate(crossing.strands)
        }

    @cached_property
    def _tails(self) -> dict[int, tuple[int, int]]:
        """Return a map of edge id to the (crossing, strand) it leaves."""
        return {
            strand[1]: (index, slot)
            for index, crossing in enumerate(self.crossings)
            for slot, strand in enumerate(crossing.strands)
        }

    def _walk(self, start: int) -> list[int]:
        """Follow a component from an edge until the walk closes."""
        heads = {
            strand[0]: strand[1]
            for crossing in self.crossings
            for strand in crossing.strands
        }
        walk = [start]
        current = heads.get(start, start)
        while current != start:
            walk.append(current)
            current = heads[current]
        return walk

    @property
    def classical_crossings(self) -> list[int]:
        """Return indices of classical crossings.

        Returns:
            A list of crossing indices.
        """
        return [i for i, c in enumerate(self.crossings) if c.is_classical]

    @property
    def components(self) -> tuple[int, ...]:
        """Return the ordered component ids.

        Returns:
            A tuple of component ids.
        """
        return tuple(range(self.n_components))

    @cached_property
    def edge_component(self) -> dict[int, int]:
        """Return a map of edge id to component id.

        Returns:
            A dictionary.
        """
        return {edge.id: edge.component for edge in self.edges}

    @property
    def edge_ids(self) -> list[int]:
        """Return all edge ids in ascending order.

        Returns:
            A list of edge ids.
        """
        return [edge.id for edge in self.edges]

    @property
    def virtual_crossings(self) -> list[int]:
        """Return indices of virtual crossings.

        Returns:
            A list of crossing indices.
        """
        return [i for i, c in enumerate(self.crossings) if not c.is_classical]

    def check_component(self, component: int) -> None:
        """Raise if a component id is not in this diagram.

        Args:
            component: A component id.

        Raises:
            UnknownComponent: Raised on an unknown component.
        """
        if not 0 <= component < self.n_components:
            raise UnknownComponent(
                f"Component {component} not in diagram with "
                f"{self.n_components} components"
            )

    def component_edges(self, component: int) -> list[int]:
        """Return a component's edges in traversal order, from its lowest edge id.

        Args:
            component: A component id.

        Returns:
            A list of edge ids.
        """
        self.check_component(component)
        start = min(e.id for e in self.edges if e.component == component)
        return self._walk(start)

    def crossing_strand_components(self, index: int) -> tuple[int, int]:
        """Return the components of the two strands of a crossing.

        Args:
            index: A crossing index.

        Returns:
            A pair of component ids.
        """
        crossing = self.crossings[index]
        return (
            self.edge_component[crossing.strands[0][0]],
            self.edge_component[crossing.strands[1][0]],
        )

    def head(self, edge: int) -> tuple[int, int] | None:
        """Return the (crossing, strand) an edge enters.

        Args:
            edge: An edge id.

        Returns:
            A (crossing index, strand slot) pair, or None for a crossing-less loop.
        """
        return self._heads.get(edge)

    def is_free_loop(self, edge: int) -> bool:
        """Return whether an edge is a crossing-less closed loop.

        Args:
            edge: An edge id.

        Returns:
            Whether the property is true.
        """
        return edge not in self._heads

    def tail(self, edge: int) -> tuple[int, int] | None:
        """Return the (crossing, strand) an edge leaves.

        Args:
            edge: An edge id.

        Returns:
            A (crossing index, strand slot) pair, or None for a crossing-less loop.
        """
        return self._tails.get(edge)

    def to_dict(self) -> dict[str, object]:
        """Return the extended-PD representation.

        Returns:
            A JSON-friendly dictionary.
        """
        return {
            "components": self.n_components,
            "crossings": [crossing.to_dict() for crossing in self.crossings],
            "edges": [{"id": e.id, "component": e.component} for e in self.edges],
        }

    def traversal(self, component: int) -> list[tuple[int, int]]:
        """Return the (crossing, strand) visits of a component in order.

        Args:
            component: A component id.

        Returns:
            A list of (crossing index, strand slot) pairs.
        """
        return [
            visit
            for edge in self.component_edges(component)
            if (visit := self.head(edge)) is not None
        ]


EMPTY_DIAGRAM = VirtualDiagram(0)


def classical_crossing(over: Strand, under: Strand, sign: int) -> Crossing:
    """Create a classical crossing.

    Args:
        over: The over strand.
        under: The under strand.
        sign: The crossing sign.

    Returns:
        A Crossing.
    """
    return Crossing(CrossingKind.CLASSICAL, (over, under), sign)


def virtual_crossing(first: Strand, second: Strand) -> Crossing:
    """Create a virtual crossing.

    Args:
        first: The first strand.
        second: The second strand.

    Returns:
        A Crossing.
    """
    return Crossing(CrossingKind.VIRTUAL, (first, second))


def unknot() -> VirtualDiagram:
    """Return the crossing-less unknot.

    Returns:
        A VirtualDiagram.
    """
    return VirtualDiagram(1, (), (Edge(0, 0),))


def kinked_unknot(sign: int = 1) -> VirtualDiagram:
    """Return the unknot with a single kink of the given sign.

    Args:
        sign: The kink sign, which is also the framing.

    Returns:
        A VirtualDiagram.
    """
    return VirtualDiagram(
        1, (classical_crossing((1, 0), (0, 1), sign),), (Edge(0, 0), Edge(1, 0))
    )


def writhe(d: VirtualDiagram, component: int) -> int:
    """Return the blackboard framing of a component: the sum of its self-crossing signs.

    Args:
        d: A diagram.
        component: A component id.

    Returns:
        An integer.
    """
    d.check_component(component)
    return sum(
        crossing.sign
        for index, crossing in enumerate(d.crossings)
        if crossing.is_classical
        and d.crossing_strand_components(index) == (component, component)
    )


def linking_number(d: VirtualDiagram, i: int, j: int) -> Fraction:
    """Return half the sum of signs of classical crossings between two components.

    Args:
        d: A diagram.
        i: A component id.
        j: Another component id.

    Returns:
        An integer or half-integer.

    Raises:
        ValueError: Raised when both components coincide.
    """
    d.check_component(i)
    d.check_component(j)
    if i == j:
        raise ValueError("Linking number needs two distinct components")
    total = sum(
        crossing.sign
        for index, crossing in enumerate(d.crossings)
        if crossing.is_classical
        and set(d.crossing_strand_components(index)) == {i, j}
    )
    return Fraction(total, 2)


def _shift(
    d: VirtualDiagram, edge_offset: int, component_offset: int
) -> tuple[tuple[Crossing, ...], tuple[Edge, ...]]:
    """Return the crossings and edges of a diagram with all ids shifted."""
    crossings = tuple(
        Crossing(
            c.kind,
            (
                (c.strands[0][0] + edge_offset, c.strands[0][1] + edge_offset),
                (c.strands[1][0] + edge_offset, c.strands[1][1] + edge_offset),
            ),
            c.sign,
        )
        for c in d.crossings
    )
    edges = tuple(
        Edge(e.id + edge_offset, e.component + component_offset) for e in d.edges
    )
    return crossings, edges


def disjoint_union(d1: VirtualDiagram, d2: VirtualDiagram) -> VirtualDiagram:
    """Return the split union of two diagrams; the second's ids are shifted.

    Args:
        d1: The first diagram.
        d2: The second diagram.

    Returns:
        A VirtualDiagram whose first components are those of d1.
    """
    if not d2.n_components:
        return d1
    offset = max(d1.edge_ids, default=-1) + 1
    crossings, edges = _shift(d2, offset, d1.n_components)
    return VirtualDiagram(
        d1.n_components + d2.n_components,
        d1.crossings + crossings,
        d1.edges + edges,
    )


def reverse_component(d: VirtualDiagram, component: int) -> VirtualDiagram:
    """Reverse the orientation of one component.

    A classical crossing changes sign exactly when one of its strands is reversed.

    Args:
        d: A diagram.
        component: The component to reverse.

    Returns:
        A VirtualDiagram.
    """
    d.check_component(component)
    crossings = []
    for index, crossing in enumerate(d.crossings):
        owners = d.crossing_strand_components(index)
        flipped = [owner == component for owner in owners]
        strands = tuple(
            (out, into) if flip else (into, out)
            for flip, (into, out) in zip(flipped, crossing.strands)
        )
        sign = crossing.sign
        if crossing.is_classical and flipped[0] != flipped[1]:
            sign = -sign
        crossings.append(
            Crossing(crossing.kind, strands, sign)  # type: ignore[arg-type]
        )
    return VirtualDiagram(d.n_components, tuple(crossings), d.edges)


def mirror(d: VirtualDiagram) -> VirtualDiagram:
    """Return the mirror image: every classical crossing switched.

    Args:
        d: A diagram.

    Returns:
        A VirtualDiagram.
    """
    crossings = tuple(
        classical_crossing(c.under, c.over, -c.sign) if c.is_classical else c
        for c in d.crossings
    )
    return VirtualDiagram(d.n_components, crossings, d.edges)


def relabel_components(d: VirtualDiagram, order: Sequence[int]) -> VirtualDiagram:
    """Permute component ids: old component order[k] becomes component k.

    Args:
        d: A diagram.
        order: A permutation of the component ids.

    Returns:
        A VirtualDiagram.

    Raises:
        ValueError: Raised when the order is not a permutation.
    """
    if sorted(order) != list(d.components):
        raise ValueError(f"{list(order)} is not a permutation of {list(d.components)}")
    new_id = {old: new for new, old in enumerate(order)}
    edges = tuple(Edge(e.id, new_id[e.component]) for e in d.edges)
    return VirtualDiagram(d.n_components, d.crossings, edges)


def crossing_signs(
    d: VirtualDiagram, indices: Iterable[int] | None = None
) -> list[int]:
    """Return the signs of classical crossings.

    Args:
        d: A diagram.
        indices: Optional crossing indices (defaults to every classical crossing).

    Returns:
        A list of signs.
    """
    if indices is None:
        indices = d.classical_crossings
    return [d.crossings[i].sign for i in indices]


FaceSide = tuple[int, Side]


class VirtualFaces(StrEnum):
    """Define how a virtual crossing shapes the faces of a diagram.

    PASS lets both strands run straight through, giving the faces of the surface
    the classical crossings span. JOIN merges the four corners, as when one strand
    passes over a handle there. VERTEX treats the crossing as a planar vertex.
    """

    PASS = "pass"
    JOIN = "join"
    VERTEX = "vertex"


def faces(
    d: VirtualDiagram, virtual: VirtualFaces = VirtualFaces.PASS
) -> dict[FaceSide, int]:
    """Group the two sides of every edge into the faces they bound.

    Classical crossings join the sides meeting at each corner. How a virtual
    crossing behaves is chosen by `virtual`.

    Args:
        d: A diagram.
        virtual: The treatment of virtual crossings.

    Returns:
        A map of (edge, side) to a face id; face ids count up from 0.
    """
    sides = UnionFind((edge, side) for edge in d.edge_ids for side in Side)
    for crossing in d.crossings:
        if crossing.is_classical or virtual is VirtualFaces.VERTEX:
            ends = list(zip(crossing.ends, crossing.outgoing))
            for (first, first_out), (second, second_out) in zip(
                ends, ends[1:] + ends[:1]
            ):
                sides.union(
                    (first, Side.LEFT if first_out else Side.RIGHT),
                    (second, Side.RIGHT if second_out else Side.LEFT),
                )
        elif virtual is VirtualFaces.JOIN:
            sides.union(
                *(
                    (edge, side)
                    for strand in crossing.strands
                    for edge in strand
                    for side in Side
                )
            )
        else:
            for into, out in crossing.strands:
                for side in Side:
                    sides.union((into, side), (out, side))

    labels: dict[FaceSide, int] = {}
    return {
        (edge, side): labels.setdefault(sides[(edge, side)], len(labels))
        for edge in d.edge_ids
        for side in Side
    }


def pieces(d: VirtualDiagram, join_virtual: bool = False) -> dict[int, int]:
    """Return the piece of every edge: edges joined through classical crossings.

    Distinct pieces only meet at virtual crossings and can be drawn apart. With
    `join_virtual` virtual crossings join their strands too.

    Args:
        d: A diagram.
        join_virtual: Whether virtual crossings join their strands.

    Returns:
        A map of edge id to a piece id; piece ids count up from 0.
    """
    joined = UnionFind(d.edge_ids)
    for crossing in d.crossings:
        if crossing.is_classical or join_virtual:
            joined.union(*crossing.ends)
        else:
            for into, out in crossing.strands:
                joined.union(into, out)
    labels: dict[int, int] = {}
    return {edge: labels.setdefault(joined[edge], len(labels)) for edge in d.edge_ids}
