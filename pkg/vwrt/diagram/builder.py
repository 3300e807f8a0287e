"""Define a mutable workspace for local rewrites of diagrams."""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from vwrt.diagram.model import (
    Crossing,
    CrossingKind,
    Edge,
    ValidationError,
    VirtualDiagram,
)

DEAD = -1


@dataclass
class _Slot:
    """Define a mutable crossing record."""

    kind: CrossingKind
    strands: list[list[int]]
    sign: int


class DiagramBuilder:
    """Define a mutable diagram whose crossing ids and edge ids stay stable.

    Crossings keep the index they had in the source diagram; new crossings and
    edges receive ids above every id in use.
    """

    def __init__(self, diagram: VirtualDiagram | None = None) -> None:
        """Initialize.

        Args:
            diagram: An optional diagram to start from.
        """
        self._crossings: dict[int, _Slot] = {}
        self._edges: dict[int, int] = {}
        self._renamed: dict[int, int] = {}
        self._heads: dict[int, tuple[int, int]] = {}
        self._tails: dict[int, tuple[int, int]] = {}
        self.n_components = 0
        self._next_crossing = 0
        self._next_edge = 0

        if diagram is None:
            return

        self.n_components = diagram.n_components
        for index, crossing in enumerate(diagram.crossings):
            self._crossings[index] = _Slot(
                crossing.kind, [list(s) for s in crossing.strands], crossing.sign
            )
        self._edges = {edge.id: edge.component for edge in diagram.edges}
        self._next_crossing = len(diagram.crossings)
        self._index_ports()
        self._next_edge = max(self._edges, default=-1) + 1

    def _index_ports(self) -> None:
        """Rebuild the maps of edge to the crossing ports it enters and leaves."""
        self._heads = {}
        self._tails = {}
        for index, slot in self._crossings.items():
            for position, (into, out) in enumerate(slot.strands):
                if into != DEAD:
                    self._heads[into] = (index, position)
                if out != DEAD:
                    self._tails[out] = (index, position)

    def _set_in(self, index: int, position: int, edge: int) -> None:
        """Point the incoming end of a strand at an edge."""
        strand = self._crossings[index].strands[position]
        if self._heads.get(strand[0]) == (index, position):
            del self._heads[strand[0]]
        strand[0] = edge
        if edge != DEAD:
            self._heads[edge] = (index, position)

    def _set_out(self, index: int, position: int, edge: int) -> None:
        """Point the outgoing end of a strand at an edge."""
        strand = self._crossings[index].strands[position]
        if self._tails.get(strand[1]) == (index, position):
            del self._tails[strand[1]]
        strand[1] = edge
        if edge != DEAD:
            self._tails[edge] = (index, position)

    def add_component(self) -> int:
        """Add an empty component.

        Returns:
            The new component id.
        """
        self.n_components += 1
        return self.n_components - 1

    def add_crossing(
        self, kind: CrossingKind, strands: Iterable[Iterable[int]], sign: int = 0
    ) -> int:
        """Add a crossing between existing edges.

        Args:
            kind: The crossing kind.
            strands: Two (incoming, outgoing) edge pairs.
            sign: The sign of a classical crossing.

        Returns:
            The new crossing id.
        """
        index = self._next_crossing
        self._next_crossing += 1
        self._crossings[index] = _Slot(kind, [[DEAD, DEAD], [DEAD, DEAD]], sign)
        for position, (into, out) in enumerate(strands):
            self.set_strand(index, position, into, out)
        return index

    def add_edge(self, component: int) -> int:
        """Add an edge to a component.

        Args:
            component: The component id.

        Returns:
            The new edge id.
        """
        edge = self._next_edge
        self._next_edge += 1
        self._edges[edge] = component
        return edge

    def band(self, first: int, second: int) -> None:
        """Band-sum the components of two edges, keeping both orientations.

        Afterwards `first` runs into the old head of `second` and vice versa; the
        component of `second` is absorbed into that of `first` and left empty.

        Args:
            first: An edge of the surviving component.
            second: An edge of the absorbed component.
        """
        target = self._edges[first]
        source = self._edges[second]
        first_head = self.head_port(first)
        second_head = self.head_port(second)
        if second_head is None:
            del self._edges[second]
        elif first_head is None:
            del self._edges[first]
        else:
            self._set_in(*first_head, second)
            self._set_in(*second_head, first)
        for edge, component in self._edges.items():
            if component == source:
                self._edges[edge] = target

    def build(self) -> VirtualDiagram:
        """Freeze the workspace into a validated diagram.

        Returns:
            A VirtualDiagram.
        """
        crossings = tuple(
            Crossing(
                slot.kind,
                (
                    (slot.strands[0][0], slot.strands[0][1]),
                    (slot.strands[1][0], slot.strands[1][1]),
                ),
                slot.sign,
            )
            for _, slot in sorted(self._crossings.items())
        )
        edges = tuple(
            Edge(edge, component) for edge, component in sorted(self._edges.items())
        )
        return VirtualDiagram(self.n_components, crossings, edges)

    def component_of(self, edge: int) -> int:
        """Return the component of an edge.

        Args:
            edge: An edge id.

        Returns:
            A component id.
        """
        return self._edges[edge]

    def crossing(self, index: int) -> _Slot:
        """Return a mutable crossing record.

        Args:
            index: A crossing id.

        Returns:
            The crossing record.
        """
        return self._crossings[index]

    def drop_components(self, components: Iterable[int]) -> None:
        """Delete components, their edges and every crossing they take part in.

        A crossing between a dropped and a kept component is smoothed out of the
        kept strand. Remaining components are renumbered in order.

        Args:
            components: The component ids to drop.
        """
        dropped = set(components)
        if not dropped:
            return
        for index in sorted(self._crossings):
            slot = self._crossings.get(index)
            if slot is None:
                continue
            owners = {self._edges[strand[0]] for strand in slot.strands}
            if owners & dropped:
                self.remove_crossing(index)
        self._edges = {
            edge: component
            for edge, component in self._edges.items()
            if component not in dropped
        }
        self.drop_empty_components()

    def drop_empty_components(self) -> None:
        """Renumber components so that components without edges disappear."""
        used = sorted(set(self._edges.values()))
        new_id = {old: new for new, old in enumerate(used)}
        self._edges = {edge: new_id[c] for edge, c in self._edges.items()}
        self.n_components = len(used)

    def head_port(self, edge: int) -> tuple[int, int] | None:
        """Return the (crossing, strand) an edge enters.

        Args:
            edge: An edge id.

        Returns:
            A (crossing id, strand slot) pair, or None for a crossing-less loop.
        """
        return self._heads.get(edge)

    def remove_crossing(self, index: int) -> None:
        """Remove a crossing, splicing each strand's incoming and outgoing edges.

        Each strand keeps its incoming edge id; the outgoing edge is merged into it.

        Args:
            index: A crossing id.
        """
        slot = self._crossings[index]
        for position in range(2):
            edge_in, edge_out = slot.strands[position]
            self.set_strand(index, position, DEAD, DEAD)
            if edge_in == edge_out:
                continue
            port = self.head_port(edge_out)
            if port is not None:
                self._set_in(*port, edge_in)
            del self._edges[edge_out]
            self._renamed[edge_out] = edge_in
        del self._crossings[index]

    def resolve(self, edge: int) -> int:
        """Follow merges to the edge that now carries an original edge id.

        Args:
            edge: An edge id.

        Returns:
            The surviving edge id.

        Raises:
            ValidationError: Raised when the edge no longer exists.
        """
        while edge in self._renamed:
            edge = self._renamed[edge]
        if edge not in self._edges:
            raise ValidationError(f"Edge {edge} no longer exists")
        return edge

    def reverse_component(self, component: int) -> None:
        """Reverse the orientation of one component in place.

        Args:
            component: The component id.
        """
        for slot in self._crossings.values():
            flipped = [self._edges[s[0]] == component for s in slot.strands]
            for position, flip in enumerate(flipped):
                if flip:
                    slot.strands[position].reverse()
            if slot.kind is CrossingKind.CLASSICAL and flipped[0] != flipped[1]:
                slot.sign = -slot.sign
        self._index_ports()

    def set_strand(self, index: int, position: int, into: int, out: int) -> None:
        """Reconnect one strand of a crossing.

        Args:
            index: A crossing id.
            position: The strand slot.
            into: The incoming edge.
            out: The outgoing edge.
        """
        self._set_in(index, position, into)
        self._set_out(index, position, out)

    def tail_port(self, edge: int) -> tuple[int, int] | None:
        """Return the (crossing, strand) an edge leaves.

        Args:
            edge: An edge id.

        Returns:
            A (crossing id, strand slot) pair, or None for a crossing-less loop.
        """
        return self._tails.get(edge)

    def thread(self, edge: int, count: int) -> list[int]:
        """Insert points along an edge.

        Args:
            edge: The edge to subdivide.
            count: The number of points to insert.

        Returns:
            Edge ids [e_0, …, e_count] where point k sits between e_{k−1} and e_k;
            e_0 is the original edge. On a crossing-less loop e_count is e_0 again.
        """
        component = self._edges[edge]
        head = self.head_port(edge)
        free = head is None and self.tail_port(edge) is None
        pieces = [edge]
        for _ in range(count - 1 if free else count):
            pieces.append(self.add_edge(component))
        if free:
            pieces.append(edge)
        elif head is not None:
            self._set_in(*head, pieces[-1])
        return pieces

    @property
    def crossing_ids(self) -> list[int]:
        """Return the live crossing ids in ascending order.

        Returns:
            A list of crossing ids.
        """
        return sorted(self._crossings)

    @property
    def edge_ids(self) -> list[int]:
        """Return the live edge ids in ascending order.

        Returns:
            A list of edge ids.
        """
        return sorted(self._edges)
