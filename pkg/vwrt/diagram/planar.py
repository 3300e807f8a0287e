"""Define planarity checks and planar realizations of diagrams."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

import networkx as nx

from vwrt.const import LOGGER
from vwrt.diagram.builder import DiagramBuilder
from vwrt.diagram.model import (
    CrossingKind,
    VirtualDiagram,
    VirtualFaces,
    faces,
    pieces,
)

# A port is a (vertex, slot) pair; slots run counter-clockwise.
Port = tuple[int, int]


def is_planar(d: VirtualDiagram) -> bool:
    """Return whether a diagram, virtual crossings included, is drawn on the plane.

    Every connected piece with crossings must satisfy V − E + F = 2.

    Args:
        d: A diagram.

    Returns:
        Whether the property is true.
    """
    face_of = faces(d, VirtualFaces.VERTEX)
    piece_of = pieces(d, join_virtual=True)
    vertices = Counter(piece_of[crossing.strands[0][0]] for crossing in d.crossings)
    edges = Counter(piece_of[edge] for edge in d.edge_ids)
    bounded: defaultdict[int, set[int]] = defaultdict(set)
    for (edge, _), face in face_of.items():
        bounded[piece_of[edge]].add(face)
    return all(
        vertices[piece] - edges[piece] + len(bounded[piece]) == 2
        for piece in vertices
    )


@dataclass
class _Segment:
    """Define a stretch of one edge between two vertices of a drawing."""

    edge: int
    first: int | None = None
    last: int | None = None


@dataclass
class _Drawing:
    """Define a planar rotation system under construction.

    Dart 2s sits at the tail end of segment s and dart 2s + 1 at its head end.
    Vertices below `n_classical` are the classical crossings; the others are
    virtual crossing points, whose strands are kept in `virtual`.
    """

    n_classical: int
    rotation: dict[int, list[int | None]] = field(default_factory=dict)
    darts: dict[int, Port] = field(default_factory=dict)
    segments: list[_Segment] = field(default_factory=list)
    points: dict[int, list[int]] = field(default_factory=dict)
    virtual: dict[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Perform some post-init setup."""
        for vertex in range(self.n_classical):
            self.rotation[vertex] = [None] * 4

    def add_vertex(self) -> int:
        """Add a virtual crossing point."""
        vertex = len(self.rotation)
        self.rotation[vertex] = [None] * 4
        return vertex

    def add_segment(
        self,
        edge: int,
        tail: Port,
        head: Port,
        first: int | None = None,
        last: int | None = None,
    ) -> int:
        """Add a segment of an edge between two ports."""
        segment = len(self.segments)
        self.segments.append(_Segment(edge, first, last))
        self.place(2 * segment, tail)
        self.place(2 * segment + 1, head)
        return segment

    def corner_face(self, port: Port, face_of: dict[int, int]) -> int | None:
        """Return the face an empty slot opens into, or None at a bare vertex."""
        vertex, slot = port
        for step in range(1, 4):
            dart = self.rotation[vertex][(slot - step) % 4]
            if dart is not None:
                return face_of[dart]
        return None

    def face_map(self) -> dict[int, int]:
        """Return the face on the left of every dart."""
        face_of: dict[int, int] = {}
        face = 0
        for start in self.darts:
            if start in face_of:
                continue
            dart = start
            while dart not in face_of:
                face_of[dart] = face
                dart = self.next_dart(dart)
            face += 1
        return face_of

    def next_dart(self, dart: int) -> int:
        """Return the dart that follows one along the boundary of its face."""
        vertex, slot = self.darts[dart ^ 1]
        for step in range(1, 5):
            following = self.rotation[vertex][(slot - step) % 4]
            if following is not None:
                return following
        raise AssertionError(f"Dart {dart} has no successor")

    def place(self, dart: int, port: Port) -> None:
        """Put a dart into a slot."""
        self.darts[dart] = port
        self.rotation[port[0]][port[1]] = dart

    def route(self, edge: int, tail: Port, head: Port) -> None:
        """Draw an edge through the faces, crossing segments at new virtual points."""
        face_of = self.face_map()
        start = self.corner_face(tail, face_of)
        end = self.corner_face(head, face_of)
        crossed: list[tuple[int, bool]] = []
        if start is not None and end is not None and start != end:
            dual = nx.MultiGraph()
            for segment in range(len(self.segments)):
                dual.add_edge(
                    face_of[2 * segment], face_of[2 * segment + 1], key=segment
                )
            walk = nx.shortest_path(dual, start, end)
            for here, there in zip(walk, walk[1:]):
                segment = min(dual[here][there])
                crossed.append((segment, face_of[2 * segment] == here))

        self.points[edge] = []
        previous, first = tail, None
        for segment, from_left in crossed:
            point = self.add_vertex()
            other = self.segments[segment].edge
            # Strand 1 crosses strand 0 from its left to its right.
            if from_left:
                self.virtual[point] = (other, edge)
                other_in, route_out, other_out, route_in = 0, 1, 2, 3
            else:
                self.virtual[point] = (edge, other)
                route_in, other_out, route_out, other_in = 0, 1, 2, 3
            self.split(segment, point, other_in, other_out)
            self.add_segment(edge, previous, (point, route_in), first, point)
            self.points[edge].append(point)
            previous, first = (point, route_out), point
        self.add_segment(edge, previous, head, first, None)

    def split(self, segment: int, point: int, slot_in: int, slot_out: int) -> None:
        """Cut a segment at a point, keeping its first half under its id."""
        stretch = self.segments[segment]
        head = self.darts[2 * segment + 1]
        self.add_segment(stretch.edge, (point, slot_out), head, point, stretch.last)
        self.place(2 * segment + 1, (point, slot_in))
        points = self.points[stretch.edge]
        index = 0 if stretch.first is None else points.index(stretch.first) + 1
        points.insert(index, point)
        stretch.last = point


def planarize(d: VirtualDiagram) -> VirtualDiagram:
    """Redraw a diagram on the plane, adding virtual crossings where edges meet.

    Existing virtual crossings are dropped first. Each connected piece is grown
    from a spanning tree; every remaining edge is routed along a shortest path
    through the faces drawn so far. The classical crossings, and with them the
    virtual link, do not change.

    Args:
        d: A diagram.

    Returns:
        A planar VirtualDiagram; d itself when it is already planar.
    """
    if is_planar(d):
        return d

    builder = DiagramBuilder(d)
    for index in d.virtual_crossings:
        builder.remove_crossing(index)
    classical = builder.build()

    ports: dict[int, list[Port]] = {}
    for index, crossing in enumerate(classical.crossings):
        for slot, (edge, out) in enumerate(zip(crossing.ends, crossing.outgoing)):
            ports.setdefault(edge, [(-1, -1), (-1, -1)])[0 if out else 1] = (
                index,
                slot,
            )

    graph = nx.MultiGraph()
    graph.add_nodes_from(range(len(classical.crossings)))
    for edge, (tail, head) in ports.items():
        graph.add_edge(tail[0], head[0], key=edge)
    tree = {
        min(graph[parent][child])
        for nodes in nx.connected_components(graph)
        for parent, child in nx.bfs_edges(graph, min(nodes))
    }

    drawing = _Drawing(len(classical.crossings))
    for edge in sorted(tree):
        drawing.points[edge] = []
        drawing.add_segment(edge, *ports[edge])
    for edge in sorted(set(ports) - tree):
        drawing.route(edge, *ports[edge])

    builder = DiagramBuilder(classical)
    strands: dict[tuple[int, int], list[int]] = {}
    for edge, points in drawing.points.items():
        if not points:
            continue
        threaded = builder.thread(edge, len(points))
        for k, point in enumerate(points):
            strands[(point, edge)] = [threaded[k], threaded[k + 1]]
    for point, (first, second) in sorted(drawing.virtual.items()):
        builder.add_crossing(
            CrossingKind.VIRTUAL, (strands[(point, first)], strands[(point, second)])
        )
    realized = builder.build()
    LOGGER.debug(
        "Drew %s classical crossings on the plane with %s virtual crossings",
        len(classical.crossings),
        len(drawing.virtual),
    )
    return realized
