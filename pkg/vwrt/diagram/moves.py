"""Define Reidemeister, virtual, detour and Kirby moves on diagrams."""
from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from enum import StrEnum
from itertools import combinations, product
from typing import Any

from vwrt.const import LOGGER
from vwrt.diagram.builder import DiagramBuilder
from vwrt.diagram.cable import parallel_copies
from vwrt.diagram.model import (
    OVER,
    UNDER,
    CrossingKind,
    FaceSide,
    Side,
    VirtualDiagram,
    disjoint_union,
    faces,
    kinked_unknot,
    pieces,
    writhe,
)
from vwrt.errors import VwrtError
from vwrt.util import suggest

DETOUR_MAX_ROUTING = 3


class SiteMismatch(VwrtError):
    """Define an error related to a move site that does not match its pattern."""

    pass


class IllegalSlide(VwrtError):
    """Define an error related to sliding a component over itself."""

    pass


class MoveKind(StrEnum):
    """Define the supported moves."""

    R1_POSITIVE = "R1+"
    R1_NEGATIVE = "R1-"
    R2 = "R2"
    R3 = "R3"
    V1 = "V1"
    V2 = "V2"
    V3 = "V3"
    MIXED = "mixed"
    DETOUR = "detour"
    O1_POSITIVE = "O1+"
    O1_NEGATIVE = "O1-"
    O2 = "O2"

    @classmethod
    def parse(cls, value: str) -> MoveKind:
        """Parse a move kind, suggesting a close match on failure.

        Args:
            value: The move name.

        Returns:
            A MoveKind.

        Raises:
            ValueError: Raised on an unknown move name.
        """
        try:
            return cls(value)
        except ValueError as err:
            raise ValueError(
                suggest(f"Unknown move {value!r}", value, [str(k) for k in cls])
            ) from err

    @property
    def is_framed(self) -> bool:
        """Return whether the move preserves framed isotopy.

        Returns:
            Whether the property is true.
        """
        return self not in (MoveKind.R1_POSITIVE, MoveKind.R1_NEGATIVE)

    @property
    def sign(self) -> int:
        """Return the kink sign carried by R1± and O1±.

        Returns:
            +1, −1, or 0 for moves without a sign.
        """
        if self in (MoveKind.R1_POSITIVE, MoveKind.O1_POSITIVE):
            return 1
        if self in (MoveKind.R1_NEGATIVE, MoveKind.O1_NEGATIVE):
            return -1
        return 0


class Direction(StrEnum):
    """Define the direction of a move."""

    APPLY = "apply"
    REVERSE = "reverse"


@dataclass(frozen=True)
class MoveSpec:
    """Define one move at one site.

    `site` holds edge ids when inserting (R1/R2/V1/V2 apply, O2, detour start
    edge and run length), crossing indices when removing (R1/R2/V1/V2 reverse)
    or rewriting a triangle (R3/V3/mixed: three crossings then three edges), and
    a component id for removing a kinked unknot (O1 reverse).
    """

    kind: MoveKind
    direction: Direction = Direction.APPLY
    site: tuple[int, ...] = ()
    sign: int = 1
    flip: bool = False
    routing: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict[str, Any]:
        """Return a JSON-friendly representation.

        Returns:
            A dictionary.
        """
        return {
            "kind": str(self.kind),
            "direction": str(self.direction),
            "site": list(self.site),
            "sign": self.sign,
            "flip": self.flip,
            "routing": list(self.routing),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> MoveSpec:
        """Create a move from its JSON representation.

        Args:
            data: A dictionary produced by to_dict.

        Returns:
            A MoveSpec.
        """
        return cls(
            kind=MoveKind.parse(data["kind"]),
            direction=Direction(data.get("direction", Direction.APPLY)),
            site=tuple(data.get("site", ())),
            sign=data.get("sign", 1),
            flip=data.get("flip", False),
            routing=tuple(data.get("routing", ())),
        )


def _require_edges(d: VirtualDiagram, edges: tuple[int, ...], count: int) -> None:
    """Raise unless the site names `count` distinct existing edges."""
    if len(edges) != count or len(set(edges)) != count:
        raise SiteMismatch(f"Expected {count} distinct edges, got {list(edges)}")
    for edge in edges:
        if edge not in d.edge_component:
            raise SiteMismatch(f"Edge {edge} is not in the diagram")


def _require_crossings(d: VirtualDiagram, indices: tuple[int, ...], count: int) -> None:
    """Raise unless the site names `count` distinct existing crossings."""
    if len(indices) != count or len(set(indices)) != count:
        raise SiteMismatch(f"Expected {count} distinct crossings, got {list(indices)}")
    for index in indices:
        if not 0 <= index < len(d.crossings):
            raise SiteMismatch(f"Crossing {index} is not in the diagram")


def _is_kink(d: VirtualDiagram, index: int) -> bool:
    """Return whether a crossing closes a one-crossing loop."""
    (first_in, first_out), (second_in, second_out) = d.crossings[index].strands
    return first_out == second_in or second_out == first_in


def _insert_kink(d: VirtualDiagram, m: MoveSpec, kind: CrossingKind) -> VirtualDiagram:
    """Insert a classical or virtual kink on an edge."""
    _require_edges(d, m.site, 1)
    builder = DiagramBuilder(d)
    before, loop, after = builder.thread(m.site[0], 2)
    first, second = [before, loop], [loop, after]
    if m.flip:
        first, second = second, first
    sign = m.kind.sign if kind is CrossingKind.CLASSICAL else 0
    builder.add_crossing(kind, (first, second), sign)
    return builder.build()


def _remove_kink(d: VirtualDiagram, m: MoveSpec, kind: CrossingKind) -> VirtualDiagram:
    """Remove a one-crossing loop."""
    _require_crossings(d, m.site, 1)
    index = m.site[0]
    crossing = d.crossings[index]
    if crossing.kind is not kind or not _is_kink(d, index):
        raise SiteMismatch(f"Crossing {index} is not a {kind} kink")
    if kind is CrossingKind.CLASSICAL and crossing.sign != m.kind.sign:
        raise SiteMismatch(f"Crossing {index} is a kink of sign {crossing.sign}")
    builder = DiagramBuilder(d)
    builder.remove_crossing(index)
    return builder.build()


def _insert_bigon(d: VirtualDiagram, m: MoveSpec, kind: CrossingKind) -> VirtualDiagram:
    """Push one edge across another, creating two crossings."""
    _require_edges(d, m.site, 2)
    builder = DiagramBuilder(d)
    top = builder.thread(m.site[0], 2)
    bottom = builder.thread(m.site[1], 2)
    if m.flip:
        first_bottom, second_bottom = bottom[1:3], bottom[0:2]
    else:
        first_bottom, second_bottom = bottom[0:2], bottom[1:3]
    classical = kind is CrossingKind.CLASSICAL
    builder.add_crossing(kind, (top[0:2], first_bottom), m.sign if classical else 0)
    builder.add_crossing(kind, (top[1:3], second_bottom), -m.sign if classical else 0)
    return builder.build()


def _bigon_pairing(d: VirtualDiagram, first: int, second: int) -> bool:
    """Return whether two crossings bound a removable bigon."""
    x, y = d.crossings[first], d.crossings[second]
    if x.kind is not y.kind:
        return False
    if x.is_classical:
        if x.sign != -y.sign:
            return False
        pairings = [(OVER, OVER, UNDER, UNDER)]
    else:
        pairings = [(0, 0, 1, 1), (0, 1, 1, 0), (1, 0, 0, 1), (1, 1, 0, 0)]
    for slot_x, slot_y, other_x, other_y in pairings:
        if x.strands[slot_x][1] != y.strands[slot_y][0]:
            continue
        if (
            x.strands[other_x][1] == y.strands[other_y][0]
            or y.strands[other_y][1] == x.strands[other_x][0]
        ):
            return True
    return False


def _remove_bigon(d: VirtualDiagram, m: MoveSpec, kind: CrossingKind) -> VirtualDiagram:
    """Remove two crossings bounding a bigon."""
    _require_crossings(d, m.site, 2)
    first, second = m.site
    if d.crossings[first].kind is not kind or not _bigon_pairing(d, first, second):
        raise SiteMismatch(f"Crossings {first}, {second} do not bound a {kind} bigon")
    builder = DiagramBuilder(d)
    builder.remove_crossing(first)
    builder.remove_crossing(second)
    return builder.build()


# A link is an edge joining two different crossings:
# (edge, tail crossing, tail slot, head crossing, head slot)
Link = tuple[int, int, int, int, int]


def _links(d: VirtualDiagram) -> dict[frozenset[int], list[Link]]:
    """Group the edges joining distinct crossings by their endpoint pair."""
    grouped: dict[frozenset[int], list[Link]] = {}
    for edge in d.edge_ids:
        tail, head = d.tail(edge), d.head(edge)
        if tail is None or head is None or tail[0] == head[0]:
            continue
        grouped.setdefault(frozenset((tail[0], head[0])), []).append(
            (edge, tail[0], tail[1], head[0], head[1])
        )
    return grouped


def _slot_at(link: Link, crossing: int) -> int:
    """Return the strand slot a link occupies at one of its crossings."""
    return link[2] if link[1] == crossing else link[4]


def _triangles(
    d: VirtualDiagram,
) -> list[tuple[tuple[int, int, int], tuple[Link, ...]]]:
    """Find every triangle of crossings pairwise joined by edges of distinct strands."""
    grouped = _links(d)
    found = []
    for x, y, z in combinations(range(len(d.crossings)), 3):
        pairs = [frozenset((x, y)), frozenset((x, z)), frozenset((y, z))]
        if not all(pair in grouped for pair in pairs):
            continue
        for xy, xz, yz in product(*(grouped[pair] for pair in pairs)):
            if (
                _slot_at(xy, x) != _slot_at(xz, x)
                and _slot_at(xy, y) != _slot_at(yz, y)
                and _slot_at(xz, z) != _slot_at(yz, z)
            ):
                found.append(((x, y, z), (xy, xz, yz)))
    return found


def _is_braidlike_r3(d: VirtualDiagram, links: tuple[Link, ...]) -> bool:
    """Return whether a classical triangle is a valid third Reidemeister move.

    One strand is over at both its crossings, one under at both, and the three
    strands run all forward (or all backward) around the triangle from the
    top-middle crossing.
    """
    crossings = {link[1] for link in links} | {link[3] for link in links}
    signs = {d.crossings[c].sign for c in crossings}
    if any(not d.crossings[c].is_classical for c in crossings) or len(signs) != 1:
        return False

    roles: dict[str, Link] = {}
    for link in links:
        heights = (link[2], link[4])
        if heights == (OVER, OVER):
            roles["top"] = link
        elif heights == (UNDER, UNDER):
            roles["bottom"] = link
        else:
            roles["middle"] = link
    if len(roles) != 3:
        return False

    top, middle, bottom = roles["top"], roles["middle"], roles["bottom"]
    top_middle = ({top[1], top[3]} & {middle[1], middle[3]}).pop()
    top_bottom = ({top[1], top[3]} & {bottom[1], bottom[3]}).pop()
    forward = (
        top[1] == top_middle and middle[1] == top_middle and bottom[1] == top_bottom
    )
    backward = (
        top[3] == top_middle and middle[3] == top_middle and bottom[3] == top_bottom
    )
    return forward or backward


def _triangle_is_valid(
    d: VirtualDiagram, kind: MoveKind, links: tuple[Link, ...]
) -> bool:
    """Return whether a triangle supports the given third move."""
    crossings = {link[1] for link in links} | {link[3] for link in links}
    classical = sum(d.crossings[c].is_classical for c in crossings)
    if kind is MoveKind.V3:
        return classical == 0
    if kind is MoveKind.MIXED:
        return classical == 1
    return _is_braidlike_r3(d, links)


def _find_triangle(d: VirtualDiagram, m: MoveSpec) -> tuple[Link, ...]:
    """Return the triangle named by a site of three crossings and three edges."""
    if len(m.site) != 6:
        raise SiteMismatch(f"Triangle site needs 3 crossings and 3 edges: {m.site}")
    crossings, edges = tuple(sorted(m.site[:3])), tuple(m.site[3:])
    for found, links in _triangles(d):
        if found == crossings and tuple(link[0] for link in links) == edges:
            if _triangle_is_valid(d, m.kind, links):
                return links
    raise SiteMismatch(f"No {m.kind} triangle at {list(m.site)}")


def _rewrite_triangle(d: VirtualDiagram, m: MoveSpec) -> VirtualDiagram:
    """Push each side of a triangle across the opposite crossing."""
    links = _find_triangle(d, m)
    builder = DiagramBuilder(d)
    for edge, tail, tail_slot, head, head_slot in links:
        before = d.crossings[tail].strands[tail_slot][0]
        after = d.crossings[head].strands[head_slot][1]
        # The strand now meets `head` first and `tail` second.
        builder.set_strand(head, head_slot, before, edge)
        builder.set_strand(tail, tail_slot, edge, after)
    return builder.build()


def _excise(builder: DiagramBuilder, start: int, run: int) -> None:
    """Remove the next `run` virtual crossings met after an edge."""
    for _ in range(run):
        port = builder.head_port(start)
        if port is None:
            raise SiteMismatch(f"Detour from edge {start} ran out of crossings")
        if builder.crossing(port[0]).kind is not CrossingKind.VIRTUAL:
            raise SiteMismatch(f"Detour from edge {start} meets a classical crossing")
        builder.remove_crossing(port[0])


def _detour(d: VirtualDiagram, m: MoveSpec) -> VirtualDiagram:
    """Excise a run of virtual crossings and re-route the segment virtually.

    The site is (start edge, run length); the routing lists the edges the new
    segment crosses, in order.
    """
    if len(m.site) != 2:
        raise SiteMismatch(f"Detour site needs (edge, run length): {m.site}")
    start, run = m.site
    _require_edges(d, (start,), 1)
    builder = DiagramBuilder(d)
    _excise(builder, start, run)

    segment = [start]
    for target in m.routing:
        resolved = builder.resolve(target)
        if resolved in segment:
            raise SiteMismatch(f"Detour routing crosses its own segment at {target}")
        current, following = builder.thread(segment[-1], 1)
        crossed = builder.thread(resolved, 1)
        builder.add_crossing(CrossingKind.VIRTUAL, ([current, following], crossed))
        segment.append(following)
    return builder.build()


def _add_kinked_unknot(d: VirtualDiagram, m: MoveSpec) -> VirtualDiagram:
    """Add a split ±1-framed unknot."""
    return disjoint_union(d, kinked_unknot(m.kind.sign))


def _remove_kinked_unknot(d: VirtualDiagram, m: MoveSpec) -> VirtualDiagram:
    """Remove a split ±1-framed unknot."""
    if len(m.site) != 1:
        raise SiteMismatch(f"O1 reverse site needs one component: {m.site}")
    component = m.site[0]
    if not _is_kinked_unknot(d, component, m.kind.sign):
        raise SiteMismatch(
            f"Component {component} is not a split kinked unknot of sign {m.kind.sign}"
        )
    builder = DiagramBuilder(d)
    builder.drop_components([component])
    return builder.build()


def _is_kinked_unknot(d: VirtualDiagram, component: int, sign: int) -> bool:
    """Return whether a component is a split one-crossing kink of the given sign."""
    if not 0 <= component < d.n_components:
        return False
    involved = [
        index
        for index in range(len(d.crossings))
        if component in d.crossing_strand_components(index)
    ]
    if len(involved) != 1:
        return False
    index = involved[0]
    crossing = d.crossings[index]
    return (
        crossing.is_classical
        and crossing.sign == sign
        and d.crossing_strand_components(index) == (component, component)
    )


def _band_fits(
    d: VirtualDiagram,
    edge_i: int,
    edge_j: int,
    direction: Direction,
    face_of: dict[FaceSide, int],
    piece_of: dict[int, int],
) -> bool:
    """Return whether a band from edge i meets the parallel copy of edge j in a face.

    The copy runs on the left of edge j, so the band lives in the face on that
    side. Adding needs the face on the left of edge i, subtracting (the copy
    reversed) on its right. Edges on different pieces can always be brought
    together.
    """
    if piece_of[edge_i] != piece_of[edge_j]:
        return True
    side = Side.LEFT if direction is Direction.APPLY else Side.RIGHT
    return face_of[(edge_i, side)] == face_of[(edge_j, Side.LEFT)]


def handle_slide(d: VirtualDiagram, m: MoveSpec) -> VirtualDiagram:
    """Slide the component of edge i over the component of edge j.

    Component j is doubled by a blackboard-parallel copy; the copy (reversed for
    the subtracting slide) is band-summed into component i between the two named
    edges.

    Args:
        d: A diagram.
        m: An O2 move with site (edge on K_i, edge on K_j).

    Returns:
        A VirtualDiagram with the same components, K_i replaced.

    Raises:
        IllegalSlide: Raised when both edges lie on the same component.
        SiteMismatch: Raised when no band joins the edges inside a face.
    """
    _require_edges(d, m.site, 2)
    edge_i, edge_j = m.site
    sliding = d.edge_component[edge_i]
    fixed = d.edge_component[edge_j]
    if sliding == fixed:
        raise IllegalSlide(f"Cannot slide component {sliding} over itself")
    if not _band_fits(d, edge_i, edge_j, m.direction, faces(d), pieces(d)):
        raise SiteMismatch(
            f"Edges {edge_i} and {edge_j} do not face each other for a {m.direction}"
            " slide"
        )

    colors = [1] * d.n_components
    colors[fixed] = 2
    doubled, copy_ids, first_component = parallel_copies(d, colors)
    builder = DiagramBuilder(doubled)
    copy_component = first_component[fixed] + 1
    if m.direction is Direction.REVERSE:
        builder.reverse_component(copy_component)
    builder.band(copy_ids[(edge_i, 0)], copy_ids[(edge_j, 1)])
    builder.drop_empty_components()
    slid = builder.build()
    LOGGER.debug(
        "Slid component %s over %s: writhe %s -> %s",
        sliding,
        fixed,
        writhe(d, sliding),
        writhe(slid, sliding),
    )
    return slid


MoveHandler = Callable[[VirtualDiagram, MoveSpec], VirtualDiagram]

MOVES: dict[tuple[MoveKind, Direction], MoveHandler] = {
    (MoveKind.R1_POSITIVE, Direction.APPLY): lambda d, m: _insert_kink(
        d, m, CrossingKind.CLASSICAL
    ),
    (MoveKind.R1_NEGATIVE, Direction.APPLY): lambda d, m: _insert_kink(
        d, m, CrossingKind.CLASSICAL
    ),
    (MoveKind.R1_POSITIVE, Direction.REVERSE): lambda d, m: _remove_kink(
        d, m, CrossingKind.CLASSICAL
    ),
    (MoveKind.R1_NEGATIVE, Direction.REVERSE): lambda d, m: _remove_kink(
        d, m, CrossingKind.CLASSICAL
    ),
    (MoveKind.V1, Direction.APPLY): lambda d, m: _insert_kink(
        d, m, CrossingKind.VIRTUAL
    ),
    (MoveKind.V1, Direction.REVERSE): lambda d, m: _remove_kink(
        d, m, CrossingKind.VIRTUAL
    ),
    (MoveKind.R2, Direction.APPLY): lambda d, m: _insert_bigon(
        d, m, CrossingKind.CLASSICAL
    ),
    (MoveKind.R2, Direction.REVERSE): lambda d, m: _remove_bigon(
        d, m, CrossingKind.CLASSICAL
    ),
    (MoveKind.V2, Direction.APPLY): lambda d, m: _insert_bigon(
        d, m, CrossingKind.VIRTUAL
    ),
    (MoveKind.V2, Direction.REVERSE): lambda d, m: _remove_bigon(
        d, m, CrossingKind.VIRTUAL
    ),
    (MoveKind.R3, Direction.APPLY): _rewrite_triangle,
    (MoveKind.R3, Direction.REVERSE): _rewrite_triangle,
    (MoveKind.V3, Direction.APPLY): _rewrite_triangle,
    (MoveKind.V3, Direction.REVERSE): _rewrite_triangle,
    (MoveKind.MIXED, Direction.APPLY): _rewrite_triangle,
    (MoveKind.MIXED, Direction.REVERSE): _rewrite_triangle,
    (MoveKind.DETOUR, Direction.APPLY): _detour,
    (MoveKind.DETOUR, Direction.REVERSE): _detour,
    (MoveKind.O1_POSITIVE, Direction.APPLY): _add_kinked_unknot,
    (MoveKind.O1_NEGATIVE, Direction.APPLY): _add_kinked_unknot,
    (MoveKind.O1_POSITIVE, Direction.REVERSE): _remove_kinked_unknot,
    (MoveKind.O1_NEGATIVE, Direction.REVERSE): _remove_kinked_unknot,
    (MoveKind.O2, Direction.APPLY): handle_slide,
    (MoveKind.O2, Direction.REVERSE): handle_slide,
}


def apply_move(d: VirtualDiagram, m: MoveSpec) -> VirtualDiagram:
    """Apply a move at its site.

    Args:
        d: A diagram.
        m: The move.

    Returns:
        The rewritten diagram.
    """
    return MOVES[(m.kind, m.direction)](d, m)


def _detour_runs(d: VirtualDiagram, edge: int) -> int:
    """Count the distinct virtual crossings after an edge, up to a classical one."""
    seen: set[int] = set()
    current = edge
    while (port := d.head(current)) is not None:
        index, slot = port
        if d.crossings[index].is_classical or index in seen:
            break
        seen.add(index)
        current = d.crossings[index].strands[slot][1]
        if current == edge:
            break
    return len(seen)


def _detour_sites(d: VirtualDiagram, rng: random.Random) -> list[MoveSpec]:
    """Return detour sites with random replacement routings."""
    sites = []
    for edge in d.edge_ids:
        for run in range(_detour_runs(d, edge) + 1):
            builder = DiagramBuilder(d)
            try:
                _excise(builder, edge, run)
            except SiteMismatch:
                break
            candidates = [e for e in builder.edge_ids if e != edge]
            size = rng.randint(0, min(DETOUR_MAX_ROUTING, len(candidates)))
            routing = tuple(rng.sample(candidates, size))
            sites.append(MoveSpec(MoveKind.DETOUR, site=(edge, run), routing=routing))
    return sites


def enumerate_move_sites(  # pylint: disable=too-many-branches
    d: VirtualDiagram,
    kind: MoveKind,
    direction: Direction | None = None,
    rng: random.Random | None = None,
) -> list[MoveSpec]:
    """List every site where a move applies.

    Args:
        d: A diagram.
        kind: The move kind.
        direction: Restrict to one direction (default: both).
        rng: A random source for detour routings.

    Returns:
        A list of MoveSpec objects.
    """
    rng = rng or random.Random(0)
    directions = [direction] if direction else list(Direction)
    sites: list[MoveSpec] = []

    for current in directions:
        spec = MoveSpec(kind, current)
        if kind in (MoveKind.R1_POSITIVE, MoveKind.R1_NEGATIVE, MoveKind.V1):
            classical = kind is not MoveKind.V1
            if current is Direction.APPLY:
                for edge in d.edge_ids:
                    for flip in (False, True) if classical else (False,):
                        sites.append(replace(spec, site=(edge,), flip=flip))
            else:
                sites.extend(
                    replace(spec, site=(index,))
                    for index, crossing in enumerate(d.crossings)
                    if crossing.is_classical == classical
                    and _is_kink(d, index)
                    and (not classical or crossing.sign == kind.sign)
                )
        elif kind in (MoveKind.R2, MoveKind.V2):
            if current is Direction.APPLY:
                signs = (1, -1) if kind is MoveKind.R2 else (1,)
                for first, second in product(d.edge_ids, repeat=2):
                    if first == second:
                        continue
                    for sign, flip in product(signs, (False, True)):
                        sites.append(
                            replace(spec, site=(first, second), sign=sign, flip=flip)
                        )
            else:
                wanted = kind is MoveKind.R2
                for first, second in product(range(len(d.crossings)), repeat=2):
                    if (
                        first != second
                        and d.crossings[first].is_classical == wanted
                        and _bigon_pairing(d, first, second)
                    ):
                        sites.append(replace(spec, site=(first, second)))
        elif kind in (MoveKind.R3, MoveKind.V3, MoveKind.MIXED):
            if current is Direction.REVERSE:
                continue
            for crossings, links in _triangles(d):
                if _triangle_is_valid(d, kind, links):
                    edges = tuple(link[0] for link in links)
                    sites.append(replace(spec, site=crossings + edges))
        elif kind is MoveKind.DETOUR:
            if current is Direction.APPLY:
                sites.extend(_detour_sites(d, rng))
        elif kind in (MoveKind.O1_POSITIVE, MoveKind.O1_NEGATIVE):
            if current is Direction.APPLY:
                sites.append(spec)
            else:
                sites.extend(
                    replace(spec, site=(component,))
                    for component in d.components
                    if _is_kinked_unknot(d, component, kind.sign)
                )
        elif kind is MoveKind.O2:
            face_of, piece_of = faces(d), pieces(d)
            for sliding, fixed in product(d.components, repeat=2):
                if sliding == fixed:
                    continue
                sites.extend(
                    replace(spec, site=(edge_i, edge_j))
                    for edge_i in d.component_edges(sliding)
                    for edge_j in d.component_edges(fixed)
                    if _band_fits(d, edge_i, edge_j, current, face_of, piece_of)
                )
    return sites


def set_framing(d: VirtualDiagram, component: int, framing: int) -> VirtualDiagram:
    """Realise a framing on a component by adding kinks on its first edge.

    Args:
        d: A diagram.
        component: The component id.
        framing: The requested framing.

    Returns:
        A VirtualDiagram where the component's writhe equals the framing.
    """
    current = writhe(d, component)
    kind = MoveKind.R1_POSITIVE if framing > current else MoveKind.R1_NEGATIVE
    for _ in range(abs(framing - current)):
        edge = d.component_edges(component)[0]
        d = apply_move(d, MoveSpec(kind, site=(edge,)))
    return d
