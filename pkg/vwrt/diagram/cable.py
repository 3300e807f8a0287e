"""Define blackboard-parallel cabling of diagrams with Jones–Wenzl boxes."""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from vwrt.const import LOGGER
from vwrt.diagram.builder import DiagramBuilder
from vwrt.diagram.model import (
    Crossing,
    Edge,
    ValidationError,
    VirtualDiagram,
)
from vwrt.errors import VwrtError
from vwrt.helpers.typing import Coloring


class ColorLengthMismatch(VwrtError):
    """Define an error related to a coloring of the wrong length."""

    pass


@dataclass(frozen=True)
class JWBox:
    """Define a Jones–Wenzl box cutting the parallel copies of one arc.

    `edges[k]` is the copy-k edge the box sits on; its tail side enters the box as
    top point k and its head side leaves the box as bottom point k.
    """

    component: int
    width: int
    edges: tuple[int, ...]


@dataclass(frozen=True)
class ColoredDiagram:
    """Define a cabled diagram together with its boxes."""

    base: VirtualDiagram
    colors: Coloring
    boxes: tuple[JWBox, ...] = ()

    def __post_init__(self) -> None:
        """Perform some post-init validation.

        Raises:
            ValidationError: Raised when a box does not match its cable.
        """
        for box in self.boxes:
            if box.width != len(box.edges) or box.width != self.colors[box.component]:
                raise ValidationError(
                    f"Box on component {box.component} has width {box.width} but "
                    f"color {self.colors[box.component]}"
                )


@dataclass
class _Cabling:
    """Define the bookkeeping of one cabling pass."""

    colors: Coloring
    first_component: dict[int, int] = field(default_factory=dict)
    copy_ids: dict[tuple[int, int], int] = field(default_factory=dict)
    crossings: list[Crossing] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)

    def new_edge(self, component: int) -> int:
        """Allocate an edge id on a cable component."""
        self.edges.append(Edge(len(self.edges), component))
        return self.edges[-1].id


def _grid(
    cabling: _Cabling,
    crossing: Crossing,
    owners: tuple[int, int],
) -> None:
    """Replace one crossing by the grid of crossings between two cables.

    Copy k sits k units to the left of its strand, which fixes the order in which
    one cable meets the copies of the other.
    """
    (o_in, o_out), (u_in, u_out) = crossing.strands
    first, second = owners
    width_over = cabling.colors[first]
    width_under = cabling.colors[second]
    sign = crossing.sign if crossing.is_classical else 1

    if sign > 0:
        over_meets = list(range(width_under - 1, -1, -1))
        under_meets = list(range(width_over))
    else:
        over_meets = list(range(width_under))
        under_meets = list(range(width_over - 1, -1, -1))

    # over_pieces[k][l]: strand of over-copy k at its meeting with under-copy l
    over_pieces: dict[tuple[int, int], tuple[int, int]] = {}
    for k in range(width_over):
        component = cabling.first_component[first] + k
        ins = [cabling.copy_ids[(o_in, k)]] + [
            cabling.new_edge(component) for _ in range(width_under - 1)
        ]
        outs = ins[1:] + [cabling.copy_ids[(o_out, k)]]
        for step, l in enumerate(over_meets):
            over_pieces[(k, l)] = (ins[step], outs[step])

    under_pieces: dict[tuple[int, int], tuple[int, int]] = {}
    for l in range(width_under):
        component = cabling.first_component[second] + l
        ins = [cabling.copy_ids[(u_in, l)]] + [
            cabling.new_edge(component) for _ in range(width_over - 1)
        ]
        outs = ins[1:] + [cabling.copy_ids[(u_out, l)]]
        for step, k in enumerate(under_meets):
            under_pieces[(k, l)] = (ins[step], outs[step])

    for k in range(width_over):
        for l in range(width_under):
            cabling.crossings.append(
                Crossing(
                    crossing.kind,
                    (over_pieces[(k, l)], under_pieces[(k, l)]),
                    crossing.sign,
                )
            )


def drop_components(d: VirtualDiagram, components: Sequence[int]) -> VirtualDiagram:
    """Delete components together with every crossing they take part in.

    Args:
        d: A diagram.
        components: The component ids to delete.

    Returns:
        A VirtualDiagram with the remaining components renumbered in order.
    """
    builder = DiagramBuilder(d)
    builder.drop_components(components)
    return builder.build()


def parallel_copies(
    d: VirtualDiagram, colors: Sequence[int]
) -> tuple[VirtualDiagram, dict[tuple[int, int], int], dict[int, int]]:
    """Replace every component by blackboard-parallel copies.

    Args:
        d: A diagram without zero-colored components.
        colors: A positive width per component.

    Returns:
        The cabled diagram, the map (edge, copy) -> new edge id and the map
        component -> id of its copy 0.
    """
    cabling = _Cabling(tuple(colors))
    next_component = 0
    for component in d.components:
        cabling.first_component[component] = next_component
        next_component += colors[component]

    for edge in d.edges:
        for k in range(colors[edge.component]):
            cabling.copy_ids[(edge.id, k)] = cabling.new_edge(
                cabling.first_component[edge.component] + k
            )

    for index, crossing in enumerate(d.crossings):
        _grid(cabling, crossing, d.crossing_strand_components(index))

    cabled = VirtualDiagram(
        next_component, tuple(cabling.crossings), tuple(cabling.edges)
    )
    return cabled, cabling.copy_ids, cabling.first_component


def cable(
    d: VirtualDiagram,
    colors: Sequence[int],
    box_edges: Mapping[int, int] | None = None,
) -> ColoredDiagram:
    """Cable a diagram by a coloring and place one Jones–Wenzl box per cable.

    A component of color 0 is deleted; a component of color a becomes a parallel
    copies. Each box sits on the copies of the component's lowest edge id unless
    `box_edges` names another edge of that component.

    Args:
        d: A diagram.
        colors: One nonnegative color per component.
        box_edges: Optional map of component -> edge carrying its box.

    Returns:
        A ColoredDiagram.

    Raises:
        ColorLengthMismatch: Raised when the coloring has the wrong length.
        ValidationError: Raised on a negative color or a misplaced box.
    """
    colors = tuple(colors)
    if len(colors) != d.n_components:
        raise ColorLengthMismatch(
            f"Got {len(colors)} colors for {d.n_components} components"
        )
    if any(a < 0 for a in colors):
        raise ValidationError(f"Colors must be nonnegative: {list(colors)}")

    box_edges = dict(box_edges or {})
    for component, edge in box_edges.items():
        if d.edge_component.get(edge) != component:
            raise ValidationError(f"Edge {edge} is not on component {component}")

    kept = [c for c in d.components if colors[c] > 0]
    dropped = [c for c in d.components if colors[c] == 0]
    # Dropping smooths crossings away but keeps every surviving edge id.
    reduced = drop_components(d, dropped) if dropped else d
    renumber = {old: new for new, old in enumerate(kept)}

    widths = [colors[c] for c in kept]
    cabled, copy_ids, _ = parallel_copies(reduced, widths)

    boxes = []
    for component in kept:
        edge = box_edges.get(component)
        if edge is None:
            edge = min(e.id for e in d.edges if e.component == component)
        edge = _surviving_edge(d, reduced, edge, renumber[component])
        width = colors[component]
        boxes.append(
            JWBox(
                component,
                width,
                tuple(copy_ids[(edge, k)] for k in range(width)),
            )
        )

    LOGGER.debug(
        "Cabled %s crossings into %s for colors %s",
        len(d.crossings),
        len(cabled.crossings),
        list(colors),
    )
    return ColoredDiagram(cabled, colors, tuple(boxes))


def _surviving_edge(
    original: VirtualDiagram, reduced: VirtualDiagram, edge: int, component: int
) -> int:
    """Return an edge of the reduced diagram on the requested component.

    Dropping components merges edges into their predecessors, so the requested
    edge may have been absorbed; fall back to walking backwards along the
    original component to the nearest surviving edge.
    """
    surviving = reduced.edge_component
    if edge in surviving:
        return edge
    walk = original.component_edges(original.edge_component[edge])
    position = walk.index(edge)
    for step in range(1, len(walk) + 1):
        candidate = walk[position - step]
        if surviving.get(candidate) == component:
            return candidate
    raise ValidationError(f"No surviving edge for box on edge {edge}")
