"""Define readers and writers for extended-PD JSON and Gauss codes."""
from __future__ import annotations

import json
import re
from collections import defaultdict
from typing import Any

import voluptuous as vol

from vwrt.diagram.model import (
    EMPTY_DIAGRAM,
    Crossing,
    CrossingKind,
    Edge,
    ValidationError,
    VirtualDiagram,
    classical_crossing,
    virtual_crossing,
)
from vwrt.diagram.planar import is_planar, planarize
from vwrt.errors import VwrtError

KEY_COMPONENT = "component"
KEY_COMPONENTS = "components"
KEY_CROSSINGS = "crossings"
KEY_EDGES = "edges"
KEY_ID = "id"
KEY_KIND = "kind"
KEY_OVER = "over"
KEY_SIGN = "sign"
KEY_STRANDS = "strands"
KEY_UNDER = "under"

GAUSS_COMPONENT_SEPARATOR = "|"
GAUSS_FREE_LOOP = "o"

GAUSS_TOKEN = re.compile(
    r"\s*(?:(?P<height>[OU])(?P<label>\d+)(?P<sign>[+-])?"
    r"|V(?P<virtual>\d+)?"
    r"|(?P<free>o))\s*"
)


class ParseError(VwrtError):
    """Define an error related to unparsable diagram input."""

    pass


class UnbalancedCode(ParseError):
    """Define an error related to a Gauss code whose labels do not pair up."""

    pass


edge_id = vol.All(int, vol.Range(min=0))
strand = vol.All(vol.ExactSequence([edge_id, edge_id]), vol.Coerce(tuple))

CLASSICAL_SCHEMA = vol.Schema(
    {
        vol.Required(KEY_KIND): CrossingKind.CLASSICAL.value,
        vol.Required(KEY_OVER): strand,
        vol.Required(KEY_UNDER): strand,
        vol.Required(KEY_SIGN): vol.In([1, -1]),
    }
)

VIRTUAL_SCHEMA = vol.Schema(
    {
        vol.Required(KEY_KIND): CrossingKind.VIRTUAL.value,
        vol.Required(KEY_STRANDS): vol.ExactSequence([strand, strand]),
    }
)

PD_SCHEMA = vol.Schema(
    {
        vol.Required(KEY_COMPONENTS): vol.All(int, vol.Range(min=0)),
        vol.Required(KEY_CROSSINGS): [vol.Any(CLASSICAL_SCHEMA, VIRTUAL_SCHEMA)],
        vol.Required(KEY_EDGES): [
            {
                vol.Required(KEY_ID): edge_id,
                vol.Required(KEY_COMPONENT): vol.All(int, vol.Range(min=0)),
            }
        ],
    },
    extra=vol.ALLOW_EXTRA,
)


def load_json(text: str) -> Any:
    """Parse JSON text, mapping syntax errors to ParseError.

    Args:
        text: The JSON text.

    Returns:
        The decoded object.

    Raises:
        ParseError: Raised on malformed JSON.
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"Invalid JSON at line {err.lineno}: {err.msg}") from err


def diagram_from_dict(data: Any) -> VirtualDiagram:
    """Build a diagram from decoded extended-PD data.

    Args:
        data: The decoded JSON object.

    Returns:
        A validated VirtualDiagram.

    Raises:
        ValidationError: Raised when the data does not describe a valid diagram.
    """
    try:
        data = PD_SCHEMA(data)
    except vol.Invalid as err:
        raise ValidationError(f"Invalid diagram field {err.path}: {err.msg}") from err

    crossings = []
    for raw in data[KEY_CROSSINGS]:
        if raw[KEY_KIND] == CrossingKind.CLASSICAL:
            crossings.append(
                classical_crossing(raw[KEY_OVER], raw[KEY_UNDER], raw[KEY_SIGN])
            )
        else:
            first, second = raw[KEY_STRANDS]
            crossings.append(virtual_crossing(first, second))

    edges = tuple(Edge(raw[KEY_ID], raw[KEY_COMPONENT]) for raw in data[KEY_EDGES])
    return VirtualDiagram(data[KEY_COMPONENTS], tuple(crossings), edges)


def parse_pd(text: str) -> VirtualDiagram:
    """Parse an extended-PD JSON document.

    Args:
        text: The JSON text.

    Returns:
        A validated VirtualDiagram.
    """
    return diagram_from_dict(load_json(text))


def serialize(d: VirtualDiagram) -> str:
    """Serialize a diagram as canonical extended-PD JSON.

    Args:
        d: A diagram.

    Returns:
        JSON text with sorted keys and a final newline.
    """
    return json.dumps(d.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _tokenize(component: str) -> list[re.Match[str]]:
    """Split one component of a Gauss code into tokens."""
    tokens = []
    position = 0
    while position < len(component):
        match = GAUSS_TOKEN.match(component, position)
        if match is None or match.end() == position:
            raise ParseError(
                f"Unexpected Gauss code input at {component[position:]!r}"
            )
        tokens.append(match)
        position = match.end()
    return tokens


def parse_gauss(text: str) -> VirtualDiagram:  # pylint: disable=too-many-branches
    """Parse a signed Gauss code with O/U/V markers.

    Components are separated by "|"; "o" is a crossing-less component. A classical
    label appears once as O and once as U, with its sign on at least one of them.
    Each virtual label appears twice; bare V markers pair up in order. A code
    without V markers that cannot be drawn on the plane gets the virtual
    crossings of a planar drawing.

    Args:
        text: The Gauss code.

    Returns:
        A validated VirtualDiagram.

    Raises:
        ParseError: Raised on unknown tokens or conflicting signs.
        UnbalancedCode: Raised when labels do not pair up.
    """
    if not text.strip():
        return EMPTY_DIAGRAM

    # label -> list of (height, component, position)
    classical: defaultdict[str, list[tuple[str, int, int]]] = defaultdict(list)
    signs: dict[str, int] = {}
    virtual: defaultdict[str, list[tuple[int, int]]] = defaultdict(list)
    order: list[tuple[str, str]] = []
    bare_virtuals = 0
    lengths: list[int] = []

    for component, chunk in enumerate(text.split(GAUSS_COMPONENT_SEPARATOR)):
        tokens = _tokenize(chunk)
        if not tokens:
            raise ParseError(f"Component {component} is empty (use 'o' for an unknot)")
        if any(t["free"] for t in tokens):
            if len(tokens) != 1:
                raise ParseError(f"'o' must stand alone in component {component}")
            lengths.append(0)
            continue

        for position, token in enumerate(tokens):
            if token["height"]:
                label = token["label"]
                classical[label].append((token["height"], component, position))
                if ("c", label) not in order:
                    order.append(("c", label))
                if token["sign"]:
                    sign = 1 if token["sign"] == "+" else -1
                    if signs.setdefault(label, sign) != sign:
                        raise ParseError(f"Conflicting signs for crossing {label}")
            else:
                label = token["virtual"]
                if label is None:
                    label = f"_bare{bare_virtuals // 2}"
                    bare_virtuals += 1
                virtual[label].append((component, position))
                if ("v", label) not in order:
                    order.append(("v", label))
        lengths.append(len(tokens))

    # Edge (component, k) runs from passage k to passage k+1.
    edge_ids: dict[tuple[int, int], int] = {}
    edges = []
    for component, length in enumerate(lengths):
        for k in range(max(length, 1)):
            edge_ids[(component, k)] = len(edges)
            edges.append(Edge(len(edges), component))

    def passage(component: int, position: int) -> tuple[int, int]:
        """Return the (incoming, outgoing) edges of a passage."""
        length = lengths[component]
        return (
            edge_ids[(component, (position - 1) % length)],
            edge_ids[(component, position)],
        )

    crossings: list[Crossing] = []
    for kind, label in order:
        if kind == "c":
            visits = classical[label]
            heights = sorted(v[0] for v in visits)
            if heights != ["O", "U"]:
                raise UnbalancedCode(
                    f"Crossing {label} needs one O and one U passage (got {heights})"
                )
            if label not in signs:
                raise ParseError(f"Crossing {label} has no sign")
            over = next(v for v in visits if v[0] == "O")
            under = next(v for v in visits if v[0] == "U")
            crossings.append(
                classical_crossing(
                    passage(over[1], over[2]), passage(under[1], under[2]), signs[label]
                )
            )
        else:
            visits_v = virtual[label]
            if len(visits_v) != 2:
                raise UnbalancedCode(
                    f"Virtual crossing {label} appears {len(visits_v)} time(s)"
                )
            crossings.append(
                virtual_crossing(passage(*visits_v[0]), passage(*visits_v[1]))
            )

    diagram = VirtualDiagram(len(lengths), tuple(crossings), tuple(edges))
    if not virtual and not is_planar(diagram):
        diagram = planarize(diagram)
    return diagram
