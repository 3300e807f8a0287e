"""Define links in thickened surfaces, condition S and the augmentation construction."""
from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import voluptuous as vol
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from vwrt.bracket import Backend
from vwrt.const import DEFAULT_TERM_BUDGET, DEFAULT_TOLERANCE, LOGGER
from vwrt.diagram.builder import DiagramBuilder
from vwrt.diagram.codec import PD_SCHEMA, diagram_from_dict, load_json
from vwrt.diagram.model import (
    CrossingKind,
    Edge,
    Side,
    ValidationError,
    VirtualDiagram,
    VirtualFaces,
    classical_crossing,
    disjoint_union,
    faces,
    unknot,
    virtual_crossing,
)
from vwrt.errors import VwrtError
from vwrt.helpers.typing import Mapper
from vwrt.util import suggest
from vwrt.wrt import InvariantReport, z_invariant

KEY_BOUNDARY_BASIS = "boundary_basis"
KEY_GENUS = "genus"
KEY_WINDINGS = "windings"

Vector = tuple[int, ...]
SURFACE_KEYS = (KEY_BOUNDARY_BASIS, KEY_GENUS, KEY_WINDINGS)


class InconsistentWindings(ValidationError):
    """Define an error related to winding data that does not fit the diagram."""

    pass


class ModeUnknown(VwrtError):
    """Define an error related to an unknown construction mode."""

    pass


class ConditionSFail(VwrtError):
    """Define an error related to a presentation failing condition S."""

    pass


def default_basis(genus: int) -> tuple[str, ...]:
    """Return the labels m1, l1, …, mg, lg of a symplectic basis.

    Args:
        genus: The surface genus.

    Returns:
        A tuple of labels.
    """
    return tuple(label for h in range(1, genus + 1) for label in (f"m{h}", f"l{h}"))


@dataclass(frozen=True)
class SurfaceDiagram:
    """Define a diagram on a closed surface of genus g, recorded by handle windings.

    `windings[e]` counts the signed passages of edge e over the curves dual to the
    basis (m1, l1, …, mg, lg); edges without an entry do not wind.
    """

    base: VirtualDiagram
    genus: int = 0
    windings: Mapping[int, Vector] = field(default_factory=dict)
    boundary_basis: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        """Perform some post-init validation.

        Raises:
            InconsistentWindings: Raised on a bad genus, vector length or edge id, or
                when the windings around a face do not cancel.
        """
        if self.genus < 0:
            raise InconsistentWindings(f"Genus must be nonnegative (got {self.genus})")
        width = 2 * self.genus
        for edge, vector in self.windings.items():
            if edge not in self.base.edge_component:
                raise InconsistentWindings(f"Winding given for unknown edge {edge}")
            if len(vector) != width:
                raise InconsistentWindings(
                    f"Edge {edge} winds in {len(vector)} directions, expected {width}"
                )
        self._check_face_sums()
        if not self.boundary_basis:
            object.__setattr__(self, "boundary_basis", default_basis(self.genus))

    def _check_face_sums(self) -> None:
        """Check that the windings around every face of the base diagram cancel.

        The four corners at a virtual crossing open into one another through its
        handle, so they count as a single face.
        """
        if not self.windings:
            return
        sums: dict[int, list[int]] = {}
        for (edge, side), face in faces(self.base, VirtualFaces.JOIN).items():
            total = sums.setdefault(face, [0] * (2 * self.genus))
            for k, value in enumerate(self.winding(edge)):
                total[k] += value if side is Side.LEFT else -value
        for face, total in sorted(sums.items()):
            if any(total):
                raise InconsistentWindings(
                    f"Windings around face {face} sum to {tuple(total)}, expected 0"
                )

    def winding(self, edge: int) -> Vector:
        """Return the winding vector of an edge.

        Args:
            edge: An edge id.

        Returns:
            A vector of length 2g.
        """
        return tuple(self.windings.get(edge, (0,) * (2 * self.genus)))


@dataclass(frozen=True)
class ConditionReport:
    """Define the outcome of the homology-level condition S check."""

    passed: bool
    classes: tuple[Vector, ...]
    notes: str = ""

    def to_dict(self) -> dict[str, Any]:
        """Return a JSON-friendly representation.

        Returns:
            A dictionary.
        """
        return {
            "condition_s": "pass" if self.passed else "fail",
            "classes": [list(vector) for vector in self.classes],
            "notes": self.notes,
        }


def homology_classes(sd: SurfaceDiagram) -> list[Vector]:
    """Return the homology class of each component: the sum of its edge windings.

    Args:
        sd: A surface diagram.

    Returns:
        One vector in Z^{2g} per component.
    """
    width = 2 * sd.genus
    classes = []
    for component in sd.base.components:
        total = [0] * width
        for edge in sd.base.component_edges(component):
            for k, value in enumerate(sd.winding(edge)):
                total[k] += value
        classes.append(tuple(total))
    return classes


def check_condition_s(sd: SurfaceDiagram) -> ConditionReport:
    """Check that the component classes generate H₁ of the surface.

    This is necessary for the surgered 4-manifold to be simply connected, not
    sufficient.

    Args:
        sd: A surface diagram.

    Returns:
        A ConditionReport.
    """
    classes = tuple(homology_classes(sd))
    width = 2 * sd.genus
    if not width:
        return ConditionReport(True, classes, "planar surface: nothing to generate")
    if not classes:
        return ConditionReport(False, classes, "no components on a closed surface")

    factors = [
        abs(int(f))
        for f in invariant_factors(Matrix([list(c) for c in classes]), domain=ZZ)
        if f
    ]
    passed = len(factors) == width and all(f == 1 for f in factors)
    notes = f"invariant factors {factors}"
    LOGGER.debug("Condition S on genus %s: %s (%s)", sd.genus, passed, notes)
    return ConditionReport(passed, classes, notes)


def _unit(width: int, index: int) -> Vector:
    """Return a standard basis vector."""
    return tuple(1 if k == index else 0 for k in range(width))


def _augmentation_pair() -> VirtualDiagram:
    """Return two 0-framed curves crossing once classically and once virtually.

    Component 0 runs over edges 0, 1 and component 1 over edges 2, 3; both start
    at the classical crossing.
    """
    return VirtualDiagram(
        2,
        (
            classical_crossing((1, 0), (3, 2), 1),
            virtual_crossing((0, 1), (2, 3)),
        ),
        (Edge(0, 0), Edge(1, 0), Edge(2, 1), Edge(3, 1)),
    )


def _add_pairs(
    d: VirtualDiagram, handles: Sequence[int], width: int
) -> tuple[DiagramBuilder, dict[int, Vector], list[tuple[int, int]]]:
    """Append one augmentation pair per handle.

    Returns the builder, the windings of the new curves and, per handle, the
    first edge of each new curve.
    """
    windings: dict[int, Vector] = {}
    curves: list[tuple[int, int]] = []
    for handle in handles:
        offset = max(d.edge_ids, default=-1) + 1
        d = disjoint_union(d, _augmentation_pair())
        meridian, longitude = offset, offset + 2
        windings[meridian] = _unit(width, 2 * handle)
        windings[longitude] = _unit(width, 2 * handle + 1)
        curves.append((meridian, longitude))
    return DiagramBuilder(d), windings, curves


def augment_virtual(d: VirtualDiagram) -> SurfaceDiagram:
    """Read each virtual crossing as a handle and add its pair of augmentation curves.

    Strand 0 of virtual crossing k passes over the meridian of handle k and strand 1
    over its longitude. The two added curves are 0-framed, cross each other once
    classically and once virtually, and cross the strand through their handle
    virtually, so their classes are the handle's basis vectors.

    Args:
        d: A diagram.

    Returns:
        A SurfaceDiagram of genus #virtual crossings.
    """
    handles = d.virtual_crossings
    width = 2 * len(handles)
    windings: dict[int, Vector] = {}
    for handle, index in enumerate(handles):
        for slot, (_, edge_out) in enumerate(d.crossings[index].strands):
            vector = list(windings.get(edge_out, (0,) * width))
            vector[2 * handle + slot] += 1
            windings[edge_out] = tuple(vector)

    builder, curve_windings, curves = _add_pairs(d, range(len(handles)), width)
    windings.update(curve_windings)
    for handle, index in enumerate(handles):
        for slot, curve in enumerate(curves[handle]):
            strand_edge = d.crossings[index].strands[slot][1]
            # Cross after the winding edge so every winding stays on its own id.
            curve_piece = builder.thread(curve, 1)
            target = builder.thread(builder.resolve(strand_edge), 1)
            builder.add_crossing(CrossingKind.VIRTUAL, (curve_piece, target))

    augmented = builder.build()
    LOGGER.debug(
        "Augmented %s virtual crossings into %s components",
        len(handles),
        augmented.n_components,
    )
    return SurfaceDiagram(augmented, len(handles), windings)


def augment_surface(sd: SurfaceDiagram) -> SurfaceDiagram:
    """Add a split augmentation pair for every handle of a surface diagram.

    Args:
        sd: A surface diagram.

    Returns:
        A SurfaceDiagram on the same surface.
    """
    width = 2 * sd.genus
    builder, curve_windings, _ = _add_pairs(sd.base, range(sd.genus), width)
    windings = dict(sd.windings)
    windings.update(curve_windings)
    return SurfaceDiagram(builder.build(), sd.genus, windings, sd.boundary_basis)


def surface_union(sd1: SurfaceDiagram, sd2: SurfaceDiagram) -> SurfaceDiagram:
    """Place two diagrams on the same surface side by side.

    Args:
        sd1: The first surface diagram.
        sd2: The second surface diagram.

    Returns:
        A SurfaceDiagram whose first components are those of sd1.

    Raises:
        InconsistentWindings: Raised when the genera differ.
    """
    if sd1.genus != sd2.genus:
        raise InconsistentWindings(
            f"Cannot combine genus {sd1.genus} with genus {sd2.genus}"
        )
    offset = max(sd1.base.edge_ids, default=-1) + 1
    windings = dict(sd1.windings)
    windings.update({edge + offset: vector for edge, vector in sd2.windings.items()})
    return SurfaceDiagram(
        disjoint_union(sd1.base, sd2.base), sd1.genus, windings, sd1.boundary_basis
    )


SURFACE_SCHEMA = PD_SCHEMA.extend(
    {
        vol.Optional(KEY_GENUS, default=0): vol.All(int, vol.Range(min=0)),
        vol.Optional(KEY_WINDINGS, default={}): {
            vol.Coerce(int): [int],
        },
        vol.Optional(KEY_BOUNDARY_BASIS, default=[]): [str],
    }
)


def parse_surface(text: str) -> SurfaceDiagram:
    """Parse a SurfaceDiagram JSON document.

    Args:
        text: The JSON text.

    Returns:
        A SurfaceDiagram.

    Raises:
        ValidationError: Raised when the document is malformed.
    """
    try:
        data = SURFACE_SCHEMA(load_json(text))
    except vol.Invalid as err:
        raise ValidationError(f"Invalid surface field {err.path}: {err.msg}") from err
    base = diagram_from_dict(
        {key: value for key, value in data.items() if key not in SURFACE_KEYS}
    )
    return SurfaceDiagram(
        base,
        data[KEY_GENUS],
        {edge: tuple(vector) for edge, vector in data[KEY_WINDINGS].items()},
        tuple(data[KEY_BOUNDARY_BASIS]),
    )


def surface_to_dict(sd: SurfaceDiagram) -> dict[str, Any]:
    """Return the SurfaceDiagram JSON representation.

    Args:
        sd: A surface diagram.

    Returns:
        A JSON-friendly dictionary.
    """
    data = sd.base.to_dict()
    data[KEY_GENUS] = sd.genus
    data[KEY_WINDINGS] = {
        str(edge): list(vector) for edge, vector in sorted(sd.windings.items())
    }
    data[KEY_BOUNDARY_BASIS] = list(sd.boundary_basis)
    return data


def serialize_surface(sd: SurfaceDiagram) -> str:
    """Serialize a surface diagram as canonical JSON.

    Args:
        sd: A surface diagram.

    Returns:
        JSON text with sorted keys and a final newline.
    """
    data = surface_to_dict(sd)
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def invariant_of_presentation(
    sd: SurfaceDiagram,
    r: int,
    strict: bool = False,
    backend: Backend = Backend.EXACT,
    tolerance: float = DEFAULT_TOLERANCE,
    term_budget: int = DEFAULT_TERM_BUDGET,
    mapper: Mapper = map,
    dump_colorings: bool = False,
) -> InvariantReport:
    """Evaluate Z of a surface presentation after checking condition S.

    Args:
        sd: A surface diagram.
        r: The level.
        strict: Whether a condition S failure is fatal.
        backend: The evaluation backend.
        tolerance: The tolerance for pole detection.
        term_budget: The largest state table tolerated.
        mapper: An order-preserving map, e.g. a process pool's.
        dump_colorings: Whether to keep every colored bracket in the report.

    Returns:
        An InvariantReport of the underlying virtual diagram.

    Raises:
        ConditionSFail: Raised in strict mode when condition S fails.
    """
    report = check_condition_s(sd)
    if not report.passed:
        if strict:
            raise ConditionSFail(f"Presentation fails condition S ({report.notes})")
        LOGGER.warning(
            "Presentation fails condition S (%s); the value may not be a "
            "manifold invariant",
            report.notes,
        )
    return z_invariant(
        sd.base, r, backend, tolerance, term_budget, mapper, dump_colorings
    )


class ConstructionMode(StrEnum):
    """Define the knot-to-link constructions."""

    SPLIT_UNKNOT = "split-unknot"
    SPLIT_FIXED = "split-fixed"
    SPLIT_SELF = "split-self"
    PIERCED_UNKNOT = "pierced-unknot"

    @classmethod
    def parse(cls, value: str) -> ConstructionMode:
        """Parse a mode name, suggesting a close match on failure.

        Args:
            value: The mode name.

        Returns:
            A ConstructionMode.

        Raises:
            ModeUnknown: Raised on an unknown mode.
        """
        try:
            return cls(value)
        except ValueError as err:
            raise ModeUnknown(
                suggest(f"Unknown mode {value!r}", value, [str(m) for m in cls])
            ) from err


def _pierce(k: VirtualDiagram) -> VirtualDiagram:
    """Thread a small unknot once around the first edge of a knot.

    The knot passes over the unknot at one crossing and under it at the next, both
    crossings positive, so the linking number is 1.
    """
    builder = DiagramBuilder(k)
    before, middle, after = builder.thread(k.edge_ids[0], 2)
    ring = builder.add_component()
    first, second = builder.add_edge(ring), builder.add_edge(ring)
    builder.add_crossing(CrossingKind.CLASSICAL, ([before, middle], [second, first]), 1)
    builder.add_crossing(CrossingKind.CLASSICAL, ([first, second], [middle, after]), 1)
    return builder.build()


def construct(
    k: VirtualDiagram,
    mode: ConstructionMode | str,
    fixed: VirtualDiagram | None = None,
) -> VirtualDiagram:
    """Build a 2-component link from a knot.

    Args:
        k: A 1-component diagram.
        mode: The construction.
        fixed: The second knot for the split-fixed mode.

    Returns:
        A 2-component VirtualDiagram whose component 0 is k.

    Raises:
        ValidationError: Raised when an input is not a knot.
    """
    if isinstance(mode, str):
        mode = ConstructionMode.parse(mode)
    if k.n_components != 1:
        raise ValidationError(f"Expected a knot, got {k.n_components} components")

    if mode is ConstructionMode.SPLIT_UNKNOT:
        return disjoint_union(k, unknot())
    if mode is ConstructionMode.SPLIT_SELF:
        return disjoint_union(k, k)
    if mode is ConstructionMode.SPLIT_FIXED:
        if fixed is None or fixed.n_components != 1:
            raise ValidationError("The split-fixed mode needs a second knot")
        return disjoint_union(k, fixed)
    return _pierce(k)
