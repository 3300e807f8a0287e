"""Test surface presentations and knot-to-link constructions."""
from __future__ import annotations

import random
from unittest.mock import Mock

import pytest

from tests.common import TEST_HOPF_Z, TEST_LEVEL, load_fixture
from tests.corpus import build_corpus
from vwrt.algebra.level import is_close
from vwrt.diagram.codec import parse_gauss
from vwrt.diagram.isomorphism import is_isomorphic
from vwrt.diagram.model import (
    EMPTY_DIAGRAM,
    ValidationError,
    VirtualDiagram,
    linking_number,
    unknot,
)
from vwrt.diagram.moves import MoveKind, apply_move, enumerate_move_sites
from vwrt.surface import (
    ConditionSFail,
    ConstructionMode,
    InconsistentWindings,
    ModeUnknown,
    SurfaceDiagram,
    augment_surface,
    augment_virtual,
    check_condition_s,
    construct,
    default_basis,
    homology_classes,
    invariant_of_presentation,
    parse_surface,
    serialize_surface,
    surface_union,
)
from vwrt.wrt import z_invariant


def _winding_loop(*vector: int) -> SurfaceDiagram:
    """Return a loop through a virtual kink whose first edge winds along a vector."""
    return SurfaceDiagram(parse_gauss("VV"), len(vector) // 2, {0: tuple(vector)})


@pytest.fixture(name="torus")
def torus_fixture() -> SurfaceDiagram:
    """Define a fixture to return a loop winding once around a torus.

    Returns:
        A SurfaceDiagram.
    """
    return parse_surface(load_fixture("torus_surface.json"))


def test_parse_surface(torus: SurfaceDiagram) -> None:
    """Test reading a surface diagram.

    Args:
        torus: A loop winding once around a torus.
    """
    assert torus.base == parse_gauss("VV")
    assert torus.genus == 1
    assert torus.windings == {0: (1, 0)}
    assert torus.boundary_basis == ("m1", "l1")
    assert torus.winding(0) == (1, 0)


def test_serialize_surface(torus: SurfaceDiagram) -> None:
    """Test writing a surface diagram.

    Args:
        torus: A loop winding once around a torus.
    """
    text = serialize_surface(torus)
    assert parse_surface(text) == torus
    assert '"windings": {\n    "0": [\n      1,\n      0\n    ]\n  }' in text


def test_parse_surface_errors() -> None:
    """Test malformed surface documents."""
    with pytest.raises(ValidationError):
        _ = parse_surface(
            '{"components": 1, "crossings": [], '
            '"edges": [{"id": 0, "component": 0}], "genus": -1}'
        )
    with pytest.raises(InconsistentWindings):
        _ = parse_surface(
            '{"components": 1, "crossings": [], '
            '"edges": [{"id": 0, "component": 0}], "genus": 1, "windings": {"0": [1]}}'
        )


@pytest.mark.parametrize(
    "genus,windings",
    [(-1, {}), (1, {0: (1,)}), (1, {5: (1, 0)})],
)
def test_inconsistent_windings(genus: int, windings: dict[int, tuple]) -> None:
    """Test winding data that does not fit the diagram.

    Args:
        genus: The genus.
        windings: The winding vectors.
    """
    with pytest.raises(InconsistentWindings):
        _ = SurfaceDiagram(unknot(), genus, windings)


def test_face_sums(hopf: VirtualDiagram, virtual_hopf: VirtualDiagram) -> None:
    """Test that windings around every face must cancel.

    Args:
        hopf: The Hopf link.
        virtual_hopf: The virtual Hopf link.
    """
    with pytest.raises(ValidationError) as err:
        _ = SurfaceDiagram(unknot(), 1, {0: (1, 0)})
    assert "expected 0" in str(err.value)

    with pytest.raises(InconsistentWindings):
        _ = SurfaceDiagram(hopf, 1, {0: (0, 1)})

    potentials = {0: (1, 0), 1: (-1, 0), 2: (1, 0), 3: (-1, 0)}
    assert SurfaceDiagram(hopf, 1, potentials).winding(3) == (-1, 0)
    with pytest.raises(InconsistentWindings):
        _ = SurfaceDiagram(hopf, 1, {0: (1, 0), 1: (-1, 0)})
    assert SurfaceDiagram(virtual_hopf, 1, {0: (3, -2)}).winding(0) == (3, -2)
    assert _winding_loop(0, 0, 1, 1).genus == 2

    with pytest.raises(InconsistentWindings):
        _ = parse_surface(
            '{"components": 1, "crossings": [], '
            '"edges": [{"id": 0, "component": 0}], "genus": 1, '
            '"windings": {"0": [0, 1]}}'
        )


def test_default_basis() -> None:
    """Test the labels of a symplectic basis."""
    assert default_basis(0) == ()
    assert default_basis(2) == ("m1", "l1", "m2", "l2")
    assert SurfaceDiagram(unknot(), 2).boundary_basis == ("m1", "l1", "m2", "l2")


def test_condition_s(torus: SurfaceDiagram) -> None:
    """Test the homology check on small presentations.

    Args:
        torus: A loop winding once around a torus.
    """
    assert check_condition_s(SurfaceDiagram(unknot())).passed
    assert not check_condition_s(SurfaceDiagram(EMPTY_DIAGRAM, 1)).passed

    report = check_condition_s(torus)
    assert not report.passed
    assert report.classes == ((1, 0),)
    assert report.to_dict()["condition_s"] == "fail"

    doubled = _winding_loop(2, 0)
    assert not check_condition_s(surface_union(doubled, torus)).passed


def test_augment_surface(torus: SurfaceDiagram) -> None:
    """Test that split augmentation curves repair condition S.

    Args:
        torus: A loop winding once around a torus.
    """
    augmented = augment_surface(torus)
    assert augmented.base.n_components == 3
    assert homology_classes(augmented) == [(1, 0), (1, 0), (0, 1)]
    assert check_condition_s(augmented).passed


def test_augment_virtual(virtual_hopf: VirtualDiagram) -> None:
    """Test reading virtual crossings as handles.

    Args:
        virtual_hopf: The virtual Hopf link.
    """
    augmented = augment_virtual(virtual_hopf)
    assert augmented.genus == 1
    assert augmented.base.n_components == 4
    assert len(augmented.base.crossings) == 6
    assert len(augmented.base.virtual_crossings) == 4
    assert homology_classes(augmented)[2:] == [(1, 0), (0, 1)]
    assert check_condition_s(augmented).passed

    classical = augment_virtual(unknot())
    assert classical.genus == 0
    assert classical.base == unknot()


def test_surface_union(torus: SurfaceDiagram) -> None:
    """Test placing two presentations on one surface.

    Args:
        torus: A loop winding once around a torus.
    """
    union = surface_union(torus, _winding_loop(0, 1))
    assert union.base.n_components == 2
    assert union.windings == {0: (1, 0), 2: (0, 1)}
    assert check_condition_s(union).passed

    with pytest.raises(InconsistentWindings):
        _ = surface_union(torus, SurfaceDiagram(unknot()))


def test_invariant_of_presentation(caplog: Mock, torus: SurfaceDiagram) -> None:
    """Test evaluating a presentation that fails condition S.

    Args:
        caplog: A mock logging utility.
        torus: A loop winding once around a torus.
    """
    report = invariant_of_presentation(torus, TEST_LEVEL)
    assert is_close(report.z, 1)
    assert any("fails condition S" in m for m in caplog.messages)

    with pytest.raises(ConditionSFail):
        _ = invariant_of_presentation(torus, TEST_LEVEL, strict=True)


def test_construct(hopf: VirtualDiagram, trefoil: VirtualDiagram) -> None:
    """Test building 2-component links from knots.

    Args:
        hopf: The Hopf link.
        trefoil: The right-handed trefoil.
    """
    split = construct(trefoil, ConstructionMode.SPLIT_UNKNOT)
    assert split.n_components == 2
    assert len(split.crossings) == 3

    doubled = construct(trefoil, "split-self")
    assert len(doubled.crossings) == 6
    assert linking_number(doubled, 0, 1) == 0

    fixed = construct(unknot(), ConstructionMode.SPLIT_FIXED, fixed=trefoil)
    assert fixed.component_edges(1) == [1, 2, 3, 4, 5, 6]

    pierced = construct(unknot(), ConstructionMode.PIERCED_UNKNOT)
    assert is_isomorphic(pierced, hopf)
    assert linking_number(pierced, 0, 1) == 1

    pierced_trefoil = construct(trefoil, ConstructionMode.PIERCED_UNKNOT)
    assert len(pierced_trefoil.crossings) == 5
    assert linking_number(pierced_trefoil, 0, 1) == 1


def test_construct_errors(hopf: VirtualDiagram) -> None:
    """Test invalid constructions.

    Args:
        hopf: The Hopf link.
    """
    with pytest.raises(ValidationError):
        _ = construct(hopf, ConstructionMode.SPLIT_UNKNOT)
    with pytest.raises(ValidationError):
        _ = construct(unknot(), ConstructionMode.SPLIT_FIXED)
    with pytest.raises(ValidationError):
        _ = construct(unknot(), ConstructionMode.SPLIT_FIXED, fixed=hopf)
    with pytest.raises(ModeUnknown) as err:
        _ = construct(unknot(), "split-unkont")
    assert "did you mean 'split-unknot'?" in str(err.value)


def test_pierced_unknot_invariant() -> None:
    """Test that the pierced unknot evaluates like the Hopf link."""
    pierced = construct(unknot(), ConstructionMode.PIERCED_UNKNOT)
    report = invariant_of_presentation(SurfaceDiagram(pierced), TEST_LEVEL)
    assert is_close(report.z, TEST_HOPF_Z)


def test_augmented_corpus(corpus: list[VirtualDiagram]) -> None:
    """Test condition S and slide invariance on augmented corpus knots.

    Args:
        corpus: The seeded corpus of small virtual diagrams.
    """
    knots = [
        d
        for d in [parse_gauss("O1+O2+U1+U2+"), *corpus]
        if d.n_components == 1
        and 1 <= len(d.virtual_crossings) <= 2
        and len(d.classical_crossings) <= 3
    ][:5]
    assert knots
    rng = random.Random(11)
    for knot in knots:
        augmented = augment_virtual(knot)
        assert check_condition_s(augmented).passed
        before = z_invariant(augmented.base, 3).z
        sites = enumerate_move_sites(augmented.base, MoveKind.O2)
        for move in rng.sample(sites, min(3, len(sites))):
            after = z_invariant(apply_move(augmented.base, move), 3).z
            assert is_close(after, before), move


def test_condition_s_on_larger_corpus() -> None:
    """Test that augmentation repairs condition S on a larger seeded corpus."""
    for diagram in build_corpus(100, seed=21):
        assert check_condition_s(augment_virtual(diagram)).passed
