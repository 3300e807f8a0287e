"""Define combinatorial isomorphism of diagrams via labelled graphs."""
from __future__ import annotations

import networkx as nx
from networkx.algorithms.isomorphism import (
    categorical_multiedge_match,
    categorical_node_match,
)

from vwrt.diagram.model import VirtualDiagram

LABEL = "label"


def diagram_graph(d: VirtualDiagram) -> nx.MultiDiGraph:
    """Build a labelled graph whose isomorphisms are diagram isomorphisms.

    Each crossing is a hub node joined to one node per strand; each edge of the
    diagram becomes a graph edge from the strand it leaves to the strand it enters,
    labelled by its component. Component ids are preserved; edge and crossing ids
    are not.

    Args:
        d: A diagram.

    Returns:
        A networkx MultiDiGraph.
    """
    graph = nx.MultiDiGraph()
    for index, crossing in enumerate(d.crossings):
        hub = ("crossing", index)
        graph.add_node(hub, label=(str(crossing.kind), crossing.sign))
        for slot in range(2):
            # Virtual strands are interchangeable.
            role = slot if crossing.is_classical else "virtual"
            graph.add_node(("strand", index, slot), label=("strand", role))
            graph.add_edge(hub, ("strand", index, slot), label="incidence")

    for edge in d.edges:
        tail, head = d.tail(edge.id), d.head(edge.id)
        if tail is None or head is None:
            graph.add_node(("loop", edge.id), label=("loop", edge.component))
            continue
        graph.add_edge(
            ("strand", *tail), ("strand", *head), label=("edge", edge.component)
        )
    return graph


def is_isomorphic(d1: VirtualDiagram, d2: VirtualDiagram) -> bool:
    """Return whether two diagrams agree up to relabelling edges and crossings.

    Args:
        d1: The first diagram.
        d2: The second diagram.

    Returns:
        Whether the diagrams are isomorphic.
    """
    if (
        d1.n_components != d2.n_components
        or len(d1.crossings) != len(d2.crossings)
        or len(d1.edges) != len(d2.edges)
    ):
        return False
    return bool(
        nx.is_isomorphic(
            diagram_graph(d1),
            diagram_graph(d2),
            node_match=categorical_node_match(LABEL, None),
            edge_match=categorical_multiedge_match(LABEL, None),
        )
    )
