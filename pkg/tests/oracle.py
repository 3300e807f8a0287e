"""Define brute-force reference computations."""
from __future__ import annotations

import cmath
import math
from collections import defaultdict
from functools import cache
from itertools import product
from math import prod

import networkx as nx
import sympy

from vwrt.algebra.laurent import LaurentPoly, loop_power
from vwrt.diagram.cable import cable
from vwrt.diagram.model import Crossing, VirtualDiagram
from vwrt.temperley import TLPairing, tl_basis, tl_hook, tl_identity

A = sympy.Symbol("A")
LOOP = -(A**2) - A**-2
EIGENVALUE_TOLERANCE = 1e-9


def naive_bracket(d: VirtualDiagram) -> LaurentPoly:
    """Sum A^{#A−#B}·d^{#loops} over all 2^n states, counting loops as components.

    Args:
        d: A diagram.

    Returns:
        A LaurentPoly.
    """
    classical = [d.crossings[i] for i in d.classical_crossings]
    virtual = [d.crossings[i] for i in d.virtual_crossings]
    total = LaurentPoly()
    for state in product((0, 1), repeat=len(classical)):
        graph = nx.MultiGraph()
        graph.add_nodes_from(d.edge_ids)
        for crossing in virtual:
            graph.add_edges_from(crossing.strands)
        for choice, crossing in zip(state, classical):
            graph.add_edges_from(crossing.smoothings()[choice])
        exponent = state.count(0) - state.count(1)
        loops = nx.number_connected_components(graph)
        total = total + LaurentPoly.monomial(exponent) * loop_power(loops)
    return total


def _stack(upper: TLPairing, lower: TLPairing) -> tuple[TLPairing, int]:
    """Glue the bottom of one pairing to the top of another; count closed loops."""
    n = upper.n
    graph = nx.Graph()
    graph.add_edges_from((("upper", p), ("upper", q)) for p, q in upper.pairs)
    graph.add_edges_from((("lower", p), ("lower", q)) for p, q in lower.pairs)
    graph.add_edges_from((("upper", n + k), ("lower", k)) for k in range(n))
    outer = {("upper", k): k for k in range(n)} | {
        ("lower", n + k): n + k for k in range(n)
    }
    partner = [0] * (2 * n)
    loops = 0
    for nodes in nx.connected_components(graph):
        ends = [outer[node] for node in nodes if node in outer]
        if not ends:
            loops += 1
            continue
        p, q = ends
        partner[p], partner[q] = q, p
    return TLPairing(n, tuple(partner)), loops


def _trace_loops(pairing: TLPairing) -> int:
    """Count the loops of the trace closure of a pairing."""
    n = pairing.n
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(2 * n))
    graph.add_edges_from(pairing.pairs)
    graph.add_edges_from((k, n + k) for k in range(n))
    return nx.number_connected_components(graph)


@cache
def naive_projector(n: int) -> dict[TLPairing, sympy.Expr]:
    """Solve for the Jones–Wenzl projector in the Catalan basis.

    The projector is the only element with identity coefficient 1 that every hook
    annihilates from above.

    Args:
        n: The strand count.

    Returns:
        A map of basis pairing to its coefficient, a rational function of A.
    """
    identity = tl_identity(n)
    basis = tl_basis(n)
    unknowns = {
        pairing: sympy.Symbol(f"c{k}")
        for k, pairing in enumerate(basis)
        if pairing != identity
    }
    coefficients = {
        pairing: unknowns.get(pairing, sympy.Integer(1)) for pairing in basis
    }
    if not unknowns:
        return coefficients

    equations = []
    for i in range(1, n):
        image: defaultdict[TLPairing, sympy.Expr] = defaultdict(
            lambda: sympy.Integer(0)
        )
        for pairing, coefficient in coefficients.items():
            stacked, loops = _stack(tl_hook(n, i), pairing)
            image[stacked] += coefficient * LOOP**loops
        equations.extend(image.values())

    solution = sympy.solve(equations, list(unknowns.values()), dict=True)[0]
    return {
        pairing: sympy.cancel(coefficient.subs(solution))
        for pairing, coefficient in coefficients.items()
    }


@cache
def _projector_values(n: int, r: int) -> tuple[tuple[TLPairing, complex], ...]:
    """Evaluate projector coefficients at A = e^{πi/2r}."""
    root = sympy.exp(sympy.I * sympy.pi / (2 * r))
    return tuple(
        (pairing, complex(sympy.N(coefficient.subs(A, root), 30)))
        for pairing, coefficient in naive_projector(n).items()
        if coefficient != 0
    )


def naive_quantum_dimension(n: int, r: int) -> complex:
    """Return the trace closure of the n-th projector at level r.

    Args:
        n: The strand count.
        r: The level.

    Returns:
        A complex number.
    """
    loop = _loop_value(r)
    return sum(
        (
            coefficient * loop ** _trace_loops(pairing)
            for pairing, coefficient in _projector_values(n, r)
        ),
        0j,
    )


def _loop_value(r: int) -> complex:
    """Return d = −A²−A⁻² at A = e^{πi/2r}."""
    root = cmath.exp(1j * math.pi / (2 * r))
    return -(root**2) - root**-2


def naive_colored_bracket(
    d: VirtualDiagram, colors: tuple[int, ...], r: int
) -> complex:
    """Expand every projector of a cabled diagram and sum all smoothing states.

    Args:
        d: A diagram.
        colors: One color per component.
        r: The level.

    Returns:
        A complex number.
    """
    cd = cable(d, colors)
    base = cd.base
    root = cmath.exp(1j * math.pi / (2 * r))
    loop = _loop_value(r)

    entering: dict[int, object] = {}
    for box in cd.boxes:
        for edge in box.edges:
            entering[edge] = edge if base.is_free_loop(edge) else ("cut", edge)

    def renamed(crossing: Crossing) -> Crossing:
        """Move incoming ends of cut edges onto their head sides."""
        return Crossing(
            crossing.kind,
            tuple(
                (entering.get(edge_in, edge_in), edge_out)
                for edge_in, edge_out in crossing.strands
            ),
            crossing.sign,
        )

    crossings = [renamed(crossing) for crossing in base.crossings]
    classical = [c for c in crossings if c.is_classical]
    skeleton = nx.MultiGraph()
    skeleton.add_nodes_from(base.edge_ids)
    skeleton.add_nodes_from(set(entering.values()))
    for crossing in crossings:
        if not crossing.is_classical:
            skeleton.add_edges_from(crossing.strands)

    total = 0j
    for choice in product(*(_projector_values(box.width, r) for box in cd.boxes)):
        spliced = skeleton.copy()
        for box, (pairing, _) in zip(cd.boxes, choice):
            ends = list(box.edges) + [entering[edge] for edge in box.edges]
            spliced.add_edges_from((ends[p], ends[q]) for p, q in pairing.pairs)
        weight = prod((coefficient for _, coefficient in choice), start=1 + 0j)

        states = 0j
        for state in product((0, 1), repeat=len(classical)):
            graph = spliced.copy()
            for side, crossing in zip(state, classical):
                graph.add_edges_from(crossing.smoothings()[side])
            exponent = state.count(0) - state.count(1)
            states += root**exponent * loop ** nx.number_connected_components(graph)
        total += weight * states
    return total


def naive_linking_matrix(d: VirtualDiagram) -> sympy.Matrix:
    """Count crossing signs by component pair: writhes and half linking sums.

    Args:
        d: A diagram.

    Returns:
        A symmetric sympy Matrix.
    """
    matrix = sympy.zeros(d.n_components, d.n_components)
    for crossing in d.crossings:
        if not crossing.is_classical:
            continue
        i, j = (d.edge_component[strand[0]] for strand in crossing.strands)
        if i == j:
            matrix[i, i] += crossing.sign
        else:
            matrix[i, j] += sympy.Rational(crossing.sign, 2)
            matrix[j, i] += sympy.Rational(crossing.sign, 2)
    return matrix


def naive_signature(d: VirtualDiagram) -> int:
    """Return b₊ − b₋ of the linking matrix from its eigenvalues.

    Args:
        d: A diagram.

    Returns:
        An integer.
    """
    if not d.n_components:
        return 0
    total = 0
    for value, multiplicity in naive_linking_matrix(d).eigenvals().items():
        real = float(sympy.re(sympy.N(value)))
        if abs(real) > EIGENVALUE_TOLERANCE:
            total += multiplicity if real > 0 else -multiplicity
    return total


def naive_z(d: VirtualDiagram, r: int) -> complex:
    """Return Z at level r by summing every coloring of the naive colored bracket.

    Args:
        d: A diagram.
        r: The level.

    Returns:
        A complex number.
    """
    omega = sum(
        (
            prod((naive_quantum_dimension(a, r) for a in colors), start=1 + 0j)
            * naive_colored_bracket(d, colors, r)
            for colors in product(range(r - 1), repeat=d.n_components)
        ),
        0j,
    )
    mu = math.sqrt(2 / r) * math.sin(math.pi / r)
    alpha = (-1j) ** (r - 2) * cmath.exp(1j * math.pi * 3 * (r - 2) / (4 * r))
    return omega * mu ** (d.n_components + 1) * alpha ** (-naive_signature(d))
