"""Define the normalized WRT invariant Z_K(r) and its invariance harness."""
from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from itertools import product
from math import prod
from typing import Any

import voluptuous as vol

from vwrt.algebra.laurent import LaurentPoly
from vwrt.algebra.level import MIN_LEVEL, LevelParams
from vwrt.bracket import Backend, evaluation_backend
from vwrt.const import DEFAULT_TERM_BUDGET, DEFAULT_TOLERANCE, LOGGER
from vwrt.diagram.cable import cable
from vwrt.diagram.codec import ParseError, diagram_from_dict, load_json
from vwrt.diagram.model import VirtualDiagram, linking_number, writhe
from vwrt.diagram.moves import (
    Direction,
    MoveKind,
    MoveSpec,
    apply_move,
    enumerate_move_sites,
)
from vwrt.helpers.typing import Coloring, Mapper

LinkingMatrix = tuple[tuple[Fraction, ...], ...]

KEY_DIAGRAM = "diagram"
KEY_LEVEL = "r"
KEY_MOVES = "moves"

MOVE_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): str,
        vol.Optional("direction"): vol.In([str(d) for d in Direction]),
        vol.Optional("site"): [int],
        vol.Optional("sign"): vol.In([1, -1]),
        vol.Optional("flip"): bool,
        vol.Optional("routing"): [int],
    }
)

REPLAY_SCHEMA = vol.Schema(
    {
        vol.Required(KEY_DIAGRAM): dict,
        vol.Required(KEY_LEVEL): vol.All(int, vol.Range(min=MIN_LEVEL)),
        vol.Required(KEY_MOVES): [MOVE_SCHEMA],
    },
    extra=vol.ALLOW_EXTRA,
)


@dataclass(frozen=True)
class SignatureData:
    """Define the eigenvalue sign counts of a linking matrix."""

    b_plus: int
    b_minus: int

    @property
    def n_of_k(self) -> int:
        """Return n(K) = b₊ − b₋.

        Returns:
            An integer.
        """
        return self.b_plus - self.b_minus

    @property
    def rank(self) -> int:
        """Return the rank b₊ + b₋.

        Returns:
            An integer.
        """
        return self.b_plus + self.b_minus

    def to_dict(self) -> dict[str, int]:
        """Return a JSON-friendly representation.

        Returns:
            A dictionary.
        """
        return {
            "b_plus": self.b_plus,
            "b_minus": self.b_minus,
            "n_of_k": self.n_of_k,
            "rank": self.rank,
        }


def _complex_pair(value: complex) -> list[float]:
    """Serialize a complex number as [re, im]."""
    return [value.real, value.imag]


def _fraction_text(value: Fraction) -> str:
    """Serialize a rational as "p/q" (or "p" for integers)."""
    return str(value)


@dataclass(frozen=True)
class InvariantReport:
    """Define the full result of evaluating Z_K(r)."""

    r: int
    n_components: int
    linking: LinkingMatrix
    signature: SignatureData
    omega: complex
    mu: float
    alpha: complex
    z: complex  # pylint: disable=invalid-name
    colorings: tuple[tuple[Coloring, complex], ...] | None = None

    def to_dict(self) -> dict[str, Any]:
        """Return a JSON-friendly representation.

        Returns:
            A dictionary.
        """
        data: dict[str, Any] = {
            "r": self.r,
            "components": self.n_components,
            "linking_matrix": [
                [_fraction_text(entry) for entry in row] for row in self.linking
            ],
            "signature": self.signature.to_dict(),
            "omega": _complex_pair(self.omega),
            "mu": self.mu,
            "alpha": _complex_pair(self.alpha),
            "z": _complex_pair(self.z),
        }
        if self.colorings is not None:
            data["colorings"] = [
                {"colors": list(colors), "value": _complex_pair(value)}
                for colors, value in self.colorings
            ]
        return data


def linking_matrix(d: VirtualDiagram) -> LinkingMatrix:
    """Return N with writhes on the diagonal and linking numbers elsewhere.

    Args:
        d: A diagram.

    Returns:
        A symmetric matrix of exact rationals.
    """
    return tuple(
        tuple(
            Fraction(writhe(d, i)) if i == j else linking_number(d, i, j)
            for j in d.components
        )
        for i in d.components
    )


def apply_slide_congruence(
    matrix: LinkingMatrix, sliding: int, fixed: int, sign: int = 1
) -> LinkingMatrix:
    """Return P·N·Pᵀ for the handle slide of component `sliding` over `fixed`.

    Args:
        matrix: The linking matrix before the slide.
        sliding: The component that moves.
        fixed: The component slid over.
        sign: +1 for the addition slide, −1 for the subtraction slide.

    Returns:
        The linking matrix after the slide.
    """
    rows = [list(row) for row in matrix]
    rows[sliding] = [a + sign * b for a, b in zip(rows[sliding], rows[fixed])]
    for row in rows:
        row[sliding] = row[sliding] + sign * row[fixed]
    return tuple(tuple(row) for row in rows)


def signature(matrix: Sequence[Sequence[Fraction | int]]) -> SignatureData:
    """Count positive and negative eigenvalues by symmetric congruence reduction.

    A nonzero diagonal pivot is split off by a Schur complement; when the diagonal
    vanishes, a nonzero off-diagonal entry spans a hyperbolic block contributing one
    positive and one negative eigenvalue.

    Args:
        matrix: A symmetric rational matrix.

    Returns:
        A SignatureData.

    Raises:
        ValueError: Raised on a non-symmetric matrix.
    """
    m = [[Fraction(entry) for entry in row] for row in matrix]
    size = len(m)
    for i, j in product(range(size), repeat=2):
        if m[i][j] != m[j][i]:
            raise ValueError(f"Matrix is not symmetric at ({i}, {j})")

    plus = minus = 0
    while m:
        size = len(m)
        pivot = next((k for k in range(size) if m[k][k]), None)
        if pivot is not None:
            value = m[pivot][pivot]
            if value > 0:
                plus += 1
            else:
                minus += 1
            rest = [k for k in range(size) if k != pivot]
            m = [
                [m[a][b] - m[a][pivot] * m[pivot][b] / value for b in rest]
                for a in rest
            ]
            continue

        block = next(
            ((a, b) for a in range(size) for b in range(a + 1, size) if m[a][b]),
            None,
        )
        if block is None:
            break
        a, b = block
        plus += 1
        minus += 1
        entry = m[a][b]
        rest = [k for k in range(size) if k not in block]
        m = [
            [m[x][y] - (m[x][a] * m[b][y] + m[x][b] * m[a][y]) / entry for y in rest]
            for x in rest
        ]
    return SignatureData(plus, minus)


def twist_factor(a: int, sign: int) -> LaurentPoly:
    """Return the eigenvalue (−1)^a A^{±(a²+2a)} of a ±1 kink on the projector T_a.

    Args:
        a: The color.
        sign: The kink sign.

    Returns:
        A monomial LaurentPoly.
    """
    return LaurentPoly.monomial(sign * (a * a + 2 * a), -1 if a % 2 else 1)


def _alpha_power(alpha: complex, exponent: int) -> complex:
    """Return α^exponent by repeated multiplication."""
    base = alpha if exponent >= 0 else 1 / alpha
    return prod((base for _ in range(abs(exponent))), start=1 + 0j)


def _evaluate_coloring(
    task: tuple[VirtualDiagram, Coloring, int, Backend, float, int]
) -> complex:
    """Evaluate ⟨K^ā⟩ for one coloring."""
    d, colors, r, backend, tolerance, term_budget = task
    params = LevelParams(r, tolerance)
    return evaluation_backend(cable(d, colors), params, backend, term_budget)


def coloring_terms(
    d: VirtualDiagram,
    r: int,
    backend: Backend = Backend.EXACT,
    tolerance: float = DEFAULT_TOLERANCE,
    term_budget: int = DEFAULT_TERM_BUDGET,
    mapper: Mapper = map,
) -> list[tuple[Coloring, complex]]:
    """Evaluate ⟨K^ā⟩ for every ā ∈ {0, …, r−2}^n in lexicographic order.

    Args:
        d: A diagram.
        r: The level.
        backend: The evaluation backend.
        tolerance: The tolerance for pole detection.
        term_budget: The largest state table tolerated.
        mapper: An order-preserving map, e.g. a process pool's.

    Returns:
        A list of (coloring, value) pairs.
    """
    params = LevelParams(r, tolerance)
    colorings = list(product(range(params.max_color + 1), repeat=d.n_components))
    LOGGER.debug(
        "Evaluating %s colorings of a %s-component diagram at r=%s",
        len(colorings),
        d.n_components,
        r,
    )
    tasks = [(d, colors, r, backend, tolerance, term_budget) for colors in colorings]
    return list(zip(colorings, mapper(_evaluate_coloring, tasks)))


def omega_bracket(
    d: VirtualDiagram,
    r: int,
    backend: Backend = Backend.EXACT,
    tolerance: float = DEFAULT_TOLERANCE,
    term_budget: int = DEFAULT_TERM_BUDGET,
    mapper: Mapper = map,
) -> complex:
    """Return ⟨K^ω⟩ = Σ_ā Δ_{a_1}⋯Δ_{a_n}⟨K^ā⟩.

    Args:
        d: A diagram.
        r: The level.
        backend: The evaluation backend.
        tolerance: The tolerance for pole detection.
        term_budget: The largest state table tolerated.
        mapper: An order-preserving map, e.g. a process pool's.

    Returns:
        A complex number; 1 for the empty diagram.
    """
    terms = coloring_terms(d, r, backend, tolerance, term_budget, mapper)
    return _omega_sum(terms, LevelParams(r, tolerance))


def _omega_sum(
    terms: Sequence[tuple[Coloring, complex]], params: LevelParams
) -> complex:
    """Weight coloring values by their Δ products and add them up."""
    return sum(
        (
            prod((params.delta(a) for a in colors), start=1 + 0j) * value
            for colors, value in terms
        ),
        0j,
    )


def z_invariant(
    d: VirtualDiagram,
    r: int,
    backend: Backend = Backend.EXACT,
    tolerance: float = DEFAULT_TOLERANCE,
    term_budget: int = DEFAULT_TERM_BUDGET,
    mapper: Mapper = map,
    dump_colorings: bool = False,
) -> InvariantReport:
    """Return Z_K(r) = ⟨K^ω⟩·μ^{|K|+1}·α^{−n(K)} with its ingredients.

    Args:
        d: A diagram.
        r: The level.
        backend: The evaluation backend.
        tolerance: The tolerance for pole detection.
        term_budget: The largest state table tolerated.
        mapper: An order-preserving map, e.g. a process pool's.
        dump_colorings: Whether to keep every ⟨K^ā⟩ in the report.

    Returns:
        An InvariantReport.
    """
    params = LevelParams(r, tolerance)
    matrix = linking_matrix(d)
    sig = signature(matrix)
    terms = coloring_terms(d, r, backend, tolerance, term_budget, mapper)
    omega = _omega_sum(terms, params)
    normalization = params.mu ** (d.n_components + 1)
    z = omega * normalization * _alpha_power(params.alpha, -sig.n_of_k)
    LOGGER.debug("Z(r=%s) = %s for %s components", r, z, d.n_components)
    return InvariantReport(
        r=r,
        n_components=d.n_components,
        linking=matrix,
        signature=sig,
        omega=omega,
        mu=params.mu,
        alpha=params.alpha,
        z=z,
        colorings=tuple(terms) if dump_colorings else None,
    )


class StepStatus(StrEnum):
    """Define the outcome of one move in an invariance check."""

    INVARIANT = "invariant"
    EXPECTED_VARIANT = "expected-variant"
    VIOLATION = "violation"


@dataclass(frozen=True)
class StepResult:
    """Define the change of Z across one move."""

    move: MoveSpec
    z_before: complex
    z_after: complex
    status: StepStatus

    @property
    def deviation(self) -> float:
        """Return |Z_after − Z_before|.

        Returns:
            A nonnegative float.
        """
        return abs(self.z_after - self.z_before)

    def to_dict(self) -> dict[str, Any]:
        """Return a JSON-friendly representation.

        Returns:
            A dictionary.
        """
        return {
            "move": self.move.to_dict(),
            "z_before": _complex_pair(self.z_before),
            "z_after": _complex_pair(self.z_after),
            "deviation": self.deviation,
            "status": str(self.status),
        }


@dataclass
class InvarianceReport:
    """Define the result of running a move sequence."""

    diagram: VirtualDiagram
    r: int
    steps: list[StepResult] = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        """Return the largest deviation among framed moves.

        Returns:
            A nonnegative float.
        """
        return max(
            (
                step.deviation
                for step in self.steps
                if step.status is not StepStatus.EXPECTED_VARIANT
            ),
            default=0.0,
        )

    @property
    def ok(self) -> bool:  # pylint: disable=invalid-name
        """Return whether no framed move changed Z.

        Returns:
            Whether the property is true.
        """
        return all(step.status is not StepStatus.VIOLATION for step in self.steps)

    def replay_script(self) -> dict[str, Any]:
        """Return a script that reproduces this run with `verify --replay`.

        Returns:
            A JSON-friendly dictionary.
        """
        return {
            KEY_DIAGRAM: self.diagram.to_dict(),
            KEY_LEVEL: self.r,
            KEY_MOVES: [step.move.to_dict() for step in self.steps],
        }

    def to_dict(self) -> dict[str, Any]:
        """Return a JSON-friendly representation.

        Returns:
            A dictionary.
        """
        return {
            "r": self.r,
            "ok": self.ok,
            "max_deviation": self.max_deviation,
            "steps": [step.to_dict() for step in self.steps],
        }


def verify_invariance(
    d: VirtualDiagram,
    r: int,
    moves: Sequence[MoveSpec],
    backend: Backend = Backend.EXACT,
    tolerance: float = DEFAULT_TOLERANCE,
    term_budget: int = DEFAULT_TERM_BUDGET,
    mapper: Mapper = map,
) -> InvarianceReport:
    """Apply moves in sequence and compare Z before and after each one.

    Args:
        d: The starting diagram.
        r: The level.
        moves: The moves to apply, each at a site of the current diagram.
        backend: The evaluation backend.
        tolerance: The largest deviation a framed move may cause.
        term_budget: The largest state table tolerated.
        mapper: An order-preserving map, e.g. a process pool's.

    Returns:
        An InvarianceReport.
    """
    report = InvarianceReport(d, r)
    current = d
    z_current = z_invariant(d, r, backend, tolerance, term_budget, mapper).z
    for move in moves:
        following = apply_move(current, move)
        z_following = z_invariant(
            following, r, backend, tolerance, term_budget, mapper
        ).z
        if not move.kind.is_framed:
            status = StepStatus.EXPECTED_VARIANT
            LOGGER.warning(
                "Move %s changes the framing: Z %s -> %s",
                move.kind,
                z_current,
                z_following,
            )
        elif abs(z_following - z_current) <= tolerance:
            status = StepStatus.INVARIANT
        else:
            status = StepStatus.VIOLATION
        report.steps.append(StepResult(move, z_current, z_following, status))
        current, z_current = following, z_following
    return report


def random_move_sequence(
    d: VirtualDiagram,
    kinds: Sequence[MoveKind],
    length: int,
    rng: random.Random,
) -> list[MoveSpec]:
    """Draw an applicable random move sequence.

    Each step picks a kind uniformly among those with a site on the current diagram,
    then a site uniformly among that kind's sites.

    Args:
        d: The starting diagram.
        kinds: The move kinds to draw from.
        length: The number of moves.
        rng: The random source.

    Returns:
        A list of MoveSpec objects; shorter than `length` when no move applies.
    """
    moves: list[MoveSpec] = []
    current = d
    for _ in range(length):
        candidates = {
            kind: enumerate_move_sites(current, kind, rng=rng) for kind in kinds
        }
        available = [kind for kind in kinds if candidates[kind]]
        if not available:
            break
        move = rng.choice(candidates[rng.choice(available)])
        moves.append(move)
        current = apply_move(current, move)
    return moves


def parse_replay_script(text: str) -> tuple[VirtualDiagram, int, list[MoveSpec]]:
    """Parse a move script written by `InvarianceReport.replay_script`.

    Args:
        text: The JSON text.

    Returns:
        The starting diagram, the level and the moves.

    Raises:
        ParseError: Raised on a malformed script.
    """
    try:
        data = REPLAY_SCHEMA(load_json(text))
    except vol.Invalid as err:
        raise ParseError(f"Invalid replay field {err.path}: {err.msg}") from err

    try:
        moves = [MoveSpec.from_dict(move) for move in data[KEY_MOVES]]
    except ValueError as err:
        raise ParseError(f"Invalid replay move: {err}") from err

    return diagram_from_dict(data[KEY_DIAGRAM]), data[KEY_LEVEL], moves
