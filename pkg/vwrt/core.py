"""Define the core application objects."""
from __future__ import annotations

import logging
import random
import sys
from collections.abc import Callable
from functools import partial
from pathlib import Path
from typing import Any, cast

import colorlog

from vwrt.algebra.laurent import delta_poly
from vwrt.algebra.level import InvalidLevel, LevelParams
from vwrt.algebra.rational import RationalFunc
from vwrt.bracket import ComplexityGuardrail, UnsupportedMove, estimate_terms
from vwrt.config import Command, ConfigError, RunConfig
from vwrt.const import (
    EXIT_COMPLEXITY,
    EXIT_CONDITION_S,
    EXIT_FAILURE,
    EXIT_INVALID_INPUT,
    EXIT_INVARIANCE_VIOLATION,
    EXIT_OK,
    LOGGER,
    __version__,
)
from vwrt.diagram.cable import ColorLengthMismatch, cable
from vwrt.diagram.codec import (
    ParseError,
    diagram_from_dict,
    load_json,
    parse_gauss,
    serialize,
)
from vwrt.diagram.model import (
    UnknownComponent,
    ValidationError,
    VirtualDiagram,
    kinked_unknot,
    linking_number,
    unknot,
)
from vwrt.diagram.moves import IllegalSlide, SiteMismatch
from vwrt.errors import VwrtError
from vwrt.helpers.output import (
    OutputFormat,
    dump_document,
    dump_record,
    open_output,
    render_records,
    write_text,
)
from vwrt.runtime import Runtime
from vwrt.surface import (
    KEY_GENUS,
    ConditionSFail,
    ConstructionMode,
    InconsistentWindings,
    ModeUnknown,
    SurfaceDiagram,
    augment_surface,
    augment_virtual,
    check_condition_s,
    construct,
    invariant_of_presentation,
    parse_surface,
    serialize_surface,
)
from vwrt.temperley import ColorOutOfRange, TLElement, jw, tl_closure, tl_hook
from vwrt.wrt import (
    omega_bracket,
    parse_replay_script,
    random_move_sequence,
    verify_invariance,
    z_invariant,
)

Presentation = VirtualDiagram | SurfaceDiagram

COMPUTE_COLUMNS = ("input", "r", "components", "n", "z")
VERIFY_COLUMNS = ("input", "r", "sequence", "ok", "max_deviation")
SELFTEST_COLUMNS = ("check", "parameter", "passed", "deviation")

SELFTEST_JW_LEVEL = 7
SELFTEST_JW_MAX = 5
SELFTEST_DELTA_MU_LEVELS = range(3, 17)
SELFTEST_Z_LEVELS = range(3, 9)

EXIT_CODE_MAP: tuple[tuple[tuple[type[Exception], ...], int], ...] = (
    ((ComplexityGuardrail,), EXIT_COMPLEXITY),
    ((ConditionSFail,), EXIT_CONDITION_S),
    (
        (
            ColorLengthMismatch,
            ColorOutOfRange,
            ConfigError,
            IllegalSlide,
            InconsistentWindings,
            InvalidLevel,
            ModeUnknown,
            ParseError,
            SiteMismatch,
            UnknownComponent,
            UnsupportedMove,
            ValidationError,
        ),
        EXIT_INVALID_INPUT,
    ),
)


def configure_logging(verbose: bool) -> None:
    """Configure logging.

    Args:
        verbose: Whether verbose logging should be included.
    """
    if verbose:
        log_level = logging.DEBUG
    else:
        log_level = logging.INFO

    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(
        colorlog.ColoredFormatter(
            "%(log_color)s%(asctime)s | %(levelname)s | %(message)s",
            log_colors={
                "DEBUG": "cyan",
                "INFO": "green",
                "WARNING": "yellow",
                "ERROR": "red",
                "CRITICAL": "red,bg_white",
            },
        )
    )

    LOGGER.setLevel(log_level)
    LOGGER.addHandler(handler)


def exit_code_for(err: BaseException) -> int:
    """Return the exit code documented for an error.

    Args:
        err: The error.

    Returns:
        The exit code.
    """
    for error_types, code in EXIT_CODE_MAP:
        if isinstance(err, error_types):
            return code
    return EXIT_FAILURE


def read_presentation(path: str) -> Presentation:
    """Read a diagram file: extended-PD JSON, SurfaceDiagram JSON or a Gauss code.

    Args:
        path: The file path.

    Returns:
        A VirtualDiagram, or a SurfaceDiagram when the document has a genus.

    Raises:
        ParseError: Raised on unparsable content.
        ValidationError: Raised on content that is not a valid diagram.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        if not text.lstrip().startswith("{"):
            return parse_gauss(text.strip())
        data = load_json(text)
        if isinstance(data, dict) and KEY_GENUS in data:
            return parse_surface(text)
        return diagram_from_dict(data)
    except (ParseError, ValidationError) as err:
        raise type(err)(f"{path}: {err}") from err


def base_diagram(presentation: Presentation) -> VirtualDiagram:
    """Return the virtual diagram underlying a presentation.

    Args:
        presentation: A diagram or a surface diagram.

    Returns:
        A VirtualDiagram.
    """
    if isinstance(presentation, SurfaceDiagram):
        return presentation.base
    return presentation


class Vwrt:
    """Define the base application object."""

    def __init__(self, params: dict[str, Any]) -> None:
        """Initialize.

        Args:
            params: CLI options and environment variables.
        """
        try:
            self.config = RunConfig(params)
        except ConfigError as err:
            LOGGER.error(err)
            self.exit(EXIT_INVALID_INPUT)

        configure_logging(self.config.verbose)

        LOGGER.debug("Input CLI options/environment variables: %s", params)
        LOGGER.debug("Config loaded: %s", self.config)

        self.runtime = Runtime(self.config.jobs)

    async def async_start(self) -> None:
        """Run the configured command and exit with its status."""
        LOGGER.info(
            "Starting vwrt %s (version %s)", self.config.command, __version__
        )
        try:
            status = await self.async_run()
        except VwrtError as err:
            LOGGER.error(err)
            status = exit_code_for(err)
        except OSError as err:
            LOGGER.error(err)
            status = EXIT_FAILURE
        except Exception as err:  # pylint: disable=broad-except
            LOGGER.exception("Unexpected error: %s", err)
            status = EXIT_FAILURE
        finally:
            self.runtime.stop()
        self.exit(status)

    async def async_run(self) -> int:
        """Run the configured command.

        Returns:
            The exit code.
        """
        handlers: dict[Command, Callable[[], Any]] = {
            Command.COMPUTE: self.async_compute,
            Command.VERIFY: self.async_verify,
            Command.CABLE: self.async_cable,
            Command.AUGMENT: self.async_augment,
            Command.CONSTRUCT: self.async_construct,
            Command.SELFTEST: self.async_selftest,
        }
        return int(await handlers[self.config.command]())

    def _compute_record(
        self, path: str, presentation: Presentation, r: int
    ) -> dict[str, Any]:
        """Evaluate one presentation at one level."""
        config = self.config
        diagram = base_diagram(presentation)
        LOGGER.debug(
            "%s at r=%s: about %s state-sum terms",
            path,
            r,
            estimate_terms(diagram, r),
        )
        if isinstance(presentation, SurfaceDiagram):
            report = invariant_of_presentation(
                presentation,
                r,
                strict=config.strict_s,
                backend=config.backend,
                tolerance=config.tolerance,
                term_budget=config.term_budget,
                mapper=self.runtime.mapper,
                dump_colorings=config.dump_colorings,
            )
        else:
            report = z_invariant(
                presentation,
                r,
                backend=config.backend,
                tolerance=config.tolerance,
                term_budget=config.term_budget,
                mapper=self.runtime.mapper,
                dump_colorings=config.dump_colorings,
            )
        return {"input": path, "n": report.signature.n_of_k, **report.to_dict()}

    async def async_compute(self) -> int:
        """Compute Z for every input at every level.

        Returns:
            The exit code.
        """
        calls = [
            partial(self._compute_record, path, read_presentation(path), r)
            for path in self.config.inputs
            for r in self.config.levels
        ]
        LOGGER.info("Computing %s invariant(s)", len(calls))
        await self._async_emit(calls, COMPUTE_COLUMNS)
        return EXIT_OK

    def _verify_records(
        self, index: int, path: str, d: VirtualDiagram, r: int
    ) -> list[dict[str, Any]]:
        """Fuzz random move sequences on one diagram at one level."""
        config = self.config
        records = []
        for sequence in range(config.count):
            rng = random.Random(f"{config.seed}:{index}:{r}:{sequence}")
            moves = random_move_sequence(d, config.moves, config.length, rng)
            report = verify_invariance(
                d,
                r,
                moves,
                backend=config.backend,
                tolerance=config.tolerance,
                term_budget=config.term_budget,
                mapper=self.runtime.mapper,
            )
            records.append(self._verify_record(path, sequence, report))
        return records

    @staticmethod
    def _verify_record(path: str, sequence: int, report: Any) -> dict[str, Any]:
        """Build the output record of one move sequence."""
        record = {"input": path, "sequence": sequence, **report.to_dict()}
        if not report.ok:
            LOGGER.error(
                "Invariance violation on %s at r=%s (max deviation %s)",
                path,
                report.r,
                report.max_deviation,
            )
            record["replay"] = report.replay_script()
        return record

    async def async_verify(self) -> int:
        """Check that framed moves leave Z unchanged.

        Returns:
            The exit code.
        """
        config = self.config
        if (replay := config.replay) is not None:
            d, r, moves = parse_replay_script(Path(replay).read_text(encoding="utf-8"))
            report = verify_invariance(
                d,
                r,
                moves,
                backend=config.backend,
                tolerance=config.tolerance,
                term_budget=config.term_budget,
                mapper=self.runtime.mapper,
            )
            records = [self._verify_record(replay, 0, report)]
        else:
            calls = [
                partial(
                    self._verify_records,
                    index,
                    path,
                    base_diagram(read_presentation(path)),
                    r,
                )
                for index, path in enumerate(config.inputs)
                for r in config.levels
            ]
            LOGGER.info(
                "Verifying %s diagram/level pair(s) with %s sequence(s) each",
                len(calls),
                config.count,
            )
            batches = await self.runtime.async_run_all(calls)
            records = [record for batch in batches for record in batch]

        self._write_records(records, VERIFY_COLUMNS)
        if all(record["ok"] for record in records):
            return EXIT_OK
        return EXIT_INVARIANCE_VIOLATION

    async def async_cable(self) -> int:
        """Write the cabling of the input by the given colors.

        Returns:
            The exit code.
        """
        d = base_diagram(read_presentation(self.config.inputs[0]))
        colored = cable(d, self.config.colors or [])
        LOGGER.info(
            "Cabled %s crossing(s) into %s",
            len(d.crossings),
            len(colored.base.crossings),
        )
        document = colored.base.to_dict()
        document["colors"] = list(colored.colors)
        document["jw_boxes"] = [
            {"component": box.component, "width": box.width, "edges": list(box.edges)}
            for box in colored.boxes
        ]
        write_text(dump_document(document), self.config.output)
        return EXIT_OK

    async def async_augment(self) -> int:
        """Write the augmented surface presentation of the input.

        Returns:
            The exit code.
        """
        presentation = read_presentation(self.config.inputs[0])
        if isinstance(presentation, SurfaceDiagram):
            augmented = augment_surface(presentation)
        else:
            augmented = augment_virtual(presentation)
        report = check_condition_s(augmented)
        LOGGER.info(
            "Augmented to genus %s with %s component(s); condition S: %s",
            augmented.genus,
            augmented.base.n_components,
            "pass" if report.passed else "fail",
        )
        write_text(serialize_surface(augmented), self.config.output)
        return EXIT_OK

    async def async_construct(self) -> int:
        """Write the 2-component link built from the input knot.

        Returns:
            The exit code.
        """
        config = self.config
        knot = base_diagram(read_presentation(config.inputs[0]))
        fixed = None
        if config.fixed:
            fixed = base_diagram(read_presentation(config.fixed))
        link = construct(knot, cast(ConstructionMode, config.mode), fixed)
        LOGGER.info(
            "Constructed %s link with linking number %s",
            config.mode,
            linking_number(link, 0, 1),
        )
        write_text(serialize(link), config.output)
        return EXIT_OK

    async def async_selftest(self) -> int:
        """Run the built-in identity checks.

        Returns:
            The exit code.
        """
        tolerance = self.config.tolerance
        calls: list[Callable[[], dict[str, Any]]] = [
            partial(check_projector, n, SELFTEST_JW_LEVEL)
            for n in range(SELFTEST_JW_MAX + 1)
        ]
        calls.extend(
            partial(check_delta_mu, r, tolerance) for r in SELFTEST_DELTA_MU_LEVELS
        )
        calls.extend(partial(check_alpha, r, tolerance) for r in SELFTEST_Z_LEVELS)
        calls.extend(partial(check_unknot, r, tolerance) for r in SELFTEST_Z_LEVELS)
        records = await self.runtime.async_run_all(calls)

        self._write_records(records, SELFTEST_COLUMNS)
        if failed := [record for record in records if not record["passed"]]:
            for record in failed:
                LOGGER.error(
                    "Self-test %s failed at %s", record["check"], record["parameter"]
                )
            return EXIT_FAILURE
        LOGGER.info("All %s self-test checks passed", len(records))
        return EXIT_OK

    async def _async_emit(
        self, calls: list[Callable[[], dict[str, Any]]], columns: tuple[str, ...]
    ) -> None:
        """Run calls and write their records in input order.

        JSON records stream as NDJSON lines; a table waits for every record.
        """
        if self.config.output_format is OutputFormat.TABLE:
            records = await self.runtime.async_run_all(calls)
            self._write_records(records, columns)
            return
        with open_output(self.config.output) as output:
            async for record in self.runtime.async_stream(calls):
                output.write(dump_record(record) + "\n")
                output.flush()

    def _write_records(
        self, records: list[dict[str, Any]], columns: tuple[str, ...]
    ) -> None:
        """Write records in the configured format."""
        write_text(
            render_records(records, self.config.output_format, columns),
            self.config.output,
        )

    def exit(self, status_code: int = 0) -> int:
        """Stop the application.

        Args:
            status_code: The status code to exit with.

        Returns:
            The passed status code.
        """
        return sys.exit(status_code)


def check_projector(n: int, r: int) -> dict[str, Any]:
    """Check that T_n is killed by every hook, absorbs T_m, and closes to Δ_n.

    Args:
        n: The strand count.
        r: The level bounding n.

    Returns:
        A self-test record.
    """
    projector = jw(n, r)
    hooks = [TLElement.of(tl_hook(n, i)) for i in range(1, n)]
    annihilated = all(
        (projector @ hook).is_zero and (hook @ projector).is_zero for hook in hooks
    )

    absorbed = True
    for m in range(n + 1):
        padded = jw(m, r)
        for _ in range(n - m):
            padded = padded.tensor_identity()
        absorbed = absorbed and projector @ padded == projector

    closed = tl_closure(projector) == RationalFunc(delta_poly(n))
    return {
        "check": "jones-wenzl",
        "parameter": n,
        "passed": annihilated and absorbed and closed,
    }


def check_delta_mu(r: int, tolerance: float) -> dict[str, Any]:
    """Check μ²·Σ_a Δ_a² = 1 over the admissible colors.

    Args:
        r: The level.
        tolerance: The largest deviation accepted.

    Returns:
        A self-test record.
    """
    params = LevelParams(r, tolerance)
    total = sum((params.delta(a) ** 2 for a in range(params.max_color + 1)), 0j)
    deviation = abs(params.mu**2 * total - 1)
    return {
        "check": "delta-mu",
        "parameter": r,
        "passed": deviation <= tolerance,
        "deviation": deviation,
    }


def check_alpha(r: int, tolerance: float) -> dict[str, Any]:
    """Check α = μ·⟨U₊^ω⟩ for the positively kinked unknot.

    Args:
        r: The level.
        tolerance: The largest deviation accepted.

    Returns:
        A self-test record.
    """
    params = LevelParams(r, tolerance)
    deviation = abs(params.alpha - params.mu * omega_bracket(kinked_unknot(1), r))
    return {
        "check": "alpha",
        "parameter": r,
        "passed": deviation <= tolerance,
        "deviation": deviation,
    }


def check_unknot(r: int, tolerance: float) -> dict[str, Any]:
    """Check that the 0-framed unknot has Z = 1.

    Args:
        r: The level.
        tolerance: The largest deviation accepted.

    Returns:
        A self-test record.
    """
    deviation = abs(z_invariant(unknot(), r, tolerance=tolerance).z - 1)
    return {
        "check": "unknot",
        "parameter": r,
        "passed": deviation <= tolerance,
        "deviation": deviation,
    }
