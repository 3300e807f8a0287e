"""Define voluptuous schemas for the records and documents vwrt writes."""
from __future__ import annotations

import voluptuous as vol

from vwrt.algebra.level import MIN_LEVEL
from vwrt.diagram.codec import PD_SCHEMA, edge_id
from vwrt.diagram.moves import Direction, MoveKind
from vwrt.wrt import KEY_DIAGRAM, KEY_LEVEL, KEY_MOVES, StepStatus

real = vol.Any(float, int)
complex_pair = vol.ExactSequence([real, real])
count = vol.All(int, vol.Range(min=0))
level = vol.All(int, vol.Range(min=MIN_LEVEL))
fraction_text = vol.Match(r"^-?\d+(?:/\d+)?$")

SIGNATURE_SCHEMA = vol.Schema(
    {
        vol.Required("b_plus"): count,
        vol.Required("b_minus"): count,
        vol.Required("n_of_k"): int,
        vol.Required("rank"): count,
    }
)

COMPUTE_RECORD_SCHEMA = vol.Schema(
    {
        vol.Required("input"): str,
        vol.Required("r"): level,
        vol.Required("components"): count,
        vol.Required("n"): int,
        vol.Required("linking_matrix"): [[fraction_text]],
        vol.Required("signature"): SIGNATURE_SCHEMA,
        vol.Required("omega"): complex_pair,
        vol.Required("mu"): real,
        vol.Required("alpha"): complex_pair,
        vol.Required("z"): complex_pair,
        vol.Optional("colorings"): [
            {vol.Required("colors"): [count], vol.Required("value"): complex_pair}
        ],
    }
)

EMITTED_MOVE_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): vol.In([str(k) for k in MoveKind]),
        vol.Required("direction"): vol.In([str(d) for d in Direction]),
        vol.Required("site"): [int],
        vol.Required("sign"): vol.In([1, -1]),
        vol.Required("flip"): bool,
        vol.Required("routing"): [int],
    }
)

EMITTED_REPLAY_SCHEMA = vol.Schema(
    {
        vol.Required(KEY_DIAGRAM): PD_SCHEMA,
        vol.Required(KEY_LEVEL): level,
        vol.Required(KEY_MOVES): [EMITTED_MOVE_SCHEMA],
    }
)

VERIFY_RECORD_SCHEMA = vol.Schema(
    {
        vol.Required("input"): str,
        vol.Required("sequence"): count,
        vol.Required("r"): level,
        vol.Required("ok"): bool,
        vol.Required("max_deviation"): vol.All(real, vol.Range(min=0)),
        vol.Required("steps"): [
            {
                vol.Required("move"): EMITTED_MOVE_SCHEMA,
                vol.Required("z_before"): complex_pair,
                vol.Required("z_after"): complex_pair,
                vol.Required("deviation"): vol.All(real, vol.Range(min=0)),
                vol.Required("status"): vol.In([str(s) for s in StepStatus]),
            }
        ],
        vol.Optional("replay"): EMITTED_REPLAY_SCHEMA,
    }
)

SELFTEST_RECORD_SCHEMA = vol.Schema(
    {
        vol.Required("check"): vol.In(["jones-wenzl", "delta-mu", "alpha", "unknot"]),
        vol.Required("parameter"): count,
        vol.Required("passed"): bool,
        vol.Optional("deviation"): vol.All(real, vol.Range(min=0)),
    }
)

CABLE_DOCUMENT_SCHEMA = PD_SCHEMA.extend(
    {
        vol.Required("colors"): [count],
        vol.Required("jw_boxes"): [
            {
                vol.Required("component"): count,
                vol.Required("width"): count,
                vol.Required("edges"): [edge_id],
            }
        ],
    }
)

CONDITION_S_SCHEMA = vol.Schema(
    {
        vol.Required("condition_s"): vol.In(["pass", "fail"]),
        vol.Required("classes"): [[int]],
        vol.Required("notes"): str,
    }
)
