"""Define package constants."""
import logging
from typing import Final

__version__ = "2026.10.0"

LOGGER = logging.getLogger(__package__)

# Configuration keys:
CONF_BACKEND: Final = "backend"
CONF_COLORS: Final = "colors"
CONF_COMMAND: Final = "command"
CONF_CONFIG: Final = "config"
CONF_COUNT: Final = "count"
CONF_DUMP_COLORINGS: Final = "dump_colorings"
CONF_FIXED: Final = "fixed"
CONF_FORMAT: Final = "format"
CONF_INPUTS: Final = "inputs"
CONF_JOBS: Final = "jobs"
CONF_LENGTH: Final = "length"
CONF_LEVELS: Final = "r"
CONF_MODE: Final = "mode"
CONF_MOVES: Final = "moves"
CONF_OUTPUT: Final = "output"
CONF_REPLAY: Final = "replay"
CONF_SEED: Final = "seed"
CONF_STRICT_S: Final = "strict_s"
CONF_TERM_BUDGET: Final = "term_budget"
CONF_TOLERANCE: Final = "tolerance"
CONF_VERBOSE: Final = "verbose"

# Defaults:
DEFAULT_COUNT: Final = 10
DEFAULT_JOBS: Final = 1
DEFAULT_LENGTH: Final = 1
DEFAULT_LEVEL: Final = 3
DEFAULT_SEED: Final = 0
DEFAULT_TERM_BUDGET: Final = 2**30
DEFAULT_TOLERANCE: Final = 1e-9

# Environment variables:
ENV_CONFIG: Final = "VWRT_CONFIG"
ENV_JOBS: Final = "VWRT_JOBS"
ENV_TERM_BUDGET: Final = "VWRT_TERM_BUDGET"
ENV_VERBOSE: Final = "VWRT_VERBOSE"

# Exit codes:
EXIT_OK: Final = 0
EXIT_FAILURE: Final = 1
EXIT_INVALID_INPUT: Final = 2
EXIT_COMPLEXITY: Final = 3
EXIT_CONDITION_S: Final = 4
EXIT_INVARIANCE_VIOLATION: Final = 5
