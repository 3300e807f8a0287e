"""Define common test utilities."""
import math
import os
import random

from vwrt.algebra.laurent import LaurentPoly
from vwrt.const import (
    CONF_COMMAND,
    CONF_INPUTS,
    CONF_LEVELS,
    CONF_TOLERANCE,
    CONF_VERBOSE,
)

TEST_AXIOM_TRIPLES = 1000
TEST_LEVEL = 3
TEST_TOLERANCE = 1e-9

# Z of the 0-framed Hopf link at r = 3:
TEST_HOPF_Z = 1 / math.sqrt(2)

TEST_CONFIG_JSON = {
    CONF_COMMAND: "compute",
    CONF_INPUTS: ["unknot.json"],
    CONF_LEVELS: str(TEST_LEVEL),
    CONF_TOLERANCE: TEST_TOLERANCE,
    CONF_VERBOSE: False,
}


def fixture_path(filename: str) -> str:
    """Return the path of a fixture file.

    Args:
        filename: The filename of the fixture.

    Returns:
        An absolute path.
    """
    return os.path.join(os.path.dirname(__file__), "fixtures", filename)


def load_fixture(filename: str) -> str:
    """Load a fixture.

    Args:
        filename: The filename of the fixtures/ file to load.

    Returns:
        A string containing the contents of the file.
    """
    with open(fixture_path(filename), encoding="utf-8") as fptr:
        return fptr.read()


def random_laurent(rng: random.Random, nonzero: bool = False) -> LaurentPoly:
    """Return a random Laurent polynomial with small degrees and coefficients.

    Args:
        rng: The random source.
        nonzero: Whether to redraw until the polynomial is nonzero.

    Returns:
        A LaurentPoly.
    """
    while True:
        poly = LaurentPoly(
            {rng.randint(-4, 4): rng.randint(-3, 3) for _ in range(rng.randint(0, 3))}
        )
        if not (nonzero and poly.is_zero):
            return poly
