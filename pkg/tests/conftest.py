"""Define dynamic fixtures."""
from __future__ import annotations

import json
import tempfile
from collections.abc import Generator
from typing import Any

import pytest

from tests.common import TEST_CONFIG_JSON, fixture_path, load_fixture
from tests.corpus import build_corpus
from vwrt.diagram.codec import parse_gauss, parse_pd
from vwrt.diagram.model import VirtualDiagram


@pytest.fixture(name="config")
def config_fixture() -> dict[str, Any]:
    """Define a fixture to return configuration data.

    Returns:
        Configuration data with absolute input paths.
    """
    return TEST_CONFIG_JSON | {
        "inputs": [fixture_path(path) for path in TEST_CONFIG_JSON["inputs"]]
    }


@pytest.fixture(name="config_filepath")
def config_filepath_fixture(raw_config: str) -> Generator[str, None, None]:
    """Define a fixture to return a config filepath.

    Args:
        raw_config: A raw string of configuration data.
    """
    with tempfile.NamedTemporaryFile() as temp_file:
        with open(temp_file.name, "w", encoding="utf-8") as config_file:
            config_file.write(raw_config)
        yield temp_file.name


@pytest.fixture(name="corpus", scope="session")
def corpus_fixture() -> list[VirtualDiagram]:
    """Define a fixture to return the seeded corpus of small virtual diagrams.

    Returns:
        A list of VirtualDiagram objects.
    """
    return build_corpus()


@pytest.fixture(name="hopf")
def hopf_fixture() -> VirtualDiagram:
    """Define a fixture to return the positive Hopf link.

    Returns:
        A VirtualDiagram.
    """
    return parse_pd(load_fixture("hopf.json"))


@pytest.fixture(name="kinked")
def kinked_fixture() -> VirtualDiagram:
    """Define a fixture to return the unknot with one positive kink.

    Returns:
        A VirtualDiagram.
    """
    return parse_pd(load_fixture("kinked_unknot.json"))


@pytest.fixture(name="raw_config")
def raw_config_fixture() -> str:
    """Define a fixture to return raw configuration data.

    Returns:
        A raw string of configuration data.
    """
    return json.dumps(TEST_CONFIG_JSON)


@pytest.fixture(name="trefoil")
def trefoil_fixture() -> VirtualDiagram:
    """Define a fixture to return the right-handed trefoil.

    Returns:
        A VirtualDiagram.
    """
    return parse_gauss(load_fixture("trefoil.gauss").strip())


@pytest.fixture(name="virtual_hopf")
def virtual_hopf_fixture() -> VirtualDiagram:
    """Define a fixture to return the virtual Hopf link.

    Returns:
        A VirtualDiagram.
    """
    return parse_pd(load_fixture("virtual_hopf.json"))


@pytest.fixture(name="virtual_trefoil")
def virtual_trefoil_fixture() -> VirtualDiagram:
    """Define a fixture to return the virtual trefoil.

    Returns:
        A VirtualDiagram.
    """
    return parse_pd(load_fixture("virtual_trefoil.json"))
