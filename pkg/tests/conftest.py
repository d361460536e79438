import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from treespanner.corpus import connected_upto  # noqa: E402
from treespanner.graph import graph6_encode  # noqa: E402
from treespanner.oracle import exact_stretch_index  # noqa: E402


@pytest.fixture(scope="session")
def corpus8():
    """Every connected graph on 2..8 vertices, one per isomorphism class."""
    return list(connected_upto(8, start=2))


@pytest.fixture(scope="session")
def sigma8(corpus8):
    """Oracle stretch index of every corpus graph, keyed by graph6 string."""
    return {graph6_encode(g): exact_stretch_index(g).stretch for g in corpus8}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
