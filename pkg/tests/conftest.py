import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from maxent_transitions.fixtures import load_paper_fixture  # noqa: E402
from maxent_transitions.game import PayoffMatrix  # noqa: E402


@pytest.fixture
def g1():
    return load_paper_fixture("g1")


@pytest.fixture
def g11_game():
    return PayoffMatrix(5, 0, 0, 5, 5)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
