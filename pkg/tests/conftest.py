import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from circlemaps import examples  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def ex():
    return examples


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
