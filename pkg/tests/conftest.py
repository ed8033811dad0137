from __future__ import annotations

import pytest

from steiner import TripleSystem, load_entry

# filled by test_acceptance.py, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []

FANO_BLOCKS = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]


@pytest.fixture
def fano() -> TripleSystem:
    return TripleSystem(7, FANO_BLOCKS)


@pytest.fixture(scope="session")
def table16():
    return load_entry(16)


@pytest.fixture(scope="session")
def table17():
    return load_entry(17)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
