import numpy as np
import pytest

from genhess.paper import counterexample_system, three_row_system

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def s2():
    return counterexample_system()


@pytest.fixture
def s3():
    return three_row_system()


@pytest.fixture
def origin():
    return np.zeros(2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
