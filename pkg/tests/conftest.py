import mpmath
import pytest

from explicit_mertens import constants as C, zeros_db


@pytest.fixture(scope="session")
def zeros_to_H():
    return zeros_db.load_to_H()


@pytest.fixture
def hp():
    """Run a test body at twice the working precision."""
    with mpmath.workprec(2 * C.WORKPREC):
        yield


ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    """Record one pass/fail line for the end-of-run acceptance summary."""
    def record(line):
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
