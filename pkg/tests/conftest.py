import pytest

from kswap.core import Instance, Schedule

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def four_jobs():
    """p = [5, 4, 3, 2] with loads (9, 5)."""
    inst = Instance(2, [5, 4, 3, 2])
    return inst, Schedule.from_assignment(inst, [0, 0, 1, 1])


def make(p, assignment, m=2):
    inst = Instance(m, p)
    return inst, Schedule.from_assignment(inst, assignment)
