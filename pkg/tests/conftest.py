import pytest

from advstd.profiles import ProfileSpace

ABC = ["a", "b", "c"]


@pytest.fixture(scope="session")
def space2():
    return ProfileSpace(ABC, 2)


@pytest.fixture(scope="session")
def space3():
    return ProfileSpace(ABC, 3)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
