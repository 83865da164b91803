import pytest

from branchedarc import checks


@pytest.fixture(scope="session")
def h2():
    return checks.h2()


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance
    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.LINES:
            terminalreporter.write_line(line)
