import pytest

from volterra_spectra.verify import Context

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ctx():
    """Shared m=1000 discretizations."""
    return Context(1000)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
