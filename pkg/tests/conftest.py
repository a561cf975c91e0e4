import pytest

from kickplan.field_graph import FieldConfig
from kickplan.state import SimConfig

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def field():
    return FieldConfig()


@pytest.fixture
def cfg():
    return SimConfig()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
