import json
from pathlib import Path

import pytest

from dissect.fileformat import parse

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


def load_fixture(name):
    return parse((FIXTURES / name).read_bytes())


def fixture_expected(name):
    return json.loads((FIXTURES / name).read_text())["expected"]


@pytest.fixture
def fixture_model():
    return lambda name: load_fixture(name).build()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
