import json
from pathlib import Path

import pytest

from dwork_padic.field import build_field

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def golden_counts():
    return json.loads((FIXTURES / "golden_counts.json").read_text())


@pytest.fixture(scope="session")
def fields():
    cache = {}

    def get(p, r=1):
        if (p, r) not in cache:
            cache[(p, r)] = build_field(p, r)
        return cache[(p, r)]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
