import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

ACCEPTANCE: list = []


@pytest.fixture
def criterion():
    """criterion(n, ok, detail) records and prints one acceptance line."""

    def record(n: int, ok: bool, detail: str = "") -> bool:
        line = "criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail)
        ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
