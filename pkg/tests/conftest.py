import pytest

from bctkit.gf2n import field_new
from bctkit.vecfun import FuncSpec

ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    def _record(criterion, ok, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  criterion {criterion}  {detail}")
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def pm(n, d, modulus=None):
    return FuncSpec(field_new(n, modulus), d=d)
