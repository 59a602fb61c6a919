from pathlib import Path

import pytest

from dualcurves.ring import FieldSpec, PolyRing

DATA = Path(__file__).parent / "data"

GF = FieldSpec.prime(32003)
QQ = FieldSpec.rationals()


@pytest.fixture(params=[GF, QQ], ids=["gf32003", "q"])
def field(request):
    return request.param


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def xyz(field):
    return PolyRing(field, ("x", "y", "z"))


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
