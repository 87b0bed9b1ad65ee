import pytest

from quadlab.geometry import Quad
from quadlab.pattern import E4_TEXT, parse_pattern

UNIT = Quad((0, 1), (0, 0), (1, 0), (1, 1))
SKEW = Quad((0, 2), (0, 0), (1, 0), (2, 3))

# m=4 pattern valid under the literal exit reading with white corners;
# its arcs need vertex detours.
CORNER4_TEXT = """labyrinth v1 m=4
WWWW
WBWB
BWWW
BBWB
"""

ACCEPTANCE_RESULTS = []


@pytest.fixture
def e4():
    return parse_pattern(E4_TEXT)


@pytest.fixture
def corner4():
    return parse_pattern(CORNER4_TEXT)


@pytest.fixture(params=["unit", "skew"])
def quad(request):
    return {"unit": UNIT, "skew": SKEW}[request.param]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
