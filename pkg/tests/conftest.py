from fractions import Fraction

import pytest

from latwidth.polytope import hull_canonicalize


def P(*pts):
    return hull_canonicalize(pts)


CUBE2 = P((1, 1), (1, -1), (-1, 1), (-1, -1))
CROSS2 = P((1, 0), (-1, 0), (0, 1), (0, -1))
TRIANGLE = P((0, 0), (1, 0), (0, 1))
HEXAGON = P((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1))
SHEARED_CUBE = P((2, 1), (0, -1), (0, 1), (-2, -1))
HALF_CUBE = P(*[(Fraction(a, 2), Fraction(b, 2)) for a in (-1, 1) for b in (-1, 1)])


@pytest.fixture
def shapes():
    return {"cube": CUBE2, "cross": CROSS2, "triangle": TRIANGLE, "hexagon": HEXAGON,
            "sheared": SHEARED_CUBE, "half": HALF_CUBE}


# acceptance criteria report one line each; printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
