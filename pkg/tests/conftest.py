from __future__ import annotations

import pytest

from spoly_lab.exponent_geometry import ConcaveHypograph, QuarterDisc, RationalPolytope, standard_simplex


def example_polytope():
    return RationalPolytope([(0, 0), (1, 0), (0, 1), ("3/4", "3/4")])


PLANAR_SETS = {
    "sigma2": lambda: standard_simplex(2),
    "disc": lambda: QuarterDisc(1),
    "polytope": example_polytope,
    "hypograph": lambda: ConcaveHypograph(2, 2),
}


@pytest.fixture(params=sorted(PLANAR_SETS))
def planar_set(request):
    return PLANAR_SETS[request.param]()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
