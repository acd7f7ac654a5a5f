import math
from functools import lru_cache

import pytest

from kneser_geodetic import core
from kneser_geodetic.geodesy import DistanceOracle

ACCEPTANCE_LINES = []

# n >= 2, k >= 1, at most 500 vertices
DESK_SWEEP = [
    core.GraphParams(n, k)
    for n in range(2, 7)
    for k in range(1, 40)
    if math.comb(2 * n + k, n) <= 500
]


@lru_cache(maxsize=None)
def oracle(n, k, mode="formula"):
    return DistanceOracle(core.GraphParams(n, k), mode)


@pytest.fixture
def k62():
    return oracle(2, 2)


def vset(o, *element_lists):
    return o.set_of(core.make_vertex(o.params, e) for e in element_lists)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
