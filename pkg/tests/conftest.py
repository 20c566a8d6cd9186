import functools

import pytest

from lieinvar.algebra import sl2_semidirect
from lieinvar.poly import parse_polynomial

# Invariants of sl(2) + V(m) as printed in the reference table, keyed by m.
TABLE_ONE = {
    0: ["4*x*y + h^2", "v0"],
    1: ["v1^2*x + v0*v1*h - v0^2*y"],
    2: ["h*v1 + 2*v2*x - 2*v0*y", "v1^2 - 4*v0*v2"],
    3: ["2*v0*v2^3 - 9*v0*v1*v2*v3 + 27/2*v0^2*v3^2 + 1/2*v1^2*v2^2 + 2*v1^3*v3"],
    4: ["-12*v0*v4 + 3*v1*v3 - v2^2",
        "27*v0*v3^2 - 9*v1*v2*v3 + 27*v1^2*v4 - 72*v0*v2*v4 + 2*v2^3"],
}

# The discriminant of the binary cubic, scaled to match the d=4 row.
CUBIC_DISCRIMINANT = "2*v0*v2^3 - 9*v0*v1*v2*v3 + 27/2*v0^2*v3^2 - 1/2*v1^2*v2^2 + 2*v1^3*v3"

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def L(m):
    return sl2_semidirect(m)


def table_polys(m):
    return [parse_polynomial(t, L(m).basis) for t in TABLE_ONE[m]]


@pytest.fixture
def semidirect():
    return L


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
