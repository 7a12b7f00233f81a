import pytest

from growthlab.groups import HEISENBERG, CyclicFinite, FreeAbelian, Unitriangular
from growthlab.products import ElementSet

X = (1, 0, 0)
Y = (0, 1, 0)
XI = (-1, 0, 0)
YI = (0, -1, 0)
E3 = (0, 0, 0)


def Z1(*xs):
    """Subset of the integers."""
    return ElementSet(FreeAbelian(1), [(x,) for x in xs])


def interval(lo, hi):
    return Z1(*range(lo, hi + 1))


def heis(*coords):
    return ElementSet(HEISENBERG, coords)


@pytest.fixture
def heis_S():
    """{e, x^{+-1}, y^{+-1}}"""
    return heis(E3, X, XI, Y, YI)


@pytest.fixture
def Z():
    return FreeAbelian(1)


@pytest.fixture
def C5():
    return CyclicFinite(5)


@pytest.fixture
def U3():
    return Unitriangular(3)


#: (criterion, passed, detail) rows filled in by the acceptance suite
ACCEPTANCE_RESULTS: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE_RESULTS, key=lambda row: row[0]):
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
