import sys

import pytest

from bicliquetrees import build_digraph, build_undirected
from bicliquetrees.verify import fixtures


@pytest.fixture
def c3():
    return fixtures()["C3"]


@pytest.fixture
def d2():
    return fixtures()["D2"]


@pytest.fixture
def k3():
    return fixtures()["K3"]


@pytest.fixture
def m2():
    return fixtures()["M2"]


@pytest.fixture
def path3():
    # C3 without the edge closing the cycle
    return build_digraph(3, [(0, 1), (1, 2)])


@pytest.fixture
def triangle():
    return build_undirected(3, [(0, 1), (1, 2), (0, 2)])


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = sorted(getattr(acceptance, "LINES", []), key=lambda s: int(s.split()[1]))
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
