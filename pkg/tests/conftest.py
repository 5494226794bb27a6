import sys

import pytest

from quivtrunc import bundled_quiver
from quivtrunc.quiver import Quiver


def family_quiver(L: int) -> Quiver:
    """Arrows a:1->2, b:1->3, l:2->2, c:2->3 and a tail d_k:k->k+1 for k=3..L."""
    arrows = [("a", 1, 2), ("b", 1, 3), ("l", 2, 2), ("c", 2, 3)]
    arrows += [(f"d{k}", k, k + 1) for k in range(3, L + 1)]
    return Quiver(L + 1, arrows)


def cycle(n: int) -> Quiver:
    return Quiver(n, [(f"a{i}", i, i % n + 1) for i in range(1, n + 1)])


@pytest.fixture
def two_cycle():
    return bundled_quiver("two_cycle")


@pytest.fixture
def two_loops():
    return bundled_quiver("two_loops")


@pytest.fixture
def abb():
    return bundled_quiver("alpha_beta_beta")


@pytest.fixture
def illustration():
    return bundled_quiver("tilt_illustration")



def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
