import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from quivtrunc import bundled_quiver
from quivtrunc.algebra import TruncatedAlgebra
from quivtrunc.quiver import Quiver
from quivtrunc.reptype import (
    RepType, classify, classify_separated, dynkin_type, is_nakayama, is_special_biserial,
    truncated_presentation,
)
from quivtrunc.tilting import end_algebra, strong_tilting_module, tilt_presentation


def graph(edges, n=None):
    g = nx.MultiGraph()
    g.add_nodes_from(range(n or 1 + max((max(e) for e in edges), default=0)))
    g.add_edges_from(edges)
    return g


def path_graph(n):
    return graph([(k, k + 1) for k in range(n - 1)], n)


def star(*arms):
    edges, nxt = [], 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return graph(edges, nxt)


@pytest.mark.parametrize("g,name", [
    (path_graph(1), "A1"), (path_graph(5), "A5"),
    (star(1, 1, 1), "D4"), (star(1, 1, 3), "D6"),
    (star(1, 2, 2), "E6"), (star(1, 2, 3), "E7"), (star(1, 2, 4), "E8"),
    (graph([(0, 1), (0, 1)]), "~A1"), (graph([(0, 1), (1, 2), (2, 0)]), "~A2"),
    (star(1, 1, 1, 1), "~D4"), (graph([(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]), "~D5"),
    (graph([(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6)]), "~D6"),
    (star(2, 2, 2), "~E6"), (star(1, 3, 3), "~E7"), (star(1, 2, 5), "~E8"),
    (graph([(0, 0)]), "~A0"),
])
def test_dynkin_names(g, name):
    assert dynkin_type(g) == name


@pytest.mark.parametrize("g", [
    star(2, 2, 3), star(1, 1, 1, 1, 1), graph([(0, 1)] * 3), star(1, 3, 4),
    graph([(0, 1), (1, 2), (2, 0), (2, 3)]),
])
def test_wild_graphs_have_no_name(g):
    assert dynkin_type(g) is None


def test_separated_examples():
    assert classify_separated(bundled_quiver("loop_arrow")).verdict is RepType.FINITE
    assert classify_separated(bundled_quiver("loop_fork")).verdict is RepType.FINITE
    assert classify_separated(bundled_quiver("kronecker")).verdict is RepType.TAME
    assert classify_separated(bundled_quiver("three_loops")).verdict is RepType.WILD


def test_nakayama_examples():
    assert is_nakayama(bundled_quiver("two_cycle"))
    assert is_nakayama(bundled_quiver("single_loop"))
    assert not is_nakayama(bundled_quiver("alpha_beta_beta"))


def _tilt_presentation(name, L=2):
    q = bundled_quiver(name)
    return tilt_presentation(end_algebra(strong_tilting_module(q, L)))


def test_tilt_presentations():
    P1 = _tilt_presentation("loop_arrow")
    assert P1.monomial and is_nakayama(P1)
    assert P1.quiver.arrow_multiplicities() == {(1, 2): 1, (2, 1): 1}
    assert is_special_biserial(P1) is True
    assert is_special_biserial(_tilt_presentation("two_loops_sink")) is True
    assert is_special_biserial(_tilt_presentation("loop_fork")) is False


@pytest.mark.parametrize("name,base,tilted", [
    ("loop_arrow", RepType.FINITE, RepType.FINITE),
    ("two_loops_sink", RepType.FINITE, RepType.TAME),
])
def test_classify_examples(name, base, tilted):
    assert classify(TruncatedAlgebra(bundled_quiver(name), 2)).verdict is base
    assert classify(_tilt_presentation(name)).verdict is tilted


def test_classify_loop_fork_is_undecided():
    v = classify(_tilt_presentation("loop_fork"))
    assert v.verdict not in (RepType.FINITE, RepType.TAME)
    assert "not Nakayama, not special biserial" in v.evidence[-1].detail


def test_triple_arrow_is_wild():
    q = Quiver(2, [("a", 1, 2), ("b", 1, 2), ("c", 1, 2)])
    for L in (2, 3, 5):
        v = classify(TruncatedAlgebra(q, L))
        assert v.verdict is RepType.WILD and v.evidence[0].name == "triple-arrow"


def test_double_arrow_is_infinite():
    v = classify(TruncatedAlgebra(bundled_quiver("alpha_beta_beta"), 3))
    assert v.verdict is RepType.UNKNOWN
    assert v.evidence[-1].outcome == "infinite"


def test_nakayama_truncation_is_finite():
    v = classify(TruncatedAlgebra(bundled_quiver("cycle3"), 7))
    assert v.verdict is RepType.FINITE


quivers = st.integers(1, 3).flatmap(lambda n: st.lists(
    st.tuples(st.integers(1, n), st.integers(1, n)), max_size=5).map(
        lambda arr: Quiver(n, [(f"x{k}", s, t) for k, (s, t) in enumerate(arr)])))


@settings(max_examples=150, deadline=None)
@given(quivers, st.integers(2, 4))
def test_classify_invariants(q, L):
    alg = TruncatedAlgebra(q, L)
    v = classify(alg)
    assert v.to_dict() == classify(alg).to_dict()
    if max(q.arrow_multiplicities().values(), default=0) >= 3:
        assert v.verdict is RepType.WILD
    if L == 2:
        sep = classify_separated(q).verdict
        if sep is not RepType.FINITE:
            assert v.verdict is not RepType.FINITE
    if is_nakayama(q):
        assert is_special_biserial(truncated_presentation(alg)) is True
