import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from quivtrunc import bundled_quiver, bundled_quivers
from quivtrunc.quiver import (
    Path, Quiver, QuiverError, all_paths, enumerate_paths, has_oriented_cycle, longest_path_length,
    precyclic_vertices, separated_quiver,
)


def test_precyclic_examples(illustration):
    assert precyclic_vertices(illustration) == {1, 2}
    assert precyclic_vertices(Quiver(3, [("a", 1, 2), ("b", 2, 3)])) == set()
    assert precyclic_vertices(bundled_quiver("single_loop")) == {1}


def test_paths_counts(two_cycle, two_loops):
    q3 = Quiver(3, [("a", 1, 2)])
    assert sum(map(len, enumerate_paths(q3, 0).values())) == 3
    assert len(all_paths(two_cycle, 2)) == 6
    assert len(all_paths(two_loops, 2)) == 7


def test_path_composition():
    a, b = Path(("a",), 1, 2), Path(("b",), 2, 1)
    assert (b * a).arrows == ("b", "a") and (b * a).start == 1
    assert a * Path.lazy(1) == a and Path.lazy(2) * a == a
    with pytest.raises(QuiverError):
        a * a


def test_longest_path():
    assert longest_path_length(Quiver(3, [("a", 1, 2), ("b", 2, 3)])) == 2
    assert longest_path_length(Quiver(2, [])) == 0
    assert longest_path_length(bundled_quiver("cycle3")) == float("inf")


def test_quiver_validation():
    with pytest.raises(QuiverError):
        Quiver(2, [("a", 1, 3)])
    with pytest.raises(QuiverError):
        Quiver(2, [("a", 1, 2), ("a", 2, 1)])
    with pytest.raises(QuiverError):
        Quiver(0, [])


def test_json_round_trip(abb):
    assert Quiver.from_json(abb.to_json()) == abb
    assert abb.to_dict()["arrows"][0] == {"id": "alpha", "from": 1, "to": 2}


def test_bundled_quivers_load():
    for name in bundled_quivers():
        assert isinstance(bundled_quiver(name), Quiver)


def _arrow_set(q):
    return {(a.source, a.target) for a in q.arrows}


def test_separated_quiver_examples():
    # hatted copy of vertex i is n+i
    assert _arrow_set(separated_quiver(bundled_quiver("loop_arrow"))) == {(1, 3), (1, 4)}
    assert _arrow_set(separated_quiver(bundled_quiver("loop_fork"))) == {(1, 4), (1, 5), (1, 6)}
    empty = separated_quiver(Quiver(3, []))
    assert empty.n == 6 and not empty.arrows


quivers = st.integers(1, 4).flatmap(lambda n: st.lists(
    st.tuples(st.integers(1, n), st.integers(1, n)), max_size=6).map(
        lambda arr: Quiver(n, [(f"x{k}", s, t) for k, (s, t) in enumerate(arr)])))


@settings(max_examples=80, deadline=None)
@given(quivers)
def test_separated_is_bipartite_and_acyclic(q):
    s = separated_quiver(q)
    assert not has_oriented_cycle(s)
    assert all(a.source <= q.n < a.target for a in s.arrows)
    assert nx.is_bipartite(nx.Graph(s.digraph().to_undirected()))


@settings(max_examples=80, deadline=None)
@given(quivers)
def test_precyclic_closed_under_reaching(q):
    pre = precyclic_vertices(q)
    for a in q.arrows:
        if a.target in pre:
            assert a.source in pre
