from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quivtrunc import bundled_quiver
from quivtrunc.algebra import TruncatedAlgebra, injective, loewy_length, projective
from quivtrunc.exactlinalg import QQ, Field, FieldError, Subspace
from quivtrunc.modrep import SemisimpleSequence, hom_space, is_indecomposable, radical_layering, simple
from quivtrunc.quiver import Quiver, precyclic_vertices
from quivtrunc.tilting import (
    BasicAlgebra, accumulation_estimate, algebra_radical, arrow_count, end_algebra, epsilon,
    ext_dimensions, general_radical, loewy_ratio_sequence, pinf_approximation, projective_dimension,
    strong_tilting_module, tilt, tilt_presentation, tilt_quiver, verify_tilting,
)

from conftest import cycle, family_quiver


def naive_radical_dims(A: BasicAlgebra) -> list[int]:
    """Dimensions of J, J^2, ..., 0 from all pairwise products (no shortcuts)."""
    J = general_radical(A)
    cur, dims = J, [J.dim]
    while cur.dim:
        cur = Subspace(A.field, A.dim, [A.multiply(x, y) for x in J.vectors for y in cur.vectors])
        dims.append(cur.dim)
    return dims


def composite_dim(E, chain) -> int:
    """Dimension of the span of composites of radical maps T_c0 -> T_c1 -> ... along ``chain``."""
    J = E.radical_blocks
    first = (chain[0], chain[1])
    cur = list(J[first].vectors) if first in J else []
    for a, b in zip(chain[1:], chain[2:]):
        if (a, b) not in J or (chain[0], b) not in E.blocks or not cur:
            return 0
        out = [E.block_multiply((a, b), g, (chain[0], a), x) for g in J[(a, b)].vectors for x in cur]
        cur = Subspace(E.field, len(E.blocks[(chain[0], b)]), out).vectors
    return len(cur)


def test_epsilon_examples(illustration):
    assert epsilon(illustration) == {3, 4}
    assert epsilon(cycle(3)) == frozenset()
    assert epsilon(Quiver(3, [("a", 1, 2), ("b", 2, 3)])) == {1, 2, 3}


def test_approximation_of_simple(illustration):
    A, f = pinf_approximation(simple(TruncatedAlgebra(illustration, 3), 1))
    assert radical_layering(A) == SemisimpleSequence([(1, 0, 0, 0), (0, 1, 0, 0), (0, 1, 0, 0)])
    assert f.is_homomorphism()


def test_approximation_keeps_injective_top(illustration):
    alg = TruncatedAlgebra(illustration, 3)
    E4 = injective(alg, 4)
    A, f = pinf_approximation(E4)
    assert radical_layering(A)[0] == radical_layering(E4)[0]
    assert f.is_homomorphism()


def test_approximation_of_finite_pdim_module():
    q = Quiver(3, [("a", 1, 2), ("b", 2, 3)])
    P = projective(TruncatedAlgebra(q, 3), 1)
    A, _ = pinf_approximation(P)
    assert A.dims == P.dims and projective_dimension(A) == 0


@pytest.fixture(scope="module")
def ex35():
    q = bundled_quiver("tilt_illustration")
    T = strong_tilting_module(q, 3)
    return q, T, end_algebra(T)


def test_tilting_module_example(ex35):
    q, T, _ = ex35
    assert radical_layering(T[0]) == SemisimpleSequence([(1, 0, 0, 0), (0, 1, 0, 0), (0, 1, 0, 0)])
    assert radical_layering(T[1]) == SemisimpleSequence([(0, 1, 0, 0)] * 3)
    check = verify_tilting(T)
    assert all(check.tree_graphs)
    assert check.pdims == [2, 2, 2, 2]
    pre = precyclic_vertices(q)
    for i in pre:
        assert all(T[i - 1].dims[v - 1] == 0 for v in q.vertices if v not in pre)


def test_ext_vanishes(ex35):
    _, T, _ = ex35
    for Ti in T:
        for Tj in T:
            assert not any(ext_dimensions(Ti, Tj, 2))


def test_end_algebra_example(ex35):
    q, T, E = ex35
    assert E.loewy_length == 7
    assert {i: E.loewy_length_at(i) for i in q.vertices} == {1: 1, 2: 6, 3: 7, 4: 7}
    Qt = tilt_quiver(E)
    assert not Qt.out_arrows[1]
    assert Qt.arrow_multiplicities() == {(2, 3): 1, (2, 4): 2, (3, 1): 2, (3, 2): 1, (4, 2): 1, (4, 3): 1}
    for (i, j), idx in E.blocks.items():
        assert len(idx) == len(hom_space(T[i - 1], T[j - 1]))


def test_fast_radical_equals_trace_form(ex35):
    _, _, E = ex35
    assert algebra_radical(E) == general_radical(E)


def test_loewy_chain_matches_naive_products(ex35):
    _, _, E = ex35
    assert naive_radical_dims(E) == [J.dim for J in E.loewy_chain]


def test_arrow_counts_ignore_summand_order(ex35):
    _, T, E = ex35
    perm = [3, 1, 0, 2]
    F = end_algebra([T[k] for k in perm])
    for i in range(4):
        for j in range(4):
            assert arrow_count(F, i + 1, j + 1) == arrow_count(E, perm[i] + 1, perm[j] + 1)


def test_family_composite_and_sink():
    E = end_algebra(strong_tilting_module(family_quiver(3), 3))
    assert composite_dim(E, [3, 2, 4, 2, 4, 3, 1]) >= 1
    assert E.loewy_length == 7
    assert not tilt_quiver(E).out_arrows[1]


def test_ratio_example_composite_at_five():
    # six radical maps T5 -> T2 -> T4 -> T3 -> T2 -> T5 -> T1 compose to a nonzero map
    E = end_algebra(strong_tilting_module(bundled_quiver("ratio_accumulation"), 5))
    assert composite_dim(E, [5, 2, 4, 3, 2, 5, 1]) >= 1
    assert E.loewy_length == 7


def test_single_loop_tilt_is_itself():
    q = bundled_quiver("single_loop")
    T = strong_tilting_module(q, 4)
    assert T[0].dims == (4,)
    E = end_algebra(T)
    assert E.dim == 4 and E.loewy_length == 4
    P = tilt_presentation(E)
    assert P.monomial and len(P.relations) == 1
    (rel,) = P.relations
    (path,) = rel
    assert path.length == 4


def test_semisimple_algebra_radical():
    A = BasicAlgebra.from_structure_constants(QQ, 2, [1, 2], [1, 2], {(0, 0): {0: 1}, (1, 1): {1: 1}})
    assert algebra_radical(A).dim == 0 and A.loewy_length == 1


def test_truncated_as_basic_algebra():
    A = BasicAlgebra.from_truncated(TruncatedAlgebra(bundled_quiver("single_loop"), 5))
    assert A.loewy_length == 5 and A.is_associative()


def test_prime_field_refused():
    A = BasicAlgebra.from_truncated(TruncatedAlgebra(bundled_quiver("single_loop"), 3, Field.prime(7)))
    with pytest.raises(FieldError):
        algebra_radical(A)


def test_strongly_connected_ratios_are_one():
    assert loewy_ratio_sequence(cycle(2), 2, 5) == [1, 1, 1, 1]
    assert accumulation_estimate(cycle(2), 2, 10).points == {1}


def test_family_ratio():
    for L in (3, 4):
        s = tilt(family_quiver(L), L, verify=False)
        assert s.ratio == Fraction(3 * L - 2, L)


def test_final_example_arrow_counts():
    q = bundled_quiver("exponential_arrows")
    for L in (2, 3):
        assert arrow_count(tilt(q, L, verify=False).E, 3, 1) >= 2 ** (L - 2)


quivers = st.integers(1, 3).flatmap(lambda n: st.lists(
    st.tuples(st.integers(1, n), st.integers(1, n)), max_size=4).map(
        lambda arr: Quiver(n, [(f"x{k}", s, t) for k, (s, t) in enumerate(arr)])))


@settings(max_examples=25, deadline=None)
@given(quivers, st.integers(2, 3))
def test_loewy_bounds_and_basic(q, L):
    T = strong_tilting_module(q, L)
    assert len(T) == q.n and all(is_indecomposable(Ti) for Ti in T)
    E = end_algebra(T)
    l = loewy_length(TruncatedAlgebra(q, L))
    assert l <= E.loewy_length <= 3 * l - 2
    assert 1 <= Fraction(E.loewy_length, l) < 3
    assert algebra_radical(E) == general_radical(E)
