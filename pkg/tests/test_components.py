import random

import pytest
from hypothesis import given, settings, strategies as st

from quivtrunc import bundled_quiver
from quivtrunc.algebra import TruncatedAlgebra
from quivtrunc.components import (
    SamplerExhausted, Verdict3, classify_components, combine, components, containment, gamma,
    generic_module, has_governed_filtration, hierarchy, local_components, search_filtration,
)
from quivtrunc.exactlinalg import QQ, Field
from quivtrunc.modrep import SemisimpleSequence, direct_sum, radical_layering, simple, socle_layering
from quivtrunc.quiver import Quiver
from quivtrunc.ssq import enumerate_sequences, leq

from conftest import cycle
from oracles import governed_bf, random_layered_module, submodules

F2, F3, F101 = Field.prime(2), Field.prime(3), Field.prime(101)
local = SemisimpleSequence.local
Seq = SemisimpleSequence


def test_generic_module_examples(two_loops):
    G = generic_module(two_loops, 3, local([1, 1, 1]), QQ, seed=5)
    assert radical_layering(G) == local([1, 1, 1])
    assert socle_layering(G) == local([1, 1, 1])
    with pytest.raises(ValueError):
        generic_module(two_loops, 2, local([1, 3]), QQ)


def test_generic_module_is_seeded(abb):
    S = Seq([(1, 1), (1, 1), (0, 0)])
    a = generic_module(abb, 3, S, F101, seed=4)
    b = generic_module(abb, 3, S, F101, seed=4)
    assert a.maps == b.maps


def test_sampler_exhaustion_is_reported(two_loops):
    # over F_2 a 2-dimensional layer below a single top cannot be hit by a tiny budget every time
    with pytest.raises(SamplerExhausted):
        for seed in range(200):
            generic_module(two_loops, 2, local([1, 2]), F2, seed=seed, retries=1)


def test_radical_filtration_always_governs(abb):
    G = generic_module(abb, 3, Seq([(1, 1), (1, 0), (0, 1)]), F101, seed=0)
    v = has_governed_filtration(G, radical_layering(G))
    assert v.is_yes and v.witness.check(G)


def test_ex28_filtration_governed_by_s3(abb):
    G1 = generic_module(abb, 3, Seq([(1, 1), (1, 1), (0, 0)]), F101, seed=0)
    v = has_governed_filtration(G1, Seq([(0, 1), (2, 0), (0, 1)]))
    assert v.is_yes and v.witness.check(G1)


def test_ex29_d2_has_no_e2_filtration(two_loops):
    D2 = generic_module(two_loops, 3, local([2, 1, 2]), F101, seed=0)
    D2 = D2.with_algebra(TruncatedAlgebra(two_loops, 4, F101))
    assert has_governed_filtration(D2, local([1, 1, 2, 1])).kind == "no_exhaustive"


def test_gamma_examples(two_cycle):
    alg = TruncatedAlgebra(two_cycle, 2, F2)
    assert gamma(simple(alg, 1)) == (1, "exact")
    assert gamma(direct_sum(simple(alg, 1), simple(alg, 2))) == (3, "exact")
    G = generic_module(bundled_quiver("alpha_beta_beta"), 4, Seq([(1, 0), (0, 1), (1, 0), (0, 1)]),
                       F101, seed=1)
    assert gamma(G)[0] == 1


def test_verdict_combination():
    yes = Verdict3("yes")
    assert combine([Verdict3("no_exhaustive"), yes]) is yes
    assert combine([Verdict3("no_exhaustive")] * 2).kind == "no_exhaustive"
    assert combine([Verdict3("no_exhaustive"), Verdict3("no_monte_carlo", trials=2)]).kind == "no_monte_carlo"
    assert combine([Verdict3("unknown")]).kind == "unknown"
    with pytest.raises(ValueError):
        Verdict3("maybe")


@pytest.mark.parametrize("fld", [F101, QQ], ids=str)
def test_classify_examples(fld, two_cycle, abb):
    assert len(components(two_cycle, 2, [1, 1], field=fld)) == 2
    for n in (2, 3, 4):
        assert len(components(cycle(n), n, [1] * n, field=fld)) == n
    assert set(components(abb, 3, [2, 2], field=fld)) == {
        Seq([(0, 1), (2, 0), (0, 1)]), Seq([(0, 2), (2, 0), (0, 0)]),
        Seq([(1, 1), (0, 1), (1, 0)]), Seq([(2, 0), (0, 2), (0, 0)])}
    assert set(components(abb, 4, [2, 2], field=fld)) == {
        Seq([(1, 0), (0, 1), (1, 0), (0, 1)]), Seq([(0, 1), (1, 0), (0, 1), (1, 0)])}


def test_reports_are_sorted_and_tagged(abb):
    reps = classify_components(abb, 3, [2, 2], field=F101)
    assert [r.sequence for r in reps] == sorted(r.sequence for r in reps)
    for r in reps:
        d = r.to_dict()
        assert d["evidence"] in ("dominated", "gamma_one", "governed_by")
        assert (d["evidence"] == "governed_by") == (not r.is_component)


def test_containment_examples(two_loops):
    kw = dict(field=F101)
    D3, E3 = local([2, 2, 1]), local([1, 2, 1, 1])
    D2, E2 = local([2, 1, 2]), local([1, 1, 2, 1])
    assert containment(two_loops, [5], D3, 3, D3, 3, **kw).is_yes
    assert containment(two_loops, [5], D3, 3, E3, 4, **kw).is_yes
    assert containment(two_loops, [5], D2, 3, E2, 4, **kw).is_no
    with pytest.raises(ValueError):
        containment(two_loops, [5], E2, 4, D2, 3, **kw)


def test_components_lift_to_next_level(abb):
    h = hierarchy(abb, [2, 2], [3, 4], field=F101)
    for s in h.levels[3]:
        assert any(a == 3 and x == s for a, x, _, _ in h.contained())


def test_local_components_examples():
    assert set(local_components(2, 5, 2)) == {local([3, 2]), local([2, 3])}
    assert set(local_components(2, 5, 3)) == {local([1, 2, 2]), local([2, 1, 2]), local([2, 2, 1])}
    assert len(local_components(2, 5, 4)) == 4
    assert local_components(2, 5, 5) == [local([1] * 5)]
    assert local_components(2, 3, 3) == [local([1, 1, 1])]
    assert local_components(3, 2, 2) == [local([1, 1])]
    three = bundled_quiver("three_loops")
    assert components(three, 2, [2], field=F101) == [local([1, 1])]


# brute force on small modules over F_2


def small_modules(seed: int, count: int):
    rng = random.Random(seed)
    cases = [(bundled_quiver("two_cycle"), 3), (bundled_quiver("two_loops"), 3),
             (Quiver(2, [("a", 1, 2), ("b", 1, 2)]), 2), (bundled_quiver("alpha_beta_beta"), 3)]
    out = []
    while len(out) < count:
        q, L = rng.choice(cases)
        d = [rng.randint(0, 2) for _ in q.vertices]
        if not any(d) or sum(d) > 3:
            continue
        layers = rng.choice(enumerate_sequences(d, L))
        out.append(random_layered_module(q, L, layers.layers, F2, rng))
    return out


@pytest.mark.parametrize("rep", small_modules(7, 40), ids=lambda r: f"{r.dims}-L{r.L}")
def test_search_agrees_with_brute_force(rep):
    subs = submodules(rep)
    rad = radical_layering(rep)
    for S in enumerate_sequences(rep.dims, rep.L):
        found = search_filtration(rep, S)
        assert (found is not None) == governed_bf(rep, S.layers, subs), S
        if found is not None:
            assert found.check(rep)
            assert leq(S, rad)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_gamma_at_least_one(seed):
    for rep in small_modules(seed, 2):
        count, tag = gamma(rep)
        assert count >= 1 and tag == "exact"
