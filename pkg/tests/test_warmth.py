from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from warmthlab.coloring import chromatic_number
from warmthlab.corpus import connected_graphs
from warmthlab.errors import InvalidParameter, NoEdges, TooLargeForExact
from warmthlab.graph import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    empty,
    kneser,
    new_graph,
    path,
    petersen,
    star,
    vertex_set,
)
from warmthlab.warmth import (
    StabilityCertificate,
    SubsetFamily,
    codegree_warmth_ub,
    exists_d_stable,
    greatest_stable_family,
    intersect_neighborhoods,
    is_d_stable,
    singleton_min_stability,
    singleton_representatives,
    warmth_exact,
)
from oracles import slow_stable_family, slow_warmth, to_nx


@st.composite
def graphs(draw, min_n=2, max_n=6, min_edges=1):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, picks) if keep]
    if len(edges) < min_edges:
        edges = pairs[:min_edges]
    return new_graph(n, edges)


def as_masks(family_sets) -> set:
    return {vertex_set(a) for a in family_sets}


def slow_is_stable(g, family: set, d: int) -> bool:
    full = g.full_mask
    values = {g.neighborhood(b) for b in family}
    reach = set()
    for combo in combinations_with_replacement(values, d):
        cap = full
        for x in combo:
            cap &= x
        reach.add(cap)
    return family <= reach


def test_intersect_neighborhoods():
    k3 = complete(3)
    assert intersect_neighborhoods(k3, [0b010, 0b100]) == 0b001
    c5 = cycle(5)
    assert intersect_neighborhoods(c5, [0b1, 0b100]) == 0b10
    a = 0b101
    assert intersect_neighborhoods(c5, [a, a]) == c5.neighborhood(a)
    with pytest.raises(InvalidParameter):
        intersect_neighborhoods(c5, [])


def test_subset_family_validation():
    with pytest.raises(InvalidParameter):
        SubsetFamily.of(3, [0])
    with pytest.raises(InvalidParameter):
        SubsetFamily.of(3, [0b111])
    with pytest.raises(InvalidParameter):
        SubsetFamily.of(3, [0b1000])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_complete_singletons_are_stable_at_n_minus_1(n):
    g = complete(n)
    ok, cert = is_d_stable(g, SubsetFamily.singletons(g), n - 1)
    assert ok and cert.replay(g)
    if n > 2:
        ok, cert = is_d_stable(g, SubsetFamily.singletons(g), n - 2)
        assert not ok and cert is None


def test_exists_d_stable_examples():
    assert exists_d_stable(complete(4), 3) is not None
    assert exists_d_stable(complete(4), 2) is None
    cert = exists_d_stable(complete(2), 1)
    assert cert.family.members == {0b01, 0b10}
    assert cert.witnesses[0b01] == (0b10,)
    with pytest.raises(TooLargeForExact):
        exists_d_stable(kneser(7, 3), 2)
    with pytest.raises(InvalidParameter):
        exists_d_stable(complete(3), 0)


@pytest.mark.parametrize(
    "g, w",
    [(complete(n), n) for n in range(2, 7)]
    + [(complete_bipartite(3, 3), 2), (cycle(6), 2), (path(5), 2), (cycle(5), 3)]
    + [(cycle(7), 3), (petersen(), 3), (star(4), 2)],
)
def test_known_warmth(g, w):
    result = warmth_exact(g)
    assert result.warmth == w
    assert result.certificate.d == w - 1
    assert result.certificate.replay(g)


def test_warmth_rejects_edgeless():
    with pytest.raises(NoEdges):
        warmth_exact(empty(3))


def test_singleton_stability_examples():
    assert singleton_min_stability(complete(5)) == 4
    assert singleton_min_stability(kneser(8, 3)) == 2
    assert singleton_representatives(cycle(4), 0) is None
    assert singleton_min_stability(cycle(4)) is None
    g = kneser(8, 3)
    ok, cert = is_d_stable(g, SubsetFamily.singletons(g), 2)
    assert ok and cert.replay(g)


def test_codegree_bound_examples():
    assert codegree_warmth_ub(petersen()) == 3
    assert codegree_warmth_ub(complete(4)) == 4
    assert codegree_warmth_ub(star(3)) is None
    # max codegree 4 (3-sets sharing two points), degree 10
    assert codegree_warmth_ub(kneser(8, 3)) == 6


def test_certificate_json_round_trip():
    g = petersen()
    cert = warmth_exact(g).certificate
    back = StabilityCertificate.from_json(cert.to_json())
    assert back.family == cert.family and back.replay(g)
    tampered = dict(back.witnesses)
    a = next(iter(tampered))
    tampered[a] = (a,)
    assert not StabilityCertificate(back.d, back.family, tampered).replay(g)


def test_agrees_with_slow_warmth_on_small_corpus():
    for g in connected_graphs(5, min_n=2):
        assert warmth_exact(g).warmth == slow_warmth(to_nx(g))
        for d in (1, 2, 3):
            fam = greatest_stable_family(g, d)
            got = set() if fam is None else set(fam.members)
            assert got == as_masks(slow_stable_family(to_nx(g), d))


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(1, 3))
def test_greatest_family_matches_slow_fixed_point(g, d):
    fam = greatest_stable_family(g, d)
    got = set() if fam is None else set(fam.members)
    assert got == as_masks(slow_stable_family(to_nx(g), d))
    if fam is not None:
        ok, cert = is_d_stable(g, fam, d)
        assert ok and cert.replay(g)


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(1, 3), st.sets(st.integers(1, 62), min_size=1, max_size=8))
def test_is_d_stable_matches_definition_and_gfp_is_greatest(g, d, raw):
    full = g.full_mask
    family = {a & full for a in raw} - {0, full}
    if not family:
        return
    ok, cert = is_d_stable(g, SubsetFamily.of(g.n, family), d)
    assert ok == slow_is_stable(g, family, d)
    if ok:
        assert cert.replay(g)
        greatest = greatest_stable_family(g, d)
        assert family <= set(greatest.members)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7), st.integers(1, 4))
def test_stability_is_monotone_in_d(g, d):
    fam = greatest_stable_family(g, d)
    if fam is not None:
        ok, _ = is_d_stable(g, fam, d + 1)
        assert ok
        assert set(fam.members) <= set(greatest_stable_family(g, d + 1).members)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8))
def test_bounds_are_consistent(g):
    result = warmth_exact(g)
    w = result.warmth
    assert 2 <= w <= chromatic_number(g)
    assert result.certificate.replay(g)
    assert exists_d_stable(g, result.d_star - 1) is None if result.d_star > 1 else True
    s = singleton_min_stability(g)
    if s is not None:
        assert w <= s + 1
    ub = codegree_warmth_ub(g)
    if ub is not None:
        assert w <= ub


def disjoint_union(a, b):
    return Graph(a.n + b.n, a.adj + tuple(row << a.n for row in b.adj))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_isolated_vertex_forces_warmth_two(g):
    # the non-isolated vertices form a proper set equal to its own neighborhood
    assert warmth_exact(disjoint_union(g, complete(1))).warmth == 2


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_bipartite_component_forces_warmth_two(g):
    assert warmth_exact(disjoint_union(g, path(3))).warmth == 2
