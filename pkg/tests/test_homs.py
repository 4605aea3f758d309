from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from warmthlab.errors import TooLarge
from warmthlab.graph import (
    complete,
    complete_bipartite,
    cycle,
    new_graph,
    path,
    petersen,
)
from warmthlab.homs import (
    MobilityWitness,
    connectivity,
    enumerate_homs,
    hom_graph,
    is_hom,
    lovasz_certificate,
    mobility_ub,
)
from warmthlab.warmth import warmth_exact
from oracles import brute_homs, hom_components, hom_graph_edges, to_nx


@st.composite
def graphs(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return new_graph(n, [e for e, keep in zip(pairs, picks) if keep])


def test_enumeration_examples():
    assert len(enumerate_homs(complete(2), complete(3))) == 6
    assert enumerate_homs(complete(3), complete(2)) == []
    assert len(enumerate_homs(complete(2), cycle(4))) == 8
    with pytest.raises(TooLarge):
        enumerate_homs(path(9), complete(3))


def test_hom_graph_examples():
    hg = hom_graph(complete(2), complete(2))
    assert len(hg) == 2 and hg.edge_count == 0
    conn = connectivity(hg)
    assert conn.status == "disconnected" and conn.count == 2
    assert connectivity(hom_graph(complete(3), complete(2))).status == "empty"
    assert connectivity(hom_graph(complete(2), complete(3))).status == "connected"
    k1 = hom_graph(complete(1), cycle(5))
    assert len(k1) == 5 and k1.edge_count == 10
    assert connectivity(k1).status == "connected"


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=4), graphs(min_n=1, max_n=5))
def test_hom_graph_matches_quadratic_oracle(h, g):
    expect = brute_homs(to_nx(h), to_nx(g))
    hg = hom_graph(h, g)
    got = [tuple(r) for r in hg.homs.tolist()]
    assert got == expect
    edges = hom_graph_edges(expect)
    assert hg.edges() == edges and hg.edge_count == len(edges)
    conn = connectivity(hg)
    if not expect:
        assert conn.status == "empty"
    else:
        assert conn.count == hom_components(expect)
        assert conn.status == ("connected" if conn.count == 1 else "disconnected")
    assert all(is_hom(h, g, phi) for phi in got)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_hom_counts_from_single_vertex_and_edge(g):
    assert len(enumerate_homs(complete(1), g)) == g.n
    assert len(enumerate_homs(complete(2), g)) == 2 * g.edge_count


def test_mobility_examples():
    r = mobility_ub(complete(2))
    assert r.witness is not None and r.witness.value == 2 and r.best_ub == 2
    assert r.witness.replay(complete(2))
    assert mobility_ub(cycle(6)).best_ub == 2
    k4 = mobility_ub(complete(4))
    assert k4.ub_from_warmth == 6 and k4.best_ub <= 6


def test_witness_json_and_tampering():
    g = complete(4)
    w = mobility_ub(g).witness
    back = MobilityWitness.from_json(w.to_json())
    assert back == w and back.replay(g)
    assert not MobilityWitness(w.value, w.h, w.hom_a, w.hom_a).replay(g)
    assert not MobilityWitness(w.value + 1, w.h, w.hom_a, w.hom_b).replay(g)


@pytest.mark.parametrize(
    "g, status",
    [(complete_bipartite(3, 3), "certified"), (cycle(5), "certified"), (petersen(), "certified")],
)
def test_lovasz_examples(g, status):
    verdict, report = lovasz_certificate(g)
    assert verdict.status == status
    assert report.best_ub <= 2 * warmth_exact(g).warmth - 2


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=2, max_n=6))
def test_lovasz_status_domain(g):
    if g.edge_count == 0:
        return
    verdict, report = lovasz_certificate(g)
    assert verdict.status in {"certified", "undecided"}
    assert (verdict.status == "certified") == (report.best_ub <= verdict.chi)
    if report.witness is not None:
        assert report.witness.replay(g)
