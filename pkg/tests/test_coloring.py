from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from warmthlab.coloring import chromatic_number, dsatur_coloring, greedy_clique
from warmthlab.corpus import labeled_graphs
from warmthlab.errors import TooLarge
from warmthlab.graph import complete, complete_bipartite, cycle, empty, kneser, new_graph, petersen
from oracles import brute_chromatic, to_nx


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    density = draw(st.floats(0, 1))
    bits = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
    return new_graph(n, [e for e, b in zip(pairs, bits) if b < density])


def test_examples():
    assert chromatic_number(complete(5)) == 5
    assert chromatic_number(cycle(5)) == 3
    assert chromatic_number(cycle(6)) == 2
    assert chromatic_number(petersen()) == 3
    assert chromatic_number(complete_bipartite(3, 4)) == 2
    assert chromatic_number(empty(3)) == 1
    assert chromatic_number(nx_mycielski()) == 4


def nx_mycielski():
    h = nx.mycielski_graph(4)  # Grötzsch graph: triangle-free, chromatic number 4
    return new_graph(h.number_of_nodes(), h.edges())


def test_guard():
    with pytest.raises(TooLarge):
        chromatic_number(kneser(8, 3))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_all_labeled_graphs_match_brute_force(n):
    for g in labeled_graphs(n):
        assert chromatic_number(g) == brute_chromatic(to_nx(g))


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_random_graphs_match_brute_force(g):
    chi = chromatic_number(g)
    assert chi == brute_chromatic(to_nx(g))
    col = dsatur_coloring(g)
    assert all(col[u] != col[v] for u, v in g.edges())
    assert greedy_clique(g) <= chi <= max(col) + 1
