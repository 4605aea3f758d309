"""Small-graph corpora: the stored connected-graph list and derived collections."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations
from typing import Iterator

from .formats import parse_graph6, write_graph6
from .graph import Graph, complete, cycle, new_graph, path, relabel

CORPUS_FILE = "connected_le7.g6"
REGULAR_FILE = "regular_8_10.g6"
# connected graphs on 1..7 vertices up to isomorphism
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
# connected d-regular graphs on n = 8..10 vertices up to isomorphism, keyed (n, d)
REGULAR_COUNTS = {
    (8, 2): 1, (8, 3): 5, (8, 4): 6, (8, 5): 3, (8, 6): 1, (8, 7): 1,
    (9, 2): 1, (9, 4): 16, (9, 6): 4, (9, 8): 1,
    (10, 2): 1, (10, 3): 19, (10, 4): 59, (10, 5): 60, (10, 6): 21, (10, 7): 5,
    (10, 8): 1, (10, 9): 1,
}


def _read(name: str) -> tuple[Graph, ...]:
    text = resources.files("warmthlab").joinpath("data").joinpath(name).read_text()
    return tuple(parse_graph6(line) for line in text.splitlines() if line.strip())


@lru_cache(maxsize=None)
def _stored() -> tuple[Graph, ...]:
    return _read(CORPUS_FILE)


def connected_graphs(max_n: int = 7, min_n: int = 1) -> list[Graph]:
    if max_n > 7:
        raise ValueError("the stored corpus stops at 7 vertices")
    return [g for g in _stored() if min_n <= g.n <= max_n]


@lru_cache(maxsize=None)
def _stored_regular() -> tuple[Graph, ...]:
    return _read(REGULAR_FILE)


def regular_graphs(max_n: int = 10) -> list[Graph]:
    """Connected regular graphs (edgeless excluded) on at most ``max_n`` <= 10 vertices."""
    if max_n > 10:
        raise ValueError("the stored regular corpus stops at 10 vertices")
    small = [g for g in connected_graphs(min(7, max_n), min_n=2) if g.is_regular()]
    return small + [g for g in _stored_regular() if g.n <= max_n]


def trees(max_n: int) -> list[Graph]:
    return [g for g in connected_graphs(max_n) if g.edge_count == g.n - 1]


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield new_graph(n, [pairs[i] for i in range(len(pairs)) if code >> i & 1])


def canonical_graph6(g: Graph) -> str:
    """Least graph6 string over all relabelings; brute force, small graphs only."""
    if g.n > 8:
        raise ValueError("brute-force canonical form is limited to 8 vertices")
    return min(write_graph6(relabel(g, list(p))) for p in permutations(range(g.n)))


@lru_cache(maxsize=None)
def _default_mobility_corpus() -> tuple[Graph, ...]:
    listed = (
        [complete(k) for k in range(1, 5)]
        + [path(k) for k in range(2, 6)]
        + [cycle(k) for k in range(3, 7)]
        + connected_graphs(4)
    )
    seen = set()
    out = []
    for h in listed:
        key = canonical_graph6(h)
        if key not in seen:
            seen.add(key)
            out.append(h)
    return tuple(out)


def default_mobility_corpus() -> list[Graph]:
    """K1..K4, P2..P5, C3..C6 and all connected graphs on at most 4 vertices."""
    return list(_default_mobility_corpus())
