"""Simple undirected graphs on at most 64 vertices, stored as adjacency bitmasks.

A vertex set is a plain ``int`` whose bit ``i`` marks vertex ``i``.  Graphs are
immutable; every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, NamedTuple

from .errors import EdgeNotFound, InvalidGraph, InvalidParameter, TooLarge

MAX_VERTICES = 64

Edge = tuple[int, int]


def vertex_set(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    """Vertices of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise InvalidGraph(f"vertex count {self.n} outside [1, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise InvalidGraph("adjacency length does not match vertex count")
        full = self.full_mask
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise InvalidGraph(f"row {v} has bits beyond vertex {self.n - 1}")
            if row >> v & 1:
                raise InvalidGraph(f"loop at vertex {v}")
            for u in members(row):
                if not self.adj[u] >> v & 1:
                    raise InvalidGraph(f"asymmetric adjacency between {u} and {v}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            for off in members(row):
                yield (u, u + 1 + off)

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def neighborhood(self, mask: int) -> int:
        return neighborhood_set(self, mask)

    def is_bipartite(self) -> bool:
        side = [-1] * self.n
        for start in range(self.n):
            if side[start] >= 0:
                continue
            side[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for w in members(self.adj[u]):
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        stack.append(w)
                    elif side[w] == side[u]:
                        return False
        return True

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            frontier = neighborhood_set(self, frontier) & ~seen
            seen |= frontier
        return seen == self.full_mask

    def is_regular(self) -> bool:
        return len({self.degree(v) for v in range(self.n)}) == 1


def new_graph(n: int, edges: Iterable[Edge]) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise InvalidGraph(f"vertex count {n} outside [1, {MAX_VERTICES}]")
    adj = [0] * n
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidGraph(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise InvalidGraph(f"loop edge at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InvalidGraph(f"duplicate edge {key}")
        seen.add(key)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def neighborhood_set(g: Graph, mask: int) -> int:
    """Union of the neighborhoods of the vertices in ``mask``."""
    out = 0
    adj = g.adj
    while mask:
        low = mask & -mask
        out |= adj[low.bit_length() - 1]
        mask ^= low
    return out


def delete_edge(g: Graph, e: Edge) -> Graph:
    u, v = e
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise EdgeNotFound(f"edge ({u}, {v}) not in graph")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj))


def add_edge(g: Graph, e: Edge) -> Graph:
    u, v = e
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        raise InvalidGraph(f"cannot add edge ({u}, {v})")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj))


def induced_subgraph(g: Graph, vertices: list[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    return new_graph(len(vertices), edges)


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return new_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


# -- generators ---------------------------------------------------------------


def complete(n: int) -> Graph:
    return new_graph(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return new_graph(n, [])


def path(n: int) -> Graph:
    return new_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter(f"cycle needs at least 3 vertices, got {n}")
    return new_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise InvalidParameter("both sides of a complete bipartite graph must be nonempty")
    return new_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def kneser_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of range(n) in colex order (the Kneser vertex order)."""
    return sorted(combinations(range(n), k), key=lambda c: c[::-1])


def kneser(n: int, k: int) -> Graph:
    if k < 1 or n <= 2 * k:
        raise InvalidParameter(f"kneser graph needs n > 2k >= 2, got n={n}, k={k}")
    if comb(n, k) > MAX_VERTICES:
        raise TooLarge(f"kneser({n},{k}) has {comb(n, k)} vertices, more than {MAX_VERTICES}")
    subsets = [vertex_set(c) for c in kneser_subsets(n, k)]
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if subsets[i] & subsets[j] == 0
    ]
    return new_graph(len(subsets), edges)


def petersen() -> Graph:
    return kneser(5, 2)


# -- statistics ---------------------------------------------------------------


class DegreeStats(NamedTuple):
    min_degree: int
    max_degree: int
    max_codegree: int
    codegree_defined: bool


def codegree(g: Graph, u: int, v: int) -> int:
    return popcount(g.adj[u] & g.adj[v])


def degree_stats(g: Graph) -> DegreeStats:
    degrees = [g.degree(v) for v in range(g.n)]
    if g.n < 2:
        return DegreeStats(min(degrees), max(degrees), 0, False)
    maxc = max(codegree(g, u, v) for u, v in combinations(range(g.n), 2))
    return DegreeStats(min(degrees), max(degrees), maxc, True)
