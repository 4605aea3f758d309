"""Exact chromatic number by saturation-degree branch and bound."""

from __future__ import annotations

from .errors import TooLarge
from .graph import Graph, members, popcount

CHROMATIC_MAX_VERTICES = 32


def greedy_clique(g: Graph) -> int:
    """Size of a clique grown greedily from every start vertex."""
    best = 1 if g.n else 0
    for start in range(g.n):
        cand = g.adj[start]
        size = 1
        while cand:
            v = max(members(cand), key=lambda u: (popcount(g.adj[u] & cand), -u))
            size += 1
            cand &= g.adj[v]
        best = max(best, size)
    return best


def dsatur_coloring(g: Graph) -> list[int]:
    color = [-1] * g.n
    classes: list[int] = []
    for _ in range(g.n):
        v = _pick_vertex(g, color, classes)
        c = next((i for i, m in enumerate(classes) if not m & g.adj[v]), len(classes))
        if c == len(classes):
            classes.append(0)
        classes[c] |= 1 << v
        color[v] = c
    return color


def _pick_vertex(g: Graph, color: list[int], classes: list[int]) -> int:
    uncolored = [v for v in range(g.n) if color[v] < 0]
    free = sum(1 << v for v in uncolored)
    return max(
        uncolored,
        key=lambda v: (
            sum(1 for m in classes if m & g.adj[v]),
            popcount(g.adj[v] & free),
            -v,
        ),
    )


def chromatic_number(g: Graph) -> int:
    if g.n > CHROMATIC_MAX_VERTICES:
        raise TooLarge(f"exact coloring is limited to {CHROMATIC_MAX_VERTICES} vertices")
    if g.edge_count == 0:
        return 1
    lower = greedy_clique(g)
    upper = max(dsatur_coloring(g)) + 1
    if lower == upper:
        return upper
    best = upper
    color = [-1] * g.n
    classes: list[int] = []

    def search(colored: int) -> bool:
        nonlocal best
        if colored == g.n:
            best = len(classes)
            return best == lower
        v = _pick_vertex(g, color, classes)
        for c in range(len(classes)):
            if not classes[c] & g.adj[v]:
                classes[c] |= 1 << v
                color[v] = c
                done = search(colored + 1)
                classes[c] &= ~(1 << v)
                color[v] = -1
                if done:
                    return True
        if len(classes) + 1 < best:
            classes.append(1 << v)
            color[v] = len(classes) - 1
            done = search(colored + 1)
            classes.pop()
            color[v] = -1
            if done:
                return True
        return False

    search(0)
    return best
