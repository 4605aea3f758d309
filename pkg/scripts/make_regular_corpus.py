"""Regenerate src/warmthlab/data/regular_8_10.g6: connected regular graphs on 8..10 vertices.

Any two d-regular graphs on the same vertex set are joined by a sequence of
double-edge switches (ab, cd -> ac, bd), so a breadth-first search over
isomorphism classes, starting from one d-regular graph and applying every
switch, reaches all of them.  Classes are told apart with a codegree and
spectrum invariant (colour refinement cannot split regular graphs) followed by
an exact isomorphism test.  Disconnected classes are explored
but not written.
"""

from collections import defaultdict, deque
from itertools import combinations
from pathlib import Path

import networkx as nx
import numpy as np

from warmthlab.formats import write_graph6
from warmthlab.graph import new_graph

OUT = Path(__file__).resolve().parents[1] / "src" / "warmthlab" / "data" / "regular_8_10.g6"


def _switches(g: nx.Graph):
    edges = list(g.edges())
    for (a, b), (c, d) in combinations(edges, 2):
        if len({a, b, c, d}) < 4:
            continue
        for x, y, u, v in ((a, c, b, d), (a, d, b, c)):
            if g.has_edge(x, y) or g.has_edge(u, v):
                continue
            h = g.copy()
            h.remove_edges_from([(a, b), (c, d)])
            h.add_edges_from([(x, y), (u, v)])
            yield h


def _invariant(g: nx.Graph):
    a = nx.to_numpy_array(g, nodelist=sorted(g), dtype=np.int64)
    co = a @ a
    off = ~np.eye(len(a), dtype=bool)
    profile = sorted(
        (tuple(sorted(co[v][a[v] == 1])), tuple(sorted(co[v][(a[v] == 0) & off[v]])))
        for v in range(len(a))
    )
    spectrum = tuple(np.round(np.linalg.eigvalsh(a), 6))
    return tuple(profile), spectrum


def regular_classes(n: int, d: int) -> list[nx.Graph]:
    start = nx.circulant_graph(n, range(1, d // 2 + 1))
    if d % 2:
        start.add_edges_from((i, i + n // 2) for i in range(n // 2))
    buckets = defaultdict(list)
    found = []

    def add(h):
        key = _invariant(h)
        if any(nx.is_isomorphic(h, x) for x in buckets[key]):
            return False
        buckets[key].append(h)
        found.append(h)
        return True

    add(start)
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for h in _switches(g):
            if add(h):
                queue.append(h)
    return found


def main():
    lines = []
    for n in range(8, 11):
        for d in range(2, n):
            if n * d % 2:
                continue
            graphs = [g for g in regular_classes(n, d) if nx.is_connected(g)]
            codes = sorted(write_graph6(new_graph(n, g.edges())) for g in graphs)
            print(f"n={n} d={d}: {len(codes)} connected classes")
            lines.extend(codes)
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {OUT}")


if __name__ == "__main__":
    main()
