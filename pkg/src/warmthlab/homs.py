"""Homomorphism graphs, mobility upper bounds and Lovász certificates.

Homomorphisms H -> G are stored as integer rows (one column per vertex of H)
in lexicographic order.  Two homomorphisms are adjacent in Hom(H, G) when they
differ at exactly one vertex of H, so for each vertex of H the rows that agree
everywhere else form a clique; connectivity is computed on the incidence graph
between homomorphisms and these cliques.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .coloring import chromatic_number
from .errors import TooLarge
from .formats import parse_graph6, write_graph6
from .graph import Graph
from .warmth import warmth_exact

HOM_MAX_SOURCE = 8
HOM_MAX_TARGET = 16
HOM_MAX_COUNT = 4_000_000


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    return a


def hom_array(h: Graph, g: Graph) -> np.ndarray:
    if h.n > HOM_MAX_SOURCE or g.n > HOM_MAX_TARGET:
        raise TooLarge(
            f"homomorphism enumeration is limited to |V(H)| <= {HOM_MAX_SOURCE}"
            f" and |V(G)| <= {HOM_MAX_TARGET}"
        )
    a = _adjacency_matrix(g)
    rows = np.zeros((1, 0), dtype=np.int64)
    for x in range(h.n):
        allowed = np.ones((rows.shape[0], g.n), dtype=bool)
        for y in range(x):
            if h.has_edge(x, y):
                allowed &= a[rows[:, y]]
        r, c = np.nonzero(allowed)
        if r.size > HOM_MAX_COUNT:
            raise TooLarge(f"more than {HOM_MAX_COUNT} partial homomorphisms")
        rows = np.column_stack([rows[r], c])
    return rows


def enumerate_homs(h: Graph, g: Graph) -> list[tuple[int, ...]]:
    return [tuple(row) for row in hom_array(h, g).tolist()]


def is_hom(h: Graph, g: Graph, phi: Sequence[int]) -> bool:
    if len(phi) != h.n or any(not 0 <= x < g.n for x in phi):
        return False
    return all(g.has_edge(phi[u], phi[v]) for u, v in h.edges())


@dataclass
class HomGraph:
    source: Graph
    target: Graph
    homs: np.ndarray

    def __len__(self):
        return self.homs.shape[0]

    def _groups(self):
        """Per H-vertex group labels: rows sharing a label differ only there."""
        n = self.target.n
        weights = n ** np.arange(self.source.n, dtype=np.int64)
        codes = self.homs @ weights
        for i in range(self.source.n):
            key = codes - self.homs[:, i] * weights[i]
            _, labels = np.unique(key, return_inverse=True)
            yield labels.ravel()

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for labels in self._groups():
            order = np.argsort(labels, kind="stable")
            sorted_labels = labels[order]
            bounds = np.flatnonzero(np.diff(sorted_labels)) + 1
            for block in np.split(order, bounds):
                block = sorted(block.tolist())
                out.extend(
                    (block[a], block[b])
                    for a in range(len(block))
                    for b in range(a + 1, len(block))
                )
        return sorted(out)

    @property
    def edge_count(self) -> int:
        total = 0
        for labels in self._groups():
            sizes = np.bincount(labels)
            total += int((sizes * (sizes - 1) // 2).sum())
        return total


def hom_graph(h: Graph, g: Graph) -> HomGraph:
    return HomGraph(h, g, hom_array(h, g))


@dataclass(frozen=True)
class Connectivity:
    status: str  # empty | connected | disconnected
    components: Optional[np.ndarray] = None

    @property
    def count(self) -> int:
        return 0 if self.components is None else int(self.components.max()) + 1


def connectivity(hg: HomGraph) -> Connectivity:
    m = len(hg)
    if m == 0:
        return Connectivity("empty")
    rows, cols = [], []
    offset = m
    for labels in hg._groups():
        rows.append(np.arange(m))
        cols.append(labels + offset)
        offset += int(labels.max()) + 1
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    adj = coo_matrix((np.ones(r.size, dtype=np.int8), (r, c)), shape=(offset, offset))
    _, labels = connected_components(adj, directed=False)
    labels = labels[:m]
    # renumber in order of first appearance
    _, first = np.unique(labels, return_index=True)
    remap = np.empty(labels.max() + 1, dtype=np.int64)
    remap[labels[np.sort(first)]] = np.arange(first.size)
    comps = remap[labels]
    return Connectivity("connected" if first.size == 1 else "disconnected", comps)


# -- mobility -------------------------------------------------------------------


@dataclass(frozen=True)
class MobilityWitness:
    value: int
    h: Graph
    hom_a: tuple[int, ...]
    hom_b: tuple[int, ...]

    def replay(self, g: Graph) -> bool:
        """Both homs valid, in different components of a nonempty Hom(H, G)."""
        if not (is_hom(self.h, g, self.hom_a) and is_hom(self.h, g, self.hom_b)):
            return False
        hg = hom_graph(self.h, g)
        conn = connectivity(hg)
        if conn.status != "disconnected":
            return False
        index = {tuple(row): i for i, row in enumerate(hg.homs.tolist())}
        ia, ib = index[self.hom_a], index[self.hom_b]
        max_degree = max(self.h.degree(v) for v in range(self.h.n))
        return conn.components[ia] != conn.components[ib] and self.value == max_degree + 1

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "h": write_graph6(self.h),
            "hom_a": list(self.hom_a),
            "hom_b": list(self.hom_b),
        }

    @classmethod
    def from_json(cls, data: dict) -> "MobilityWitness":
        return cls(
            data["value"], parse_graph6(data["h"]), tuple(data["hom_a"]), tuple(data["hom_b"])
        )


@dataclass(frozen=True)
class MobilityReport:
    ub_from_warmth: int
    witness: Optional[MobilityWitness]

    @property
    def ub_from_witness(self) -> Optional[int]:
        return None if self.witness is None else self.witness.value

    @property
    def best_ub(self) -> int:
        if self.witness is None:
            return self.ub_from_warmth
        return min(self.ub_from_warmth, self.witness.value)

    def to_json(self) -> dict:
        return {
            "ub_from_warmth": self.ub_from_warmth,
            "ub_from_witness": self.ub_from_witness,
            "best_ub": self.best_ub,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def find_witness(g: Graph, h: Graph) -> Optional[MobilityWitness]:
    hg = hom_graph(h, g)
    conn = connectivity(hg)
    if conn.status != "disconnected":
        return None
    comps = conn.components
    a = int(np.flatnonzero(comps == 0)[0])
    b = int(np.flatnonzero(comps == 1)[0])
    max_degree = max(h.degree(v) for v in range(h.n))
    rows = hg.homs
    return MobilityWitness(
        max_degree + 1, h, tuple(rows[a].tolist()), tuple(rows[b].tolist())
    )


def mobility_ub(
    g: Graph, corpus: Optional[Sequence[Graph]] = None, warmth: Optional[int] = None
) -> MobilityReport:
    if corpus is None:
        from .corpus import default_mobility_corpus

        corpus = default_mobility_corpus()
    if warmth is None:
        warmth = warmth_exact(g).warmth
    ranked = sorted(
        range(len(corpus)),
        key=lambda i: (max(corpus[i].degree(v) for v in range(corpus[i].n)), i),
    )
    # the first witness in max-degree order carries the smallest bound
    best = None
    for i in ranked:
        best = find_witness(g, corpus[i])
        if best is not None:
            break
    return MobilityReport(2 * warmth - 2, best)


@dataclass(frozen=True)
class LovaszVerdict:
    chi: int
    best_mobility_ub: int
    status: str  # certified | undecided

    def to_json(self) -> dict:
        return {"chi": self.chi, "best_mobility_ub": self.best_mobility_ub, "status": self.status}


def lovasz_verdict(chi: int, best_ub: int) -> LovaszVerdict:
    return LovaszVerdict(chi, best_ub, "certified" if best_ub <= chi else "undecided")


def lovasz_certificate(
    g: Graph, corpus: Optional[Sequence[Graph]] = None
) -> tuple[LovaszVerdict, MobilityReport]:
    report = mobility_ub(g, corpus)
    return lovasz_verdict(chromatic_number(g), report.best_ub), report
