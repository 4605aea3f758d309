"""Seeded random graphs: G(n, p), uniform random regular graphs, codegree report.

Every draw comes from a numpy PCG64 stream whose seed is derived from a master
seed and a tuple of integer keys through splitmix64, so trial ``i`` of an
experiment is reproducible on its own, whatever order trials run in.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations
from statistics import mean
from typing import NamedTuple, Optional

import numpy as np

from .errors import GenerationFailed, InvalidParameter
from .graph import MAX_VERTICES, Graph, codegree, new_graph

MASK64 = (1 << 64) - 1
GNP_STATS_MAX_VERTICES = 1024
REGULAR_MAX_REDRAWS = 100_000


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, *keys: int) -> int:
    state = splitmix64(master & MASK64)
    for k in keys:
        state = splitmix64(state ^ (k & MASK64))
    return state


def rng_for(master: int, *keys: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(master, *keys)))


def as_rng(seed) -> np.random.Generator:
    """Accept a Generator as is; derive one from an integer seed otherwise."""
    if isinstance(seed, np.random.Generator):
        return seed
    return rng_for(int(seed))


@dataclass(frozen=True)
class GnpParams:
    n: int
    p: Optional[float] = None
    alpha: Optional[float] = None
    mu: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameter("n must be positive")
        if (self.p is None) == (self.alpha is None):
            raise InvalidParameter("give exactly one of p or alpha")
        if self.p is not None and not 0 <= self.p <= 1:
            raise InvalidParameter(f"p={self.p} outside [0, 1]")

    @property
    def probability(self) -> float:
        if self.p is not None:
            return float(self.p)
        return min(1.0, max(0.0, self.mu * self.n ** (-self.alpha)))


def _edge_draws(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    return rng.random(n * (n - 1) // 2) < p


def gnp(params: GnpParams, rng) -> Graph:
    """Each pair u < v, in lexicographic order, is an edge with probability p."""
    rng = as_rng(rng)
    if params.n > MAX_VERTICES:
        raise InvalidParameter(f"graphs are limited to {MAX_VERTICES} vertices; use gnp_degrees")
    hits = _edge_draws(params.n, params.probability, rng)
    pairs = combinations(range(params.n), 2)
    return new_graph(params.n, [e for e, hit in zip(pairs, hits) if hit])


def gnp_seeded(params: GnpParams, master: int, trial: int) -> Graph:
    return gnp(params, rng_for(master, params.n, trial))


def gnp_degrees(params: GnpParams, rng) -> np.ndarray:
    """Degree sequence of G(n, p) for n up to 1024, without building the graph."""
    rng = as_rng(rng)
    n = params.n
    if n > GNP_STATS_MAX_VERTICES:
        raise InvalidParameter(f"n is limited to {GNP_STATS_MAX_VERTICES}")
    hits = _edge_draws(n, params.probability, rng)
    iu, ju = np.triu_indices(n, k=1)
    deg = np.zeros(n, dtype=np.int64)
    np.add.at(deg, iu[hits], 1)
    np.add.at(deg, ju[hits], 1)
    return deg


def _pairing(n: int, d: int, rng: np.random.Generator) -> Optional[list[tuple[int, int]]]:
    points = rng.permutation(np.repeat(np.arange(n), d)).reshape(-1, 2)
    u = points.min(axis=1)
    v = points.max(axis=1)
    if (u == v).any():
        return None
    codes = u * n + v
    if np.unique(codes).size != codes.size:
        return None
    return list(zip(u.tolist(), v.tolist()))


def random_regular(n: int, d: int, rng) -> Graph:
    """Uniform simple d-regular graph from the pairing model with full rejection.

    For d above (n-1)/2 the complement degree is sampled and complemented,
    which keeps the distribution uniform and the rejection rate low.
    """
    if not 0 <= d < n or n > MAX_VERTICES:
        raise InvalidParameter(f"need 0 <= d < n <= {MAX_VERTICES}, got n={n}, d={d}")
    if n * d % 2:
        raise InvalidParameter(f"n*d = {n * d} is odd")
    rng = as_rng(rng)
    flip = 2 * d > n - 1
    k = n - 1 - d if flip else d
    for _ in range(REGULAR_MAX_REDRAWS):
        edges = [] if k == 0 else _pairing(n, k, rng)
        if edges is not None:
            break
    else:
        raise GenerationFailed(f"no simple {k}-regular pairing in {REGULAR_MAX_REDRAWS} draws")
    if flip:
        present = set(edges)
        edges = [e for e in combinations(range(n), 2) if e not in present]
    return new_graph(n, edges)


def random_regular_seeded(n: int, d: int, master: int, trial: int) -> Graph:
    return random_regular(n, d, rng_for(master, n, d, trial))


class CodegreeReport(NamedTuple):
    min_codegree: int
    max_codegree: int
    mean_codegree: float
    reference: float


def codegree_report(g: Graph, d: int) -> CodegreeReport:
    """Observed pairwise codegrees next to the d^2/n reference value."""
    if any(g.degree(v) != d for v in range(g.n)):
        warnings.warn(f"graph is not {d}-regular", stacklevel=2)
    if g.n < 2:
        return CodegreeReport(0, 0, 0.0, d * d / g.n)
    values = [codegree(g, u, v) for u, v in combinations(range(g.n), 2)]
    return CodegreeReport(min(values), max(values), float(mean(values)), d * d / g.n)
