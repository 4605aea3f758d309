"""Exact warmth through d-stable families, plus cheap upper bounds.

A family of nonempty proper vertex subsets is d-stable when every member equals
the intersection of the neighborhoods of at most d members (repetition allowed).
A graph admits a d-stable family exactly when it is not (d+2)-warm, so the
warmth is ``d* + 1`` for the least such ``d*``.

For n <= 16 the greatest d-stable family is found on the full subset lattice.
Each round computes the set of neighborhood values available from the current
family, closes it under (d-1) pairwise meets with a superset-sum transform, and
drops every member that is not in the closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InternalAssertion, InvalidParameter, NoEdges, TooLargeForExact
from .graph import Graph, degree_stats, members, neighborhood_set

EXACT_MAX_VERTICES = 16


@dataclass(frozen=True)
class SubsetFamily:
    owner_n: int
    members: frozenset[int]

    def __post_init__(self):
        full = (1 << self.owner_n) - 1
        for a in self.members:
            if a <= 0 or a & ~full:
                raise InvalidParameter(f"member {a:#x} is empty or outside the vertex set")
            if a == full:
                raise InvalidParameter("the full vertex set cannot be a family member")

    @classmethod
    def of(cls, n: int, sets: Iterable[int]) -> "SubsetFamily":
        return cls(n, frozenset(sets))

    @classmethod
    def singletons(cls, g: Graph) -> "SubsetFamily":
        return cls(g.n, frozenset(1 << v for v in range(g.n)))

    def __len__(self):
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def sorted(self) -> list[int]:
        return sorted(self.members)


@dataclass
class StabilityCertificate:
    d: int
    family: SubsetFamily
    witnesses: dict[int, tuple[int, ...]] = field(repr=False)

    def replay(self, g: Graph) -> bool:
        """Check every witness tuple against ``g`` from scratch."""
        if g.n != self.family.owner_n:
            return False
        if set(self.witnesses) != set(self.family.members):
            return False
        for a, tup in self.witnesses.items():
            if not 1 <= len(tup) <= self.d:
                return False
            if any(b not in self.family for b in tup):
                return False
            if intersect_neighborhoods(g, list(tup)) != a:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.family.owner_n,
            "members": [hex(a) for a in self.family.sorted()],
            "witnesses": {
                hex(a): [hex(b) for b in self.witnesses[a]] for a in self.family.sorted()
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "StabilityCertificate":
        n = data["n"]
        family = SubsetFamily(n, frozenset(int(a, 16) for a in data["members"]))
        witnesses = {
            int(a, 16): tuple(int(b, 16) for b in tup) for a, tup in data["witnesses"].items()
        }
        return cls(data["d"], family, witnesses)


def intersect_neighborhoods(g: Graph, sets: Sequence[int]) -> int:
    if not sets:
        raise InvalidParameter("need at least one set to intersect")
    out = g.full_mask
    for a in sets:
        out &= neighborhood_set(g, a)
    return out


# -- exact cover search on explicit families ---------------------------------


def _cover(need: int, excluders: list[int], limit: int) -> Optional[list[int]]:
    """Indices of at most ``limit`` excluders whose union contains ``need``."""
    if need == 0:
        return []
    if limit == 0:
        return None
    best = None
    rest = need
    while rest:
        bit = rest & -rest
        rest ^= bit
        opts = [i for i, e in enumerate(excluders) if e & bit]
        if not opts:
            return None
        if best is None or len(opts) < len(best):
            best = opts
    best.sort(key=lambda i: (-bin(excluders[i] & need).count("1"), i))
    for i in best:
        sub = _cover(need & ~excluders[i], excluders, limit - 1)
        if sub is not None:
            return [i] + sub
    return None


def _drop_dominated(excluders: list[int]) -> list[int]:
    kept = []
    for e in sorted(set(excluders), key=lambda x: -bin(x).count("1")):
        if e and not any(e & ~k == 0 for k in kept):
            kept.append(e)
    return kept


def _representation(
    a: int, full: int, values: dict[int, int], limit: int
) -> Optional[tuple[int, ...]]:
    """Members (via ``values``: neighborhood -> least member) meeting exactly in ``a``."""
    sup = {x: b for x, b in values.items() if x & a == a}
    if not sup:
        return None
    meet = full
    for x in sup:
        meet &= x
    if meet != a:
        return None
    need = full & ~a
    excl_of = {}
    for x in sorted(sup):
        excl_of.setdefault(full & ~x, x)
    pool = _drop_dominated(list(excl_of))
    chosen = None
    for k in range(1, limit + 1):
        chosen = _cover(need, pool, k)
        if chosen is not None:
            break
    if chosen is None:
        return None
    return tuple(sorted(sup[excl_of[pool[i]]] for i in chosen))


def is_d_stable(
    g: Graph, family: SubsetFamily, d: int
) -> tuple[bool, Optional[StabilityCertificate]]:
    if d < 1:
        raise InvalidParameter("arity d must be at least 1")
    if family.owner_n != g.n:
        raise InvalidParameter("family and graph disagree on the vertex count")
    full = g.full_mask
    values: dict[int, int] = {}
    for b in family.sorted():
        values.setdefault(neighborhood_set(g, b), b)
    witnesses = {}
    for a in family.sorted():
        rep = _representation(a, full, values, d)
        if rep is None:
            return False, None
        witnesses[a] = rep
    return True, StabilityCertificate(d, family, witnesses)


# -- subset-lattice fixed point (n <= 16) -------------------------------------


def neighborhood_table(g: Graph) -> np.ndarray:
    """``table[B] = N(B)`` for every subset code ``B``."""
    if g.n > EXACT_MAX_VERTICES:
        raise TooLargeForExact(f"subset lattice of {g.n} vertices is too large")
    table = np.zeros(1 << g.n, dtype=np.int64)
    for i in range(g.n):
        table[1 << i : 2 << i] = table[: 1 << i] | g.adj[i]
    return table


def _superset_sum(f: np.ndarray, n: int) -> np.ndarray:
    f = f.copy()
    for i in range(n):
        b = 1 << i
        view = f.reshape(-1, 2 * b)
        view[:, :b] += view[:, b:]
    return f


def _superset_diff(f: np.ndarray, n: int) -> np.ndarray:
    f = f.copy()
    for i in range(n):
        b = 1 << i
        view = f.reshape(-1, 2 * b)
        view[:, :b] -= view[:, b:]
    return f


def meet_closure(avail: np.ndarray, n: int, arity: int) -> list[np.ndarray]:
    """Boolean masks ``R_1..R_arity`` where ``R_k`` marks intersections of k values.

    ``avail`` is a boolean indicator over subset codes.  The meet of two
    indicators is computed by multiplying superset sums and inverting.
    """
    base = avail.astype(np.int64)
    base_sum = _superset_sum(base, n)
    levels = [avail.astype(bool)]
    for _ in range(arity - 1):
        prev = levels[-1]
        prod = _superset_sum(prev.astype(np.int64), n) * base_sum
        nxt = _superset_diff(prod, n) > 0
        if np.array_equal(nxt, prev):
            levels.extend([prev] * (arity - len(levels)))
            break
        levels.append(nxt)
    return levels


def _greatest_stable(table: np.ndarray, n: int, d: int) -> np.ndarray:
    size = 1 << n
    alive = np.ones(size, dtype=bool)
    alive[0] = False
    alive[size - 1] = False
    while alive.any():
        avail = np.zeros(size, dtype=bool)
        avail[table[alive]] = True
        keep = alive & meet_closure(avail, n, d)[-1]
        if np.array_equal(keep, alive):
            break
        alive = keep
    return alive


def _certificate_from_mask(g: Graph, table: np.ndarray, alive: np.ndarray, d: int):
    n = g.n
    alive_codes = np.flatnonzero(alive)
    nvals = table[alive_codes]
    vals, first = np.unique(nvals, return_index=True)
    rep = dict(zip(vals.tolist(), alive_codes[first].tolist()))
    avail = np.zeros(1 << n, dtype=bool)
    avail[vals] = True
    levels = meet_closure(avail, n, d)
    level_codes = [np.flatnonzero(r) for r in levels]

    def decompose(a: int) -> list[int]:
        k = next(i for i, r in enumerate(levels) if r[a])
        if k == 0:
            return [a]
        sup = vals[(vals & a) == a]
        zc = level_codes[k - 1]
        zc = zc[(zc & a) == a]
        for x in sup.tolist():
            ok = zc[(zc & x) == a]
            if ok.size:
                return [x] + decompose(int(ok[0]))
        raise InternalAssertion(f"member {a:#x} lost its decomposition")

    witnesses = {}
    for a in alive_codes.tolist():
        witnesses[a] = tuple(sorted(rep[x] for x in decompose(a)))
    family = SubsetFamily(n, frozenset(alive_codes.tolist()))
    return StabilityCertificate(d, family, witnesses)


def greatest_stable_family(g: Graph, d: int) -> Optional[SubsetFamily]:
    if d < 1:
        raise InvalidParameter("arity d must be at least 1")
    table = neighborhood_table(g)
    alive = _greatest_stable(table, g.n, d)
    if not alive.any():
        return None
    return SubsetFamily(g.n, frozenset(np.flatnonzero(alive).tolist()))


def exists_d_stable(g: Graph, d: int) -> Optional[StabilityCertificate]:
    if d < 1:
        raise InvalidParameter("arity d must be at least 1")
    table = neighborhood_table(g)
    alive = _greatest_stable(table, g.n, d)
    if not alive.any():
        return None
    return _certificate_from_mask(g, table, alive, d)


class WarmthResult:
    """Warmth of a graph together with the minimal stable arity.

    The certificate for ``d_star`` is built on first access; large families
    make it noticeably more expensive than the warmth value itself.
    """

    def __init__(self, g: Graph, d_star: int, table: np.ndarray, alive: np.ndarray):
        self.graph = g
        self.d_star = d_star
        self.warmth = d_star + 1
        self._table = table
        self._alive = alive

    @cached_property
    def certificate(self) -> StabilityCertificate:
        return _certificate_from_mask(self.graph, self._table, self._alive, self.d_star)

    @property
    def family_size(self) -> int:
        return int(self._alive.sum())

    def __repr__(self):
        return f"WarmthResult(warmth={self.warmth}, d_star={self.d_star})"


def warmth_exact(g: Graph) -> WarmthResult:
    if g.edge_count == 0:
        raise NoEdges("warmth is left undefined for edgeless graphs")
    table = neighborhood_table(g)
    for d in range(1, g.n + 1):
        alive = _greatest_stable(table, g.n, d)
        if alive.any():
            return WarmthResult(g, d, table, alive)
    raise InternalAssertion(f"no d-stable family for any d <= {g.n}")


def singleton_representatives(g: Graph, v: int, limit: Optional[int] = None):
    """Fewest neighbors of ``v`` whose neighborhoods meet exactly in ``{v}``."""
    nbrs = members(g.adj[v])
    if not nbrs:
        return None
    full = g.full_mask
    values = {}
    for u in nbrs:
        values.setdefault(g.adj[u], 1 << u)
    rep = _representation(1 << v, full, values, limit or len(nbrs))
    if rep is None:
        return None
    return [b.bit_length() - 1 for b in rep]


def singleton_min_stability(g: Graph) -> Optional[int]:
    if g.n < 2:
        return None
    worst = 0
    for v in range(g.n):
        rep = singleton_representatives(g, v)
        if rep is None:
            return None
        worst = max(worst, len(rep))
    return worst


def codegree_warmth_ub(g: Graph) -> Optional[int]:
    stats = degree_stats(g)
    if not stats.codegree_defined:
        return None
    k = stats.max_codegree + 1
    if k <= stats.min_degree:
        return k + 1
    return None
