"""Truncated branching trees and boundary extendability.

Nodes of the s-branching tree are labeled breadth first: the root is 0 and the
children of node i are ``i*s + 1 .. i*s + s``.  The boundary of a truncated
tree is the root together with its leaves.  A graph has property P(s, v) when
every boundary assignment extends to a homomorphism of the whole truncated tree;
such a graph has warmth at least s + 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from .errors import (
    InvalidParameter,
    NotCertifiable,
    RegimeViolation,
    TooLargeForExhaustive,
)
from .graph import Graph, members
from .warmth import neighborhood_table

EXHAUSTIVE_LIMIT = 10**8
_CHUNK = 1 << 18


@dataclass(frozen=True)
class TruncatedTree:
    s: int
    v: int

    def __post_init__(self):
        if self.s < 1:
            raise InvalidParameter("branching factor must be at least 1")
        if self.v < self.s + 1:
            raise InvalidParameter(f"need at least {self.s + 1} vertices, got {self.v}")
        if (self.v - 1) % self.s:
            raise InvalidParameter(f"v={self.v} is not 1 modulo s={self.s}")

    def parent(self, i: int) -> Optional[int]:
        return None if i == 0 else (i - 1) // self.s

    def children(self, i: int) -> list[int]:
        return [c for c in range(i * self.s + 1, i * self.s + self.s + 1) if c < self.v]

    @property
    def internal(self) -> list[int]:
        """Nodes with children, the root included."""
        return list(range((self.v - 1) // self.s))

    @property
    def leaves(self) -> list[int]:
        return list(range((self.v - 1) // self.s, self.v))

    @property
    def boundary(self) -> list[int]:
        return [0] + self.leaves

    @property
    def interior_count(self) -> int:
        """Internal nodes strictly between the root and the leaves."""
        return self.v - len(self.leaves) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [((i - 1) // self.s, i) for i in range(1, self.v)]


def truncated_tree(s: int, v: int) -> TruncatedTree:
    return TruncatedTree(s, v)


@dataclass(frozen=True)
class BoundaryAssignment:
    tree: TruncatedTree
    values: Mapping[int, int]

    def __post_init__(self):
        if set(self.values) != set(self.tree.boundary):
            raise InvalidParameter("assignment must be defined exactly on the boundary")

    @classmethod
    def from_sequence(cls, tree: TruncatedTree, seq) -> "BoundaryAssignment":
        return cls(tree, dict(zip(tree.boundary, (int(x) for x in seq))))

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.values[i] for i in self.tree.boundary)


@dataclass(frozen=True)
class ExtendWitness:
    phi: tuple[int, ...]

    def is_valid(self, g: Graph, tree: TruncatedTree, f: BoundaryAssignment) -> bool:
        if len(self.phi) != tree.v:
            return False
        if any(self.phi[i] != x for i, x in f.values.items()):
            return False
        return all(g.has_edge(self.phi[a], self.phi[b]) for a, b in tree.edges())


def _allowed_sets(g: Graph, tree: TruncatedTree, values: Mapping[int, int]) -> list[int]:
    allowed = [0] * tree.v
    for leaf in tree.leaves:
        allowed[leaf] = 1 << values[leaf]
    for u in reversed(tree.internal):
        acc = g.full_mask
        for c in tree.children(u):
            acc &= g.neighborhood(allowed[c])
        allowed[u] = acc
    return allowed


def is_extendable(
    g: Graph, tree: TruncatedTree, f: BoundaryAssignment
) -> Optional[ExtendWitness]:
    values = f.values
    allowed = _allowed_sets(g, tree, values)
    root = values[0]
    if not allowed[0] >> root & 1:
        return None
    phi = [0] * tree.v
    phi[0] = root
    for i in range(1, tree.v):
        if i in values and i != 0:
            phi[i] = values[i]
        else:
            choice = allowed[i] & g.adj[phi[tree.parent(i)]]
            phi[i] = members(choice)[0]
    return ExtendWitness(tuple(phi))


# -- batched checks ------------------------------------------------------------


def _neighborhood_batch(g: Graph, masks: np.ndarray, table=None) -> np.ndarray:
    if table is not None:
        return table[masks]
    out = np.zeros_like(masks)
    for i in range(g.n):
        hit = (masks >> np.uint64(i)) & np.uint64(1)
        out |= hit * np.uint64(g.adj[i])
    return out


def _extendable_batch(g: Graph, tree: TruncatedTree, vals: np.ndarray) -> np.ndarray:
    """Row-wise extendability for boundary values ``vals`` (rows x |D|)."""
    boundary = tree.boundary
    col = {label: j for j, label in enumerate(boundary)}
    allowed: dict[int, np.ndarray] = {}
    one = np.uint64(1)
    table = neighborhood_table(g).astype(np.uint64) if g.n <= 12 else None
    for leaf in tree.leaves:
        allowed[leaf] = one << vals[:, col[leaf]].astype(np.uint64)
    full = np.uint64(g.full_mask)
    for u in reversed(tree.internal):
        acc = np.full(vals.shape[0], full, dtype=np.uint64)
        for c in tree.children(u):
            acc &= _neighborhood_batch(g, allowed[c], table)
        allowed[u] = acc
    root = vals[:, col[0]].astype(np.uint64)
    return ((allowed[0] >> root) & one).astype(bool)


@dataclass(frozen=True)
class PropertyVerdict:
    status: str  # holds_exhaustive | holds_sampled | fails
    checked: int
    counterexample: Optional[BoundaryAssignment] = None

    @property
    def holds(self) -> bool:
        return self.status != "fails"

    def to_json(self) -> dict:
        out = {"status": self.status, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = {str(k): v for k, v in self.counterexample.values.items()}
        return out


def _odometer_digits(start: int, stop: int, base: int, width: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((idx.size, width), dtype=np.int64)
    for j in range(width - 1, -1, -1):
        digits[:, j] = idx % base
        idx //= base
    return digits


def has_property_P(
    g: Graph,
    s: int,
    v: int,
    mode: str = "exhaustive",
    trials: int = 1000,
    seed: int = 0,
) -> PropertyVerdict:
    tree = TruncatedTree(s, v)
    width = len(tree.boundary)
    if mode == "exhaustive":
        total = g.n**width
        if total > EXHAUSTIVE_LIMIT:
            raise TooLargeForExhaustive(
                f"{g.n}^{width} = {total} boundary assignments exceed {EXHAUSTIVE_LIMIT}"
            )
        for start in range(0, total, _CHUNK):
            stop = min(total, start + _CHUNK)
            vals = _odometer_digits(start, stop, g.n, width)
            ok = _extendable_batch(g, tree, vals)
            if not ok.all():
                bad = vals[int(np.argmin(ok))]
                return PropertyVerdict(
                    "fails", start + int(np.argmin(ok)) + 1,
                    BoundaryAssignment.from_sequence(tree, bad),
                )
        return PropertyVerdict("holds_exhaustive", total)
    if mode == "sampled":
        if trials < 1:
            raise InvalidParameter("sampled mode needs at least one trial")
        rng = np.random.default_rng(seed)
        vals = rng.integers(0, g.n, size=(trials, width))
        ok = _extendable_batch(g, tree, vals)
        if not ok.all():
            first = int(np.argmin(ok))
            return PropertyVerdict(
                "fails", first + 1, BoundaryAssignment.from_sequence(tree, vals[first])
            )
        return PropertyVerdict("holds_sampled", trials)
    raise InvalidParameter(f"unknown mode {mode!r}")


def warmth_lb_from_P(g: Graph, s: int, v: int) -> int:
    verdict = has_property_P(g, s, v, mode="exhaustive")
    if verdict.status != "holds_exhaustive":
        raise NotCertifiable(f"property P fails for s={s}, v={v}")
    return s + 2


# -- parameter choices -----------------------------------------------------------


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x).limit_denominator(10**9)


def choose_v(s: int, epsilon) -> int:
    """Smallest v = 1 (mod s) strictly inside the window s^2(1+1/eps)+1 .. +3s."""
    if s < 1:
        raise InvalidParameter("branching factor must be at least 1")
    eps = _exact(epsilon)
    if not 0 < eps <= 1:
        raise InvalidParameter(f"epsilon must lie in (0, 1], got {epsilon}")
    base = s * s * (1 + 1 / eps)
    lo, hi = base + 1, base + 3 * s + 1
    v = math.floor(lo) + 1
    while (v - 1) % s:
        v += 1
    assert lo < v < hi, "window misses the residue class"
    return v


def sparse_branching(alpha) -> int:
    a = _exact(alpha)
    if a <= 0:
        raise RegimeViolation("alpha must be positive")
    return math.ceil(1 / a - 1)


def dense_branching(delta, n: int) -> int:
    if not 0 < delta < 1 or n < 4:
        raise RegimeViolation("dense regime needs 0 < delta < 1 and n >= 4")
    return math.ceil((1 - delta) * math.log2(n))


def epsilon_for(regime: str, alpha=None, delta=None, n: Optional[int] = None):
    """Slack epsilon of the lower-bound construction (a Fraction when sparse)."""
    if regime == "sparse":
        if alpha is None:
            raise InvalidParameter("sparse regime needs alpha")
        a = _exact(alpha)
        eps = 1 - a * sparse_branching(a)
    elif regime == "dense":
        if delta is None or n is None:
            raise InvalidParameter("dense regime needs delta and n")
        s = dense_branching(delta, n)
        eps = 1 - (s - 2) / math.log2(n)
    else:
        raise InvalidParameter(f"unknown regime {regime!r}")
    if eps <= 0:
        raise RegimeViolation(f"epsilon = {float(eps)} is not positive")
    return eps
