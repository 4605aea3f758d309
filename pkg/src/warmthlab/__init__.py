"""Exact warmth, mobility bounds and random-graph experiments for small graphs."""

from .errors import WarmthLabError
from .formats import parse_graph6, write_graph6
from .graph import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    degree_stats,
    delete_edge,
    kneser,
    neighborhood_set,
    new_graph,
    path,
    petersen,
)
from .warmth import (
    SubsetFamily,
    codegree_warmth_ub,
    exists_d_stable,
    is_d_stable,
    singleton_min_stability,
    warmth_exact,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "SubsetFamily",
    "WarmthLabError",
    "codegree_warmth_ub",
    "complete",
    "complete_bipartite",
    "cycle",
    "degree_stats",
    "delete_edge",
    "exists_d_stable",
    "is_d_stable",
    "kneser",
    "neighborhood_set",
    "new_graph",
    "parse_graph6",
    "path",
    "petersen",
    "singleton_min_stability",
    "warmth_exact",
    "write_graph6",
]
