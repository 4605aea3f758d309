"""Regenerate src/warmthlab/data/connected_le7.g6 from the networkx graph atlas.

The atlas lists every graph on at most 7 vertices up to isomorphism.  Only
connected graphs with at least one vertex are kept, one graph6 string per line,
ordered by vertex count and then by atlas index.
"""

from pathlib import Path

import networkx as nx

from warmthlab.formats import write_graph6
from warmthlab.graph import new_graph

OUT = Path(__file__).resolve().parents[1] / "src" / "warmthlab" / "data" / "connected_le7.g6"


def main():
    lines = []
    for atlas_graph in nx.graph_atlas_g():
        n = atlas_graph.number_of_nodes()
        if n == 0 or not nx.is_connected(atlas_graph):
            continue
        lines.append(write_graph6(new_graph(n, atlas_graph.edges())))
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {OUT}")


if __name__ == "__main__":
    main()
