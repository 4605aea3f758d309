"""graph6 and plain edge-list serialization."""

from __future__ import annotations

from .errors import InvalidGraph, ParseError
from .graph import Graph, new_graph

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    return "~" + "".join(chr(63 + (n >> shift & 63)) for shift in (12, 6, 0))


def write_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        bits.extend(row >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    offset = 0
    if text.startswith(_HEADER):
        offset = len(_HEADER)
    if offset >= len(text):
        raise ParseError("empty graph6 string", offset)
    data = [ord(c) - 63 for c in text]
    for i in range(offset, len(data)):
        if not 0 <= data[i] <= 63:
            raise ParseError(f"byte {text[i]!r} outside the graph6 range", i)
    if data[offset] == 63:
        if len(data) < offset + 4:
            raise ParseError("truncated long header", len(data))
        if data[offset + 1] == 63:
            raise ParseError("graphs this large are not supported", offset + 1)
        n = data[offset + 1] << 12 | data[offset + 2] << 6 | data[offset + 3]
        offset += 4
    else:
        n = data[offset]
        offset += 1
    if n == 0:
        raise ParseError("graph6 string encodes an empty graph", offset - 1)
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[offset:]
    if len(body) < need:
        raise ParseError(f"body has {len(body)} bytes, expected {need}", len(data))
    if len(body) > need:
        raise ParseError(f"trailing bytes after {need}-byte body", offset + need)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    try:
        return new_graph(n, edges)
    except InvalidGraph as exc:
        raise ParseError(str(exc), 0) from exc


def read_graph6_lines(text: str) -> list[Graph]:
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


def write_edge_list(g: Graph) -> str:
    edges = list(g.edges())
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 2:
        raise ParseError("edge list must start with a 'n m' line", 0)
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise ParseError(f"malformed edge list: {exc}", 0) from exc
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", 0)
    try:
        return new_graph(n, edges)
    except InvalidGraph as exc:
        raise ParseError(str(exc), 0) from exc
