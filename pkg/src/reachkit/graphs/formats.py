"""
Text formats for graphs: a commented edge list and graph6.

The edge list is the human-facing format::

    # optional comment lines
    n m
    u v
    ...

graph6 is delegated to networkx after a byte-level sanity pass, so errors can
name the offending offset.
"""

import logging
from typing import List

import networkx as nx

from ..exceptions import GraphParseError
from .graph import Graph, normalize_edge

logger = logging.getLogger(__name__)

FORMATS = ('edgelist', 'graph6')
GRAPH6_HEADER = '>>graph6<<'


def _tokens(raw: str, lineno: int) -> List[int]:
    try:
        return [int(token) for token in raw.split()]
    except ValueError:
        raise GraphParseError(f"non-integer token in {raw.strip()!r}", line=lineno) from None


def parse_edgelist(text: str) -> Graph:
    lines = [
        (lineno, raw)
        for lineno, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith('#')
    ]
    if not lines:
        raise GraphParseError("missing 'n m' header", line=1)

    header_line, header = lines[0]
    values = _tokens(header, header_line)
    if len(values) != 2 or values[0] < 0 or values[1] < 0:
        raise GraphParseError("header must be two non-negative integers 'n m'", line=header_line)
    n, m = values

    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else header_line
        raise GraphParseError(f"header announces {m} edges but {len(body)} follow", line=last)

    edges = set()
    for lineno, raw in body:
        pair = _tokens(raw, lineno)
        if len(pair) != 2:
            raise GraphParseError("edge line must hold exactly two vertices", line=lineno)
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex index out of range 0..{n - 1}", line=lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", line=lineno)
        edge = normalize_edge(u, v)
        if edge in edges:
            raise GraphParseError(f"duplicate edge {u} {v}", line=lineno)
        edges.add(edge)
    return Graph(n, frozenset(edges))


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    start = 0
    if data.startswith(GRAPH6_HEADER):
        start = len(GRAPH6_HEADER)
        data = data[start:]
    if not data:
        raise GraphParseError("empty graph6 string", offset=start)
    for i, char in enumerate(data):
        if not 63 <= ord(char) <= 126:
            raise GraphParseError(f"byte {char!r} outside the graph6 range 63..126", offset=start + i)
    try:
        graph = nx.from_graph6_bytes(data.encode('ascii'))
    except (nx.NetworkXError, ValueError) as e:
        raise GraphParseError(f"malformed graph6: {e}", offset=start + len(data)) from None
    return Graph.from_networkx(graph)


def parse_graph(text: str, format: str = 'edgelist') -> Graph:
    """Decode ``text`` in the named format."""
    if format == 'edgelist':
        return parse_edgelist(text)
    if format == 'graph6':
        return parse_graph6(text)
    raise GraphParseError(f"unknown format {format!r}; expected one of {FORMATS}")


def serialize_graph(graph: Graph, format: str = 'edgelist') -> str:
    """Encode ``graph``; parse_graph inverts this for both formats."""
    if format == 'edgelist':
        lines = [f"{graph.n} {graph.m}"]
        lines.extend(f"{u} {v}" for u, v in graph.sorted_edges())
        return "\n".join(lines)
    if format == 'graph6':
        encoded = nx.to_graph6_bytes(graph.to_networkx(), nodes=range(graph.n), header=False)
        return encoded.decode('ascii').strip()
    raise GraphParseError(f"unknown format {format!r}; expected one of {FORMATS}")


def guess_format(path: str) -> str:
    """graph6 for .g6/.graph6 files, edge list otherwise."""
    lowered = path.lower()
    if lowered.endswith('.g6') or lowered.endswith('.graph6'):
        return 'graph6'
    return 'edgelist'
