"""
Graph input/output formats: graph6 short form, edge lists, graph6 list files, parts files
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import networkx as nx

from ..errors import GraphFormatError, GraphStructureError
from .core import HostGraph, SmallGraph

logger = logging.getLogger(__name__)

GRAPH6_MAX_VERTICES = 62
ATLAS_MAX_VERTICES = 7
_BIAS = 63


def _upper_triangle(n: int):
    """Bit order of graph6: column by column over the upper triangle"""
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str) -> SmallGraph:
    """
    Parse a short-form graph6 string (at most 62 vertices)

    Args:
        text: graph6 string; surrounding whitespace and an optional
            ``>>graph6<<`` header are ignored

    Returns:
        The encoded graph

    Raises:
        GraphFormatError: naming the byte offset of the first bad byte
    """
    data = text.strip()
    start = 0
    if data.startswith(">>graph6<<"):
        start = len(">>graph6<<")
    if len(data) <= start:
        raise GraphFormatError("empty graph6 string", start)
    raw = [ord(ch) for ch in data]
    for offset in range(start, len(raw)):
        if not 63 <= raw[offset] <= 126:
            raise GraphFormatError(f"character {data[offset]!r} outside the graph6 range 63..126", offset)
    n = raw[start] - _BIAS
    if n > GRAPH6_MAX_VERTICES:
        raise GraphFormatError("long-form graph6 headers (more than 62 vertices) are not supported", start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = raw[start + 1:]
    if len(payload) < nbytes:
        raise GraphFormatError(
            f"truncated payload: {n} vertices need {nbytes} bytes, found {len(payload)}",
            start + 1 + len(payload),
        )
    if len(payload) > nbytes:
        raise GraphFormatError(f"{len(payload) - nbytes} trailing bytes after payload", start + 1 + nbytes)
    bits = []
    for value in payload:
        value -= _BIAS
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphFormatError("nonzero padding bits", start + nbytes)
    edges = [pair for pair, bit in zip(_upper_triangle(n), bits) if bit]
    return SmallGraph.from_edges(n, edges)


def encode_graph6(graph: SmallGraph) -> str:
    """Short-form graph6 encoding, used for reports"""
    n = graph.n
    if n > GRAPH6_MAX_VERTICES:
        raise GraphFormatError(f"cannot encode {n} vertices in short-form graph6")
    bits = [1 if graph.has_edge(i, j) else 0 for i, j in _upper_triangle(n)]
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(n + _BIAS)]
    for pos in range(0, len(bits), 6):
        value = 0
        for bit in bits[pos:pos + 6]:
            value = value << 1 | bit
        out.append(chr(value + _BIAS))
    return "".join(out)


def _edge_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line.split()))
    return lines


def _parse_edge_records(text: str) -> Tuple[int, List[Tuple[int, int]]]:
    """Shared edge-list reader returning (n, 0-based edges)"""
    lines = _edge_lines(text)
    records = []
    for lineno, tokens in lines:
        if len(tokens) != 2:
            raise GraphFormatError(f"expected two integers, got {len(tokens)} tokens", lineno)
        try:
            records.append((lineno, int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise GraphFormatError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None

    # The first line is an "n m" header only if it is consistent with the rest.
    n: Optional[int] = None
    if records:
        _, first_a, first_b = records[0]
        rest = records[1:]
        if first_a >= 1 and first_b == len(rest) and all(max(a, b) <= first_a for _, a, b in rest):
            n = first_a
            records = rest
            logger.info(f"Edge list: first line '{first_a} {first_b}' read as an n m header")
    if n is None:
        n = max((max(a, b) for _, a, b in records), default=0)

    edges = []
    seen = set()
    for lineno, a, b in records:
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphStructureError(f"line {lineno}: label out of range 1..{n} in edge {a} {b}")
        if a == b:
            raise GraphStructureError(f"line {lineno}: self-loop at vertex {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphStructureError(f"line {lineno}: duplicate edge {a} {b}")
        seen.add(key)
        edges.append((a - 1, b - 1))
    return n, edges


def parse_edge_list(text: str) -> SmallGraph:
    """
    Parse lines ``u v`` with 1-based labels; the first line may be a ``n m`` header

    The first line is read as a header when its second number equals the count
    of remaining lines and every remaining label fits in 1..n; otherwise it is an
    edge. Without a header the vertex count is the largest label.
    """
    n, edges = _parse_edge_records(text)
    return SmallGraph.from_edges(n, edges)


def parse_host_edge_list(text: str) -> HostGraph:
    n, edges = _parse_edge_records(text)
    return HostGraph.from_edges(n, edges)


def read_graph(source: str) -> SmallGraph:
    """
    Read a pattern graph given inline as graph6 or as a file path

    Files ending in ``.g6`` hold graph6 (first non-blank line is used);
    anything else is an edge list.
    """
    path = Path(source)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        if path.suffix == ".g6":
            first = next((line for line in text.splitlines() if line.strip()), "")
            return parse_graph6(first)
        logger.info(f"Reading edge list from {path}")
        return parse_edge_list(text)
    return parse_graph6(source)


def read_host_graph(source: str) -> HostGraph:
    path = Path(source)
    if path.is_file() and path.suffix != ".g6":
        return parse_host_edge_list(path.read_text(encoding="utf-8"))
    return HostGraph.from_small(read_graph(source))


def read_graph_list(path: Union[str, Path]) -> List[SmallGraph]:
    """Read one graph6 string per line (blank lines and ``#`` comments skipped)"""
    graphs = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            graphs.append(parse_graph6(line))
        except GraphFormatError as e:
            raise GraphFormatError(f"line {lineno}: {e}") from e
    logger.info(f"Read {len(graphs)} graphs from {path}")
    return graphs


def parse_parts(text: str) -> Dict[str, Any]:
    """
    Parse a parts file

    Format: ``{"parts": [[1, 2], [3, 4]], "assignment": [1, 2]}`` with 1-based
    vertex ids and 1-based part indices; ``assignment`` is optional and
    ``"multiplicities"`` may be given instead for repeated parts.

    Returns:
        dict with 0-based ``parts`` (list of lists) and optional 0-based
        ``assignment`` and ``multiplicities``
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"parts file is not valid JSON: {e.msg}", e.lineno) from None
    if not isinstance(raw, dict) or not isinstance(raw.get("parts"), list):
        raise GraphFormatError("parts file must be an object with a 'parts' list")
    try:
        parts = [[int(v) - 1 for v in part] for part in raw["parts"]]
        result: Dict[str, Any] = {"parts": parts}
        if raw.get("assignment") is not None:
            result["assignment"] = [int(i) - 1 for i in raw["assignment"]]
        if raw.get("multiplicities") is not None:
            result["multiplicities"] = [int(i) for i in raw["multiplicities"]]
    except (TypeError, ValueError) as e:
        raise GraphFormatError(f"parts file has a non-integer entry: {e}") from None
    return result


def from_networkx(graph) -> SmallGraph:
    """Convert a networkx graph with any hashable node labels, in sorted node order"""
    nodes = sorted(graph.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return SmallGraph.from_edges(len(nodes), [(index[a], index[b]) for a, b in graph.edges()])


def atlas_graphs(m: int) -> List[SmallGraph]:
    """
    Every isomorphism class of graphs on m vertices, from the networkx graph atlas

    The atlas holds all graphs with at most 7 vertices, ordered by edge count.
    """
    if not 0 <= m <= ATLAS_MAX_VERTICES:
        raise GraphStructureError(f"the graph atlas covers 0..{ATLAS_MAX_VERTICES} vertices, not {m}")
    graphs = [from_networkx(g) for g in nx.graph_atlas_g() if g.number_of_nodes() == m]
    logger.info(f"Graph atlas: {len(graphs)} classes on {m} vertices")
    return graphs
