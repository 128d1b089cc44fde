"""
Small pattern graphs, host graphs and subset edge statistics
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import GraphStructureError, VertexCapError

logger = logging.getLogger(__name__)

PATTERN_VERTEX_CAP = 20

Triple = Tuple[int, int, int]


def _popcount(x: int) -> int:
    return x.bit_count()


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SmallGraph:
    """Simple undirected graph with neighbourhoods stored as bit masks.

    Vertex ``i`` is adjacent to ``j`` iff bit ``j`` of ``adj[i]`` is set.
    """

    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphStructureError(f"vertex count must be non-negative, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphStructureError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphStructureError(f"vertex {i} has a neighbour outside 0..{self.n - 1}")
            if row >> i & 1:
                raise GraphStructureError(f"self-loop at vertex {i}")
            for j in _iter_bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphStructureError(f"adjacency is not symmetric between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "SmallGraph":
        """Build a graph on vertices 0..n-1; duplicates and loops are errors."""
        rows = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise GraphStructureError(f"edge ({i}, {j}) has a label outside 0..{n - 1}")
            if i == j:
                raise GraphStructureError(f"self-loop at vertex {i}")
            if rows[i] >> j & 1:
                raise GraphStructureError(f"duplicate edge ({i}, {j})")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "SmallGraph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "SmallGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "SmallGraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, leaves: int) -> "SmallGraph":
        """K_{1,leaves} with centre 0"""
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "SmallGraph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def num_edges(self) -> int:
        return sum(_popcount(row) for row in self.adj) // 2

    def degree(self, i: int) -> int:
        return _popcount(self.adj[i])

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(_popcount(row) for row in self.adj)

    def neighbors(self, i: int) -> List[int]:
        return list(_iter_bits(self.adj[i]))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _iter_bits(self.adj[i]) if i < j]

    def components(self) -> Tuple[int, ...]:
        """Vertex masks of the connected components, ordered by lowest vertex"""
        seen = 0
        result = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp = frontier = 1 << start
            while frontier:
                reach = 0
                for v in _iter_bits(frontier):
                    reach |= self.adj[v]
                frontier = reach & ~comp
                comp |= frontier
            seen |= comp
            result.append(comp)
        return tuple(result)

    def induced(self, mask: int) -> "SmallGraph":
        """Subgraph induced on ``mask``, relabelled 0..k-1 in increasing order"""
        keep = list(_iter_bits(mask))
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            row = 0
            for w in _iter_bits(self.adj[v] & mask):
                row |= 1 << index[w]
            rows.append(row)
        return SmallGraph(len(keep), tuple(rows))

    def disjoint_union(self, other: "SmallGraph") -> "SmallGraph":
        shift = self.n
        return SmallGraph(self.n + other.n, self.adj + tuple(row << shift for row in other.adj))

    def with_isolated(self, count: int) -> "SmallGraph":
        """Adjoin ``count`` isolated vertices after the existing ones"""
        return SmallGraph(self.n + count, self.adj + (0,) * count)

    def relabel(self, order: Sequence[int]) -> "SmallGraph":
        """New graph whose vertex ``i`` is old vertex ``order[i]``"""
        position = {old: new for new, old in enumerate(order)}
        return SmallGraph.from_edges(self.n, [(position[i], position[j]) for i, j in self.edges()])

    def __str__(self) -> str:
        return f"SmallGraph(n={self.n}, e={self.num_edges})"


@dataclass(frozen=True)
class HostGraph:
    """Host graph for embedding counts: sorted adjacency arrays plus neighbour sets"""

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    neighbor_sets: Tuple[FrozenSet[int], ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphStructureError(f"expected {self.n} adjacency lists, got {len(self.adjacency)}")
        if not self.neighbor_sets:
            object.__setattr__(self, "neighbor_sets", tuple(frozenset(a) for a in self.adjacency))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "HostGraph":
        lists: List[set] = [set() for _ in range(n)]
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise GraphStructureError(f"edge ({i}, {j}) has a label outside 0..{n - 1}")
            if i == j:
                raise GraphStructureError(f"self-loop at vertex {i}")
            if j in lists[i]:
                raise GraphStructureError(f"duplicate edge ({i}, {j})")
            lists[i].add(j)
            lists[j].add(i)
        return cls(n, tuple(tuple(sorted(s)) for s in lists))

    @classmethod
    def from_small(cls, graph: SmallGraph) -> "HostGraph":
        return cls(graph.n, tuple(tuple(graph.neighbors(i)) for i in range(graph.n)))

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.neighbor_sets[i]

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.adjacency[i] if i < j]

    def to_small(self) -> SmallGraph:
        return SmallGraph.from_edges(self.n, self.edges())


def strip_isolated(graph: SmallGraph) -> SmallGraph:
    """Drop vertices of degree 0 and relabel the rest contiguously.

    Isolated vertices contribute a factor 1 to every subset polynomial, so the
    certifier works on the stripped graph.
    """
    keep = 0
    for i, row in enumerate(graph.adj):
        if row:
            keep |= 1 << i
    return graph.induced(keep)


def subset_stats(graph: SmallGraph, subset: int) -> Triple:
    """Edge counts (inside A, inside the complement, across) for the vertex mask A"""
    if subset & ~graph.full_mask:
        raise GraphStructureError(f"subset mask {subset:#x} is not contained in V(F)")
    comp = graph.full_mask & ~subset
    e_in = sum(_popcount(graph.adj[i] & subset) for i in _iter_bits(subset)) // 2
    e_comp = sum(_popcount(graph.adj[i] & comp) for i in _iter_bits(comp)) // 2
    return e_in, e_comp, graph.num_edges - e_in - e_comp


@dataclass(frozen=True)
class SubsetProfile:
    """Multiset of exponent triples grouped by subset size.

    ``levels[k]`` is a tuple of ``((e_in, e_comp, e_cross), multiplicity)``
    pairs sorted by triple.
    """

    m: int
    num_edges: int
    levels: Tuple[Tuple[Tuple[Triple, int], ...], ...]

    def level(self, k: int) -> List[Triple]:
        """Level ``k`` expanded into a sorted list with repetitions"""
        out: List[Triple] = []
        for triple, count in self.levels[k]:
            out.extend([triple] * count)
        return out

    def level_size(self, k: int) -> int:
        return sum(count for _, count in self.levels[k])


def subset_profile(graph: SmallGraph, cap: int = PATTERN_VERTEX_CAP) -> SubsetProfile:
    """Exponent triples of all 2^m subsets, grouped by size.

    Subsets are enumerated with a vectorised doubling recurrence: the subsets
    containing vertex b as their highest element extend the subsets of the
    lower b vertices by the neighbours of b among them.
    """
    m = graph.n
    if m > cap:
        raise VertexCapError(m, cap)
    size = 1 << m
    popcount = np.zeros(size, dtype=np.int64)
    inside = np.zeros(size, dtype=np.int64)
    for b in range(m):
        lo = 1 << b
        lower = np.arange(lo, dtype=np.int64)
        popcount[lo:2 * lo] = popcount[:lo] + 1
        inside[lo:2 * lo] = inside[:lo] + popcount[lower & graph.adj[b]]
    complement = inside[::-1]
    e = graph.num_edges
    keys = np.stack([popcount, inside, complement], axis=1)
    rows, counts = np.unique(keys, axis=0, return_counts=True)
    grouped: Dict[int, List[Tuple[Triple, int]]] = {k: [] for k in range(m + 1)}
    for (k, e_in, e_comp), count in zip(rows.tolist(), counts.tolist()):
        grouped[k].append(((e_in, e_comp, e - e_in - e_comp), count))
    logger.debug(f"Subset profile of {graph}: {len(rows)} distinct (level, triple) keys")
    return SubsetProfile(
        m=m,
        num_edges=e,
        levels=tuple(tuple(sorted(grouped[k])) for k in range(m + 1)),
    )


class StructureKind(str, Enum):
    EMPTY = "Empty"
    SINGLE_EDGE = "SingleEdge"
    DISCONNECTED = "DisconnectedNontrivial"
    REGULAR = "Regular"
    STAR = "Star"
    GENERAL = "General"


@dataclass(frozen=True)
class StructureClass:
    kind: StructureKind
    components: Tuple[int, ...]
    degree: Optional[int] = None  # common degree when the graph is regular, whatever the kind

    def __str__(self) -> str:
        if self.kind is StructureKind.REGULAR:
            return f"Regular({self.degree})"
        return self.kind.value


def is_star(graph: SmallGraph) -> bool:
    """True for K_{1,m-1} with m >= 3"""
    m = graph.n
    if m < 3 or graph.num_edges != m - 1:
        return False
    degrees = sorted(graph.degrees)
    return degrees[-1] == m - 1 and degrees[0] == 1


def is_path(graph: SmallGraph) -> bool:
    m = graph.n
    if m < 2 or graph.num_edges != m - 1 or len(graph.components()) != 1:
        return False
    return max(graph.degrees) <= 2


def classify(graph: SmallGraph) -> StructureClass:
    """Structural class in the certifier's fast-path order.

    Empty, SingleEdge, DisconnectedNontrivial, Regular (m >= 3), Star (m >= 3),
    General; the first match wins.
    """
    comps = graph.components()
    degrees = set(graph.degrees)
    regular_degree = next(iter(degrees)) if len(degrees) == 1 else None
    e = graph.num_edges
    if e == 0:
        kind = StructureKind.EMPTY
    elif e == 1:
        kind = StructureKind.SINGLE_EDGE
    elif sum(1 for c in comps if _popcount(c) >= 2) >= 2:
        kind = StructureKind.DISCONNECTED
    elif regular_degree is not None and graph.n >= 3:
        kind = StructureKind.REGULAR
    elif is_star(graph):
        kind = StructureKind.STAR
    else:
        kind = StructureKind.GENERAL
    return StructureClass(kind=kind, components=comps, degree=regular_degree)
