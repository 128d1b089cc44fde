"""
Exact counts of constrained labelled copies of a pattern in a host graph
"""
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple, Union

from ..errors import GraphStructureError, ParameterError, VertexCapError
from ..graphs.core import HostGraph, SmallGraph

logger = logging.getLogger(__name__)

COUNT_PATTERN_CAP = 10

Host = Union[SmallGraph, HostGraph]


@dataclass(frozen=True)
class PartitionSpec:
    """Disjoint host vertex sets and, per pattern vertex, the index of its part.

    Several pattern vertices may share a part; that is how repeated parts
    are expressed.
    """

    parts: Tuple[FrozenSet[int], ...]
    assignment: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))
        object.__setattr__(self, "assignment", tuple(self.assignment))
        seen: Set[int] = set()
        for index, part in enumerate(self.parts):
            overlap = seen & part
            if overlap:
                raise GraphStructureError(f"part {index} overlaps earlier parts at vertices {sorted(overlap)[:5]}")
            seen |= part
        for i, a in enumerate(self.assignment):
            if not 0 <= a < len(self.parts):
                raise GraphStructureError(f"pattern vertex {i} assigned to part {a}, but there are {len(self.parts)} parts")

    @classmethod
    def one_to_one(cls, parts: Iterable[Iterable[int]]) -> "PartitionSpec":
        """Pattern vertex i goes to part i"""
        parts = tuple(frozenset(p) for p in parts)
        return cls(parts, tuple(range(len(parts))))

    @classmethod
    def whole(cls, n: int, m: int) -> "PartitionSpec":
        """Every pattern vertex may go anywhere in V(G)"""
        return cls((frozenset(range(n)),), (0,) * m)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def with_assignment(self, assignment: Sequence[int]) -> "PartitionSpec":
        return PartitionSpec(self.parts, tuple(assignment))

    def check_host(self, n: int):
        for index, part in enumerate(self.parts):
            if part and (min(part) < 0 or max(part) >= n):
                raise GraphStructureError(f"part {index} has vertices outside the host range 0..{n - 1}")


def part_sizes(n: int, alphas: Sequence[Fraction]) -> List[int]:
    """Part sizes floor(alpha_i * n); the alphas must be positive with sum at most 1"""
    if any(a <= 0 for a in alphas):
        raise ParameterError("part fractions must be positive")
    if sum(alphas) > 1:
        raise ParameterError(f"part fractions sum to {sum(alphas)} > 1")
    return [int(Fraction(a) * n) for a in alphas]


def _as_host(G: Host) -> HostGraph:
    return HostGraph.from_small(G) if isinstance(G, SmallGraph) else G


def _search_order(F: SmallGraph) -> List[int]:
    """Descending degree; ties broken towards vertices adjacent to those already placed"""
    remaining = set(range(F.n))
    order: List[int] = []
    placed = 0
    while remaining:
        best = max(remaining, key=lambda i: ((F.adj[i] & placed).bit_count(), F.degree(i), -i))
        order.append(best)
        remaining.discard(best)
        placed |= 1 << best
    return order


def _validate(F: SmallGraph, G: HostGraph, spec: PartitionSpec, cap: int):
    if F.n > cap:
        raise VertexCapError(F.n, cap, "host counting")
    if len(spec.assignment) != F.n:
        raise GraphStructureError(f"assignment covers {len(spec.assignment)} pattern vertices, pattern has {F.n}")
    spec.check_host(G.n)


def _count_from(
    G: HostGraph,
    order: List[int],
    back: List[List[int]],
    pools: List[FrozenSet[int]],
    phi: Dict[int, int],
    used: Set[int],
    depth: int,
) -> int:
    vertex = order[depth]
    candidates = pools[depth]
    neighbours = sorted((G.neighbor_sets[phi[j]] for j in back[depth]), key=len)
    if neighbours:
        candidates = neighbours[0].intersection(candidates, *neighbours[1:])
    if depth == len(order) - 1:
        return sum(1 for c in candidates if c not in used)
    total = 0
    for c in candidates:
        if c in used:
            continue
        phi[vertex] = c
        used.add(c)
        total += _count_from(G, order, back, pools, phi, used, depth + 1)
        used.discard(c)
        del phi[vertex]
    return total


def count_constrained(
    F: SmallGraph,
    G: Host,
    spec: PartitionSpec,
    cap: int = COUNT_PATTERN_CAP,
    threads: int = 1,
) -> int:
    """
    Number of injective homomorphisms phi: F -> G with phi(i) in the part assigned to i

    Backtracking over pattern vertices in descending degree order; candidates
    are intersections of the assigned part with the neighbourhoods of images
    of already placed neighbours, and the last level is counted without
    branching. With ``threads > 1`` the first level is sharded.
    """
    G = _as_host(G)
    _validate(F, G, spec, cap)
    if F.n == 0:
        return 1
    order = _search_order(F)
    position = {v: i for i, v in enumerate(order)}
    back = [[j for j in F.neighbors(v) if position[j] < position[v]] for v in order]
    pools = [spec.parts[spec.assignment[v]] for v in order]

    first = order[0]
    roots = sorted(pools[0])
    if F.n == 1:
        return len(roots)

    def branch(c: int) -> int:
        return _count_from(G, order, back, pools, {first: c}, {c}, 1)

    if threads > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(branch, roots))
    return sum(branch(c) for c in roots)


def _symmetrized_counts(F: SmallGraph, G: HostGraph, spec: PartitionSpec, cap: int, threads: int) -> Fraction:
    m = F.n
    orbit = Counter(tuple(spec.assignment[s] for s in sigma) for sigma in permutations(range(m)))
    total = 0
    for assignment, multiplicity in sorted(orbit.items()):
        total += multiplicity * count_constrained(F, G, spec.with_assignment(assignment), cap, threads)
    return Fraction(total, factorial(m))


def count_symmetrized(
    F: SmallGraph,
    G: Host,
    spec: PartitionSpec,
    cap: int = COUNT_PATTERN_CAP,
    threads: int = 1,
) -> Fraction:
    """
    Average of count_constrained over all m! relabellings of F

    Relabelling F is the same as permuting the assignment; each distinct
    permuted assignment is counted once and weighted by how often it occurs.
    """
    G = _as_host(G)
    _validate(F, G, spec, cap)
    return _symmetrized_counts(F, G, spec, cap, threads)


def count_summed(
    F: SmallGraph,
    G: Host,
    parts: Sequence[Iterable[int]],
    cap: int = COUNT_PATTERN_CAP,
    threads: int = 1,
) -> Fraction:
    """Sum of count_symmetrized over all increasing m-tuples of the r parts"""
    G = _as_host(G)
    parts = [frozenset(p) for p in parts]
    m, r = F.n, len(parts)
    if r < m:
        raise ParameterError(f"summed count needs at least {m} parts, got {r}")
    PartitionSpec.one_to_one(parts)  # disjointness
    total = Fraction(0)
    for chosen in combinations(range(r), m):
        spec = PartitionSpec.one_to_one(parts[i] for i in chosen)
        total += count_symmetrized(F, G, spec, cap, threads)
    logger.debug(f"Summed count over {comb(r, m)} part tuples: {total}")
    return total


def count_summed_via_padding(
    F: SmallGraph,
    G: Host,
    parts: Sequence[Iterable[int]],
    cap: int = COUNT_PATTERN_CAP,
    threads: int = 1,
) -> Fraction:
    """
    The summed count computed through F with r - m isolated vertices adjoined

    For r parts of a common size u:
    count_summed(F) = C(r, m) * count_symmetrized(F + isolated, all r parts) / u^(r - m).
    """
    G = _as_host(G)
    parts = [frozenset(p) for p in parts]
    m, r = F.n, len(parts)
    if r < m:
        raise ParameterError(f"summed count needs at least {m} parts, got {r}")
    sizes = {len(p) for p in parts}
    if len(sizes) != 1:
        raise ParameterError("the padding identity needs parts of equal size")
    size = sizes.pop()
    if size == 0:
        return Fraction(0)
    padded = F.with_isolated(r - m)
    spec = PartitionSpec.one_to_one(parts)
    return comb(r, m) * count_symmetrized(padded, G, spec, cap, threads) / size ** (r - m)


def _distinct_permutations(values: Sequence[int]) -> List[Tuple[int, ...]]:
    return sorted(set(permutations(values)))


def count_multiplicity_averaged(
    F: SmallGraph,
    G: Host,
    parts: Sequence[Iterable[int]],
    multiplicities: Sequence[int],
    cap: int = COUNT_PATTERN_CAP,
    threads: int = 1,
) -> Fraction:
    """
    Average of count_symmetrized over the distinct rearrangements of (m_1, ..., m_r)

    Part i receives m_i pattern vertices; multiplicities are non-negative and
    sum to |F|.
    """
    G = _as_host(G)
    parts = tuple(frozenset(p) for p in parts)
    if len(multiplicities) != len(parts):
        raise ParameterError(f"{len(multiplicities)} multiplicities for {len(parts)} parts")
    if any(k < 0 for k in multiplicities):
        raise ParameterError("multiplicities must be non-negative")
    if sum(multiplicities) != F.n:
        raise ParameterError(f"multiplicities sum to {sum(multiplicities)}, pattern has {F.n} vertices")
    arrangements = _distinct_permutations(multiplicities)
    total = Fraction(0)
    for arrangement in arrangements:
        assignment = [i for i, k in enumerate(arrangement) for _ in range(k)]
        total += count_symmetrized(F, G, PartitionSpec(parts, tuple(assignment)), cap, threads)
    return total / len(arrangements)

