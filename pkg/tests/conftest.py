import random
from fractions import Fraction
from itertools import permutations

import pytest

from qr_cert.graphs.core import SmallGraph


def random_rational(rng: random.Random, lo: int = 0, hi: int = 1, den: int = 17) -> Fraction:
    d = rng.randint(1, den)
    return Fraction(rng.randint(lo * d, hi * d), d)


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> SmallGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return SmallGraph.from_edges(n, edges)


def brute_force_count(F, G, parts, assignment) -> int:
    """Injective maps phi with phi(i) in parts[assignment[i]] preserving every edge of F"""
    n = G.n
    total = 0
    for phi in permutations(range(n), F.n):
        if any(phi[i] not in parts[assignment[i]] for i in range(F.n)):
            continue
        if all(G.has_edge(phi[i], phi[j]) for i, j in F.edges()):
            total += 1
    return total


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def named_graphs():
    return {
        "K2": SmallGraph.complete(2),
        "K3": SmallGraph.complete(3),
        "K4": SmallGraph.complete(4),
        "P3": SmallGraph.path(3),
        "P4": SmallGraph.path(4),
        "P5": SmallGraph.path(5),
        "C4": SmallGraph.cycle(4),
        "C5": SmallGraph.cycle(5),
        "S3": SmallGraph.star(3),
        "K23": SmallGraph.complete_bipartite(2, 3),
        "2K2": SmallGraph.complete(2).disjoint_union(SmallGraph.complete(2)),
        "paw": SmallGraph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
    }


@pytest.fixture
def brute_force():
    return brute_force_count


@pytest.fixture
def make_graph():
    return random_graph


@pytest.fixture
def make_rational():
    return random_rational
