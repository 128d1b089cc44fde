from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

import pytest

from qr_cert.counting.embeddings import (
    PartitionSpec,
    count_constrained,
    count_multiplicity_averaged,
    count_summed,
    count_summed_via_padding,
    count_symmetrized,
    part_sizes,
)
from qr_cert.errors import GraphStructureError, ParameterError, VertexCapError
from qr_cert.graphs.core import HostGraph, SmallGraph


def _random_spec(rng, n, m):
    vertices = list(range(n))
    rng.shuffle(vertices)
    r = rng.randint(1, min(m, n + 1))
    cuts = sorted(rng.sample(range(n + 1), r - 1)) if r > 1 else []
    bounds = [0] + cuts + [n]
    parts = [frozenset(vertices[a:b]) for a, b in zip(bounds, bounds[1:])]
    assignment = [rng.randrange(len(parts)) for _ in range(m)]
    return PartitionSpec(tuple(parts), tuple(assignment))


def test_partition_spec_validation():
    with pytest.raises(GraphStructureError):
        PartitionSpec(({0, 1}, {1, 2}), (0, 1))
    with pytest.raises(GraphStructureError):
        PartitionSpec(({0}, {1}), (0, 2))
    spec = PartitionSpec.one_to_one([[3, 4], [0]])
    assert spec.sizes == (2, 1) and spec.assignment == (0, 1)
    with pytest.raises(GraphStructureError):
        count_constrained(SmallGraph.complete(2), SmallGraph.complete(3), spec)


def test_whole_host_counts_labelled_copies():
    K4 = SmallGraph.complete(4)
    assert count_constrained(SmallGraph.complete(3), K4, PartitionSpec.whole(4, 3)) == 24
    assert count_constrained(SmallGraph.path(3), SmallGraph.cycle(5), PartitionSpec.whole(5, 3)) == 10


def test_matches_brute_force(rng, make_graph, brute_force):
    for _ in range(200):
        F = make_graph(rng, rng.randint(1, 4))
        G = make_graph(rng, rng.randint(1, 8), p=0.6)
        spec = _random_spec(rng, G.n, F.n)
        expected = brute_force(F, G, spec.parts, spec.assignment)
        assert count_constrained(F, G, spec) == expected


def test_threads_do_not_change_counts(rng, make_graph):
    F = SmallGraph.path(4)
    G = make_graph(rng, 14, p=0.5)
    spec = PartitionSpec.whole(G.n, F.n)
    assert count_constrained(F, G, spec, threads=4) == count_constrained(F, G, spec)


def test_symmetrized_is_average_over_relabellings(rng, make_graph):
    for _ in range(10):
        F = make_graph(rng, rng.randint(2, 4))
        G = make_graph(rng, 9, p=0.5)
        parts = [frozenset(range(3 * i, 3 * i + 3)) for i in range(3)]
        assignment = tuple(rng.randrange(3) for _ in range(F.n))
        spec = PartitionSpec(tuple(parts), assignment)
        direct = Fraction(
            sum(count_constrained(F.relabel(sigma), G, spec) for sigma in permutations(range(F.n))),
            factorial(F.n),
        )
        assert count_symmetrized(F, G, spec) == direct


def test_summed_and_padding_agree(rng, make_graph):
    G = make_graph(rng, 12, p=0.5)
    parts = [range(3 * i, 3 * i + 3) for i in range(4)]
    F = SmallGraph.path(3)
    summed = count_summed(F, G, parts)
    direct = sum(
        (count_symmetrized(F, G, PartitionSpec.one_to_one([parts[i] for i in chosen])) for chosen in combinations(range(4), 3)),
        Fraction(0),
    )
    assert summed == direct
    assert count_summed_via_padding(F, G, parts) == summed


def test_summed_preconditions():
    G = HostGraph.from_small(SmallGraph.complete(4))
    with pytest.raises(ParameterError):
        count_summed(SmallGraph.complete(3), G, [[0], [1]])
    with pytest.raises(ParameterError):
        count_summed_via_padding(SmallGraph.complete(2), G, [[0], [1, 2], [3]])


def test_multiplicity_average(rng, make_graph):
    G = make_graph(rng, 10, p=0.6)
    parts = (frozenset(range(0, 5)), frozenset(range(5, 10)))
    F = SmallGraph.path(3)
    got = count_multiplicity_averaged(F, G, parts, [2, 1])
    a = count_symmetrized(F, G, PartitionSpec(parts, (0, 0, 1)))
    b = count_symmetrized(F, G, PartitionSpec(parts, (0, 1, 1)))
    assert got == (a + b) / 2
    with pytest.raises(ParameterError):
        count_multiplicity_averaged(F, G, parts, [1, 1])
    with pytest.raises(ParameterError):
        count_multiplicity_averaged(F, G, parts, [3])


def test_pattern_cap():
    with pytest.raises(VertexCapError):
        count_constrained(SmallGraph.path(5), SmallGraph.complete(6), PartitionSpec.whole(6, 5), cap=4)


def test_empty_pattern_counts_one():
    assert count_constrained(SmallGraph.empty(0), SmallGraph.complete(3), PartitionSpec.whole(3, 0)) == 1


def test_part_sizes():
    assert part_sizes(10, [Fraction(1, 3)] * 3) == [3, 3, 3]
    with pytest.raises(ParameterError):
        part_sizes(10, [Fraction(2, 3), Fraction(1, 2)])
    with pytest.raises(ParameterError):
        part_sizes(10, [Fraction(0)])
