from math import comb

import pytest

from qr_cert.errors import GraphStructureError, VertexCapError
from qr_cert.graphs.core import (
    HostGraph,
    SmallGraph,
    StructureKind,
    classify,
    is_path,
    is_star,
    strip_isolated,
    subset_profile,
    subset_stats,
)


def test_from_edges_rejects_loops_and_duplicates():
    with pytest.raises(GraphStructureError):
        SmallGraph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphStructureError):
        SmallGraph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphStructureError):
        SmallGraph.from_edges(3, [(0, 3)])


def test_asymmetric_adjacency_is_rejected():
    with pytest.raises(GraphStructureError):
        SmallGraph(2, (0b10, 0))


def test_basic_families(named_graphs):
    assert named_graphs["K4"].num_edges == 6
    assert named_graphs["C5"].degrees == (2,) * 5
    assert named_graphs["K23"].num_edges == 6
    assert named_graphs["S3"].degrees == (3, 1, 1, 1)
    assert len(named_graphs["2K2"].components()) == 2


def test_subset_stats_partition_edges(named_graphs):
    P4 = named_graphs["P4"]
    assert subset_stats(P4, 0b0011) == (1, 1, 1)
    assert subset_stats(P4, 0b0101) == (0, 0, 3)
    assert subset_stats(P4, 0) == (0, 3, 0)
    with pytest.raises(GraphStructureError):
        subset_stats(P4, 1 << 4)


def test_subset_profile_matches_direct_enumeration(rng, make_graph):
    for _ in range(10):
        F = make_graph(rng, rng.randint(1, 7))
        profile = subset_profile(F)
        for k in range(F.n + 1):
            assert profile.level_size(k) == comb(F.n, k)
            direct = sorted(subset_stats(F, A) for A in range(1 << F.n) if bin(A).count("1") == k)
            assert profile.level(k) == direct


def test_subset_profile_cap():
    with pytest.raises(VertexCapError):
        subset_profile(SmallGraph.empty(6), cap=5)


def test_strip_isolated():
    F = SmallGraph.from_edges(5, [(1, 3)])
    H = strip_isolated(F)
    assert H.n == 2 and H.num_edges == 1
    assert strip_isolated(SmallGraph.empty(3)).n == 0


@pytest.mark.parametrize(
    "name, kind",
    [
        ("K2", StructureKind.SINGLE_EDGE),
        ("K3", StructureKind.REGULAR),
        ("C4", StructureKind.REGULAR),
        ("2K2", StructureKind.DISCONNECTED),
        ("S3", StructureKind.STAR),
        ("P3", StructureKind.STAR),
        ("P4", StructureKind.GENERAL),
        ("paw", StructureKind.GENERAL),
    ],
)
def test_classify(named_graphs, name, kind):
    assert classify(named_graphs[name]).kind is kind


def test_classify_single_edge_still_reports_degree(named_graphs):
    structure = classify(named_graphs["K2"])
    assert structure.degree == 1
    assert str(classify(named_graphs["K3"])) == "Regular(2)"


def test_classify_empty_and_edge_plus_isolated():
    assert classify(SmallGraph.empty(3)).kind is StructureKind.EMPTY
    # one nontrivial component is not "disconnected"
    assert classify(SmallGraph.from_edges(4, [(0, 1), (1, 2)])).kind is StructureKind.GENERAL


def test_star_and_path_predicates(named_graphs):
    assert is_star(named_graphs["S3"])
    assert not is_star(named_graphs["K2"])
    assert is_path(named_graphs["P5"])
    assert not is_path(named_graphs["C4"])


def test_host_graph_roundtrip(named_graphs):
    G = HostGraph.from_small(named_graphs["paw"])
    assert G.num_edges == 4
    assert G.has_edge(2, 3) and not G.has_edge(1, 3)
    assert G.to_small() == named_graphs["paw"]
    with pytest.raises(GraphStructureError):
        HostGraph.from_edges(3, [(0, 1), (0, 1)])
