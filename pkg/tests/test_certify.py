from fractions import Fraction

import pytest

from qr_cert.algebra.bipoly import BiPoly, resultant_v
from qr_cert.algebra.poly import UniPoly, primitive
from qr_cert.algebra.roots import isolate_roots, refine
from qr_cert.certify.certifier import (
    Method,
    VerdictKind,
    certify,
    certify_bipartite,
    exclude_root_pairs,
    structure_family,
    path_sweep,
    resultant_evidence,
    survey,
)
from qr_cert.certify.lambda_poly import SINGLE_EDGE_WITNESS, AffinePair, check_alg_system, degree_seq_equations
from qr_cert.errors import ParameterError, VertexCapError
from qr_cert.graphs.core import SmallGraph, StructureKind, classify, strip_isolated
from qr_cert.graphs.formats import atlas_graphs

P4_RESULTANT = UniPoly((0, -16, -192, -112, 976, 288, -1872, 288, 1152, -512))


def test_single_edge_is_bad_with_canonical_witness(named_graphs):
    verdict = certify(named_graphs["K2"])
    assert verdict.kind is VerdictKind.BAD
    assert verdict.method is Method.SINGLE_EDGE
    assert verdict.witness == SINGLE_EDGE_WITNESS
    assert verdict.pair == AffinePair(Fraction(1, 4), Fraction(1, 4))
    assert check_alg_system(named_graphs["K2"], verdict.witness) == verdict.pair
    assert verdict.exit_code == 1


def test_single_edge_with_isolated_vertices_is_bad():
    F = SmallGraph.from_edges(4, [(1, 2)])
    verdict = certify(F)
    assert verdict.kind is VerdictKind.BAD
    # the pair is computed on F as given: a = v, b = (u - v) / 4
    assert verdict.pair == AffinePair(Fraction(1, 4), Fraction(1, 8))


def test_empty_graph_is_bad():
    verdict = certify(SmallGraph.empty(3))
    assert verdict.kind is VerdictKind.BAD
    assert verdict.method is Method.EMPTY_GRAPH
    assert verdict.pair == AffinePair(Fraction(1), Fraction(0))


@pytest.mark.parametrize(
    "name, method",
    [
        ("K3", Method.FAST_PATH_REGULAR),
        ("C5", Method.FAST_PATH_REGULAR),
        ("2K2", Method.FAST_PATH_DISCONNECTED),
        ("S3", Method.FAST_PATH_STAR),
    ],
)
def test_fast_paths(named_graphs, name, method):
    verdict = certify(named_graphs[name])
    assert verdict.kind is VerdictKind.GOOD
    assert verdict.method is method
    assert verdict.exit_code == 0
    assert verdict.evidence.resultant is None


def test_p4_resultant_and_verdict(named_graphs):
    verdict = certify(named_graphs["P4"])
    assert verdict.kind is VerdictKind.GOOD
    assert verdict.method is Method.RESULTANT_NO_ROOTS
    ev = verdict.evidence
    assert primitive(ev.resultant) == primitive(P4_RESULTANT)
    assert ev.multiplicity_at_0 == 1
    assert ev.count_01 == 0
    assert ev.count_1inf is None
    assert ev.rootless_intervals == ["(0,1)"]


def test_p4_full_counts(named_graphs):
    ev = certify(named_graphs["P4"], full_counts=True).evidence
    assert ev.count_01 == 0
    assert ev.count_1inf is not None


def test_p5_root_location(named_graphs):
    verdict = certify(named_graphs["P5"])
    assert verdict.kind is VerdictKind.GOOD
    ev = verdict.evidence
    assert ev.count_01 == 1
    assert ev.count_1inf == 0
    fine = refine(ev.roots_01[0], ev.resultant, Fraction(1, 10 ** 5))
    assert abs(fine.midpoint - Fraction(23467, 100000)) < Fraction(1, 10 ** 4)


def test_p5_root_refines_against_raw_resultant(named_graphs):
    R = primitive(resultant_v(*degree_seq_equations(named_graphs["P5"])))
    assert R(0) == 0
    (r,) = isolate_roots(R, 0, 1)
    assert R(r.lo) != 0 and R(r.hi) != 0
    fine = refine(r, R, Fraction(1, 10 ** 5))
    assert fine.width <= Fraction(1, 10 ** 5)
    assert abs(fine.midpoint - Fraction(23467, 100000)) < Fraction(1, 10 ** 4)


@pytest.mark.parametrize("m", [3, 4, 5, 6, pytest.param(7, marks=pytest.mark.slow)])
def test_regular_graphs_and_stars_never_bad_on_resultant_route(m):
    checked = 0
    for g in atlas_graphs(m):
        H = strip_isolated(g)
        if H.n != m or classify(H).kind not in (StructureKind.REGULAR, StructureKind.STAR):
            continue
        verdict = certify(H, fast_paths=False)
        assert verdict.kind is not VerdictKind.BAD, verdict
        assert verdict.method not in (Method.FAST_PATH_REGULAR, Method.FAST_PATH_STAR)
        checked += 1
    assert checked >= 1


def test_degenerate_system_is_reported(named_graphs):
    ev = resultant_evidence(named_graphs["K2"])
    assert ev.f1 == ev.f2
    assert ev.resultant is None
    assert "coincide" in ev.diagnostic


def test_exclude_root_pairs():
    R = UniPoly((-1, 3)) * UniPoly((-3, 2))  # roots 1/3 and 3/2
    u_roots = isolate_roots(R, 0, 1)
    v_roots = isolate_roots(R, 1, None)
    vanishing = BiPoly.from_terms({(1, 0): 3, (0, 1): 2, (0, 0): -4})  # zero at (1/3, 3/2)
    positive = BiPoly.from_terms({(1, 0): 1, (0, 1): 1})
    (check,) = exclude_root_pairs(vanishing, positive, R, u_roots, v_roots)
    assert check.excluded_by == "f2"
    assert check.width_exponent == 16
    assert check.enclosure[0] > 0
    (stuck,) = exclude_root_pairs(vanishing, vanishing, R, u_roots, v_roots, widths=(8, 12))
    assert not stuck.excluded
    assert stuck.width_exponent == 12
    assert stuck.u_box.width <= Fraction(1, 2 ** 12)
    with pytest.raises(ParameterError):
        exclude_root_pairs(vanishing, positive, R, u_roots, v_roots, widths=())


def test_vertex_cap():
    with pytest.raises(VertexCapError):
        certify(SmallGraph.path(6), cap=5)


def test_structure_family(named_graphs):
    assert structure_family(named_graphs["K2"]) == "trivial"
    assert structure_family(SmallGraph.from_edges(4, [(0, 1), (1, 2)])) == "disconnected"
    assert structure_family(named_graphs["C4"]) == "regular"
    assert structure_family(named_graphs["S3"]) == "star"
    assert structure_family(named_graphs["P4"]) == "path"
    assert structure_family(named_graphs["paw"]) == "resultant"


def test_survey_m4():
    result = survey(4)
    assert len(result.rows) == 11
    for row in result.rows:
        expected = VerdictKind.BAD if row.edges <= 1 else VerdictKind.GOOD
        assert row.verdict.kind is expected, row.graph6
    assert result.family_tally() == {"disconnected": 3, "regular": 2, "star": 1, "path": 1, "resultant": 2}
    assert result.verdict_tally() == {"Bad": 2, "Good": 9}


def test_survey_is_thread_independent():
    serial = survey(4)
    parallel = survey(4, threads=4)
    assert [(r.graph6, r.verdict.kind, r.verdict.method) for r in serial.rows] == [
        (r.graph6, r.verdict.kind, r.verdict.method) for r in parallel.rows
    ]


def test_survey_arguments():
    with pytest.raises(ParameterError):
        survey(9)
    with pytest.raises(ParameterError):
        survey(8)
    with pytest.raises(ParameterError):
        survey(3, graphs=[SmallGraph.complete(4)])


def test_bipartite_always_records_evidence():
    verdict = certify_bipartite(2, 2)
    assert verdict.method is Method.FAST_PATH_REGULAR
    assert verdict.evidence.resultant is not None
    assert verdict.evidence.count_1inf is not None
    with pytest.raises(ParameterError):
        certify_bipartite(0, 3)


def test_path_sweep_small():
    rows = path_sweep(7)
    assert [r.m for r in rows] == [4, 5, 6, 7]
    assert all(r.verdict.kind is VerdictKind.GOOD for r in rows)
    assert all(r.parity_pattern_holds for r in rows)
    with pytest.raises(ParameterError):
        path_sweep(5, min_m=3)


@pytest.mark.slow
def test_path_sweep_to_twenty():
    rows = path_sweep(20)
    assert len(rows) == 17
    for row in rows:
        assert row.verdict.kind is VerdictKind.GOOD, row.m
        assert row.parity_pattern_holds, row.m


@pytest.mark.slow
def test_complete_bipartite_sweep():
    for n in range(1, 9):
        verdict = certify_bipartite(2, n)
        assert verdict.kind is VerdictKind.GOOD, n
        ev = verdict.evidence
        assert (ev.count_01 > 0) == (n in (4, 8)), n
        assert ev.count_1inf == 0, n
    for a, top in ((3, 7), (4, 5)):
        for n in range(1, top + 1):
            assert certify_bipartite(a, n).kind is VerdictKind.GOOD, (a, n)
