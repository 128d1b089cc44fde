import statistics
from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest

from qr_cert.certify.lambda_poly import SINGLE_EDGE_WITNESS, WitnessTriple
from qr_cert.counting.embeddings import PartitionSpec, count_constrained
from qr_cert.empirical.experiments import (
    GeneratorSpec,
    TwoTypeGraphon,
    qr_experiment,
    two_type_partition_integral,
    two_type_psi,
)
from qr_cert.empirical.sampling import gen_gnp, gen_two_type, random_parts
from qr_cert.errors import ParameterError
from qr_cert.graphs.core import SmallGraph

HALF = Fraction(1, 2)


def test_gnp_is_reproducible():
    a = gen_gnp(30, "1/2", seed=7, stream=3)
    b = gen_gnp(30, Fraction(1, 2), seed=7, stream=3)
    assert a.edges() == b.edges()
    assert gen_gnp(30, "1/2", seed=7, stream=4).edges() != a.edges()
    assert gen_gnp(30, "1/2", seed=8, stream=3).edges() != a.edges()


def test_gnp_extremes():
    assert gen_gnp(12, 0, seed=1).num_edges == 0
    assert gen_gnp(12, 1, seed=1).num_edges == 66
    with pytest.raises(ParameterError):
        gen_gnp(5, "3/2", seed=1)
    with pytest.raises(ParameterError):
        gen_gnp(5, "1/2", seed=-1)


def test_gnp_density_is_plausible():
    G = gen_gnp(200, "1/4", seed=11)
    assert abs(G.num_edges / (200 * 199 / 2) - 0.25) < 0.02


def test_constant_two_type_reproduces_gnp():
    p = Fraction(2, 5)
    G = gen_gnp(25, p, seed=5, stream=2)
    H = gen_two_type(25, WitnessTriple(p, p, p), seed=5, stream=2)
    assert G.edges() == H.edges()


def test_two_type_blocks():
    G = gen_two_type(10, WitnessTriple(1, 0, 0), seed=3)
    assert sorted(G.edges()) == [(i, j) for i in range(5, 10) for j in range(i + 1, 10)]
    G = gen_two_type(10, WitnessTriple(0, 0, 1), seed=3)
    assert all(i < 5 <= j for i, j in G.edges())
    assert G.num_edges == 25
    with pytest.raises(ParameterError):
        gen_two_type(10, WitnessTriple(2, 0, 0), seed=3)


def test_random_parts():
    parts = random_parts(20, [3, 4, 5], seed=9, stream=1)
    assert [len(p) for p in parts] == [3, 4, 5]
    flat = [v for p in parts for v in p]
    assert len(set(flat)) == 12 and all(0 <= v < 20 for v in flat)
    assert random_parts(20, [3, 4, 5], seed=9, stream=1) == parts
    with pytest.raises(ParameterError):
        random_parts(5, [3, 3], seed=1)


def test_graphon_blocks():
    W = TwoTypeGraphon.from_triple(SINGLE_EDGE_WITNESS)
    assert W(Fraction(3, 4), Fraction(9, 10)) == Fraction(3, 4)
    assert W(Fraction(1, 4), Fraction(0)) == Fraction(1, 4)
    assert W(Fraction(1, 4), Fraction(1)) == Fraction(1, 2)
    with pytest.raises(ParameterError):
        W(HALF, Fraction(1, 3))
    with pytest.raises(ParameterError):
        TwoTypeGraphon(Fraction(3, 2), 0, 0)
    assert TwoTypeGraphon(HALF, HALF, HALF).is_constant()


def _psi_brute(F, W, xs):
    m = F.n
    values = [[W(xs[i], xs[j]) if i != j else None for j in range(m)] for i in range(m)]
    edges = F.edges()
    total = Fraction(0)
    for sigma in permutations(range(m)):
        term = Fraction(1)
        for i, j in edges:
            term *= values[sigma[i]][sigma[j]]
        total += term
    return total / factorial(m)


def _point(rng):
    while True:
        x = Fraction(rng.randint(0, 60), 60)
        if x != HALF:
            return x


def test_two_type_psi_matches_brute_force(rng, make_graph, make_rational):
    for _ in range(20):
        F = make_graph(rng, rng.randint(1, 6))
        W = TwoTypeGraphon(make_rational(rng), make_rational(rng), make_rational(rng))
        for _ in range(100):
            xs = [_point(rng) for _ in range(F.n)]
            assert two_type_psi(F, W, xs) == _psi_brute(F, W, xs)


def test_two_type_psi_arity():
    with pytest.raises(ParameterError):
        two_type_psi(SmallGraph.complete(3), TwoTypeGraphon(HALF, HALF, HALF), [Fraction(1, 4)])


def test_partition_integral_is_invariant_for_single_edge_witness():
    W = TwoTypeGraphon.from_triple(SINGLE_EDGE_WITNESS)
    K2 = SmallGraph.complete(2)
    values = set()
    for t in (Fraction(0), Fraction(1, 10), Fraction(1, 4), Fraction(1, 3), HALF):
        values.add(two_type_partition_integral(K2, W, [(t, HALF - t), (HALF - t, t)]))
    assert values == {Fraction(1, 8)}


def test_partition_integral_varies_for_triangle():
    W = TwoTypeGraphon.from_triple(SINGLE_EDGE_WITNESS)
    K3 = SmallGraph.complete(3)
    sixth, third = Fraction(1, 6), Fraction(1, 3)
    balanced = two_type_partition_integral(K3, W, [(sixth, sixth)] * 3)
    split = two_type_partition_integral(K3, W, [(third, 0), (0, third), (sixth, sixth)])
    assert split == Fraction(1, 216)
    assert balanced != split


def test_partition_integral_rejects_infeasible_allocation():
    W = TwoTypeGraphon(HALF, HALF, HALF)
    with pytest.raises(ParameterError):
        two_type_partition_integral(SmallGraph.complete(2), W, [(HALF, 0), (Fraction(1, 4), 0)])
    with pytest.raises(ParameterError):
        two_type_partition_integral(SmallGraph.complete(2), W, [(HALF, 0)])


def test_generator_spec():
    gen = GeneratorSpec.parse("twotype:3/4,1/4,1/2", 40)
    assert gen.density == HALF
    assert gen.describe() == {"kind": "twotype", "n": 40, "u": "3/4", "v": "1/4", "s": "1/2"}
    assert GeneratorSpec.parse("gnp:0.3", 10).density == Fraction(3, 10)
    with pytest.raises(ParameterError):
        GeneratorSpec.parse("ws:1/2", 10)
    with pytest.raises(ParameterError):
        GeneratorSpec("gnp", 0, p=HALF)


def test_experiment_trials_are_reproducible():
    K2 = SmallGraph.complete(2)
    gen = GeneratorSpec("gnp", 40, p=HALF)
    serial = qr_experiment(K2, gen, [HALF, HALF], trials=3, seed=1)
    threaded = qr_experiment(K2, gen, [HALF, HALF], trials=3, seed=1, threads=3)
    assert [t.count for t in serial.trials] == [t.count for t in threaded.trials]
    assert serial.sizes == [20, 20]
    first = serial.trials[0]
    assert first.expected == 200
    G = gen.sample(1, 0)
    parts = random_parts(40, [20, 20], 1, 0)
    assert first.count == count_constrained(K2, G, PartitionSpec.one_to_one(parts))
    assert first.relative_deviation == pytest.approx(abs(first.count - 200) / 200)


def test_experiment_arguments():
    gen = GeneratorSpec("gnp", 20, p=HALF)
    with pytest.raises(ParameterError):
        qr_experiment(SmallGraph.complete(3), gen, [HALF, HALF], trials=2, seed=1)
    with pytest.raises(ParameterError):
        qr_experiment(SmallGraph.complete(2), gen, [HALF, HALF], trials=0, seed=1)


@pytest.mark.slow
def test_triangle_deviation_shrinks_with_n():
    K3 = SmallGraph.complete(3)
    third = Fraction(1, 3)
    means = []
    for n in (50, 100, 200):
        devs = []
        for seed in (1, 2, 3):
            report = qr_experiment(K3, GeneratorSpec("gnp", n, p=HALF), [third] * 3, trials=10, seed=seed)
            devs.extend(report.relative_deviations())
        means.append(statistics.fmean(devs))
    assert means[0] > means[1] > means[2]
    assert means[2] < 0.15
