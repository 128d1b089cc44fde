"""
Seeded random graphs and random vertex parts

Randomness comes from numpy's Philox 4x64-10 counter-based generator, keyed
through ``SeedSequence([seed, stream, ...])``. Each trial of an experiment uses
its own stream, so results do not depend on thread count or scheduling, and
the same (seed, stream) pair gives the same bits on every platform.

An edge with probability p is present iff the next raw 64-bit output is below
floor(p * 2^64); p = 1 always gives an edge. Pairs (i, j), i < j, are visited
row by row.
"""
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from ..algebra.poly import parse_rational
from ..certify.lambda_poly import WitnessTriple
from ..errors import ParameterError
from ..graphs.core import HostGraph

logger = logging.getLogger(__name__)

_TWO_64 = 1 << 64
# Sub-stream tags under one (seed, stream) key
_EDGES = 0
_PARTS = 1


def philox(seed: int, *key: int) -> np.random.Philox:
    """Philox bit generator for the key (seed, *key)"""
    if seed < 0 or any(k < 0 for k in key):
        raise ParameterError("seeds and stream indices must be non-negative")
    return np.random.Philox(np.random.SeedSequence([seed, *key]))


def _probability(p) -> Fraction:
    p = parse_rational(p) if isinstance(p, str) else Fraction(p)
    if not 0 <= p <= 1:
        raise ParameterError(f"edge probability must lie in [0, 1], got {p}")
    return p


def _threshold(p: Fraction) -> int:
    return (p.numerator << 64) // p.denominator


def _sample_edges(n: int, probs: Sequence[Fraction], block: np.ndarray, seed: int, stream: int) -> HostGraph:
    """
    Shared sampler: ``block[i]`` picks the entry of ``probs`` used for pair i

    Both generators go through here, so a two-type model with u = v = s = p
    reproduces G(n, p) bit for bit.
    """
    if n < 1:
        raise ParameterError(f"vertex count must be positive, got {n}")
    rows, cols = np.triu_indices(n, k=1)
    thresholds = np.array([min(_threshold(p), _TWO_64 - 1) for p in probs], dtype=np.uint64)
    always = np.array([p == 1 for p in probs], dtype=bool)
    raw = philox(seed, stream, _EDGES).random_raw(len(rows))
    present = (raw < thresholds[block]) | always[block]
    edges = list(zip(rows[present].tolist(), cols[present].tolist()))
    logger.debug(f"Sampled {len(edges)} edges on {n} vertices (seed {seed}, stream {stream})")
    return HostGraph.from_edges(n, edges)


def gen_gnp(n: int, p, seed: int, stream: int = 0) -> HostGraph:
    """Erdos-Renyi G(n, p) with exact rational p"""
    p = _probability(p)
    m = n * (n - 1) // 2
    return _sample_edges(n, [p], np.zeros(m, dtype=np.intp), seed, stream)


def two_type_blocks(n: int) -> np.ndarray:
    """Per vertex 0 for low (first n // 2 vertices) and 1 for high"""
    return (np.arange(n) >= n // 2).astype(np.intp)


def gen_two_type(n: int, w: WitnessTriple, seed: int, stream: int = 0) -> HostGraph:
    """
    Two-type block model: low-low pairs with probability v, high-high with u, across with s
    """
    if not w.in_unit_cube():
        raise ParameterError(f"two-type probabilities must lie in [0, 1], got {w.to_json()}")
    if n % 2:
        logger.warning(f"Odd vertex count {n}: the low half has {n // 2} vertices")
    side = two_type_blocks(n)
    rows, cols = np.triu_indices(n, k=1)
    # index into (v, s, u): 0 both low, 1 across, 2 both high
    block = side[rows] + side[cols]
    return _sample_edges(n, [w.v, w.s, w.u], block, seed, stream)


def random_parts(n: int, sizes: Sequence[int], seed: int, stream: int = 0) -> List[Tuple[int, ...]]:
    """Disjoint uniformly random parts with the given sizes, each sorted"""
    if any(s < 0 for s in sizes):
        raise ParameterError("part sizes must be non-negative")
    if sum(sizes) > n:
        raise ParameterError(f"parts of total size {sum(sizes)} do not fit in {n} vertices")
    order = np.random.Generator(philox(seed, stream, _PARTS)).permutation(n)
    parts = []
    start = 0
    for size in sizes:
        parts.append(tuple(sorted(order[start:start + size].tolist())))
        start += size
    return parts
