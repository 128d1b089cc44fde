"""
Two-type graphon evaluations and seeded count experiments
"""
import logging
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import List, Optional, Sequence, Tuple

from ..algebra.poly import format_rational, parse_rational
from ..certify.lambda_poly import WitnessTriple, level_sums
from ..counting.embeddings import COUNT_PATTERN_CAP, PartitionSpec, count_constrained, count_symmetrized, part_sizes
from ..errors import ParameterError
from ..graphs.core import HostGraph, SmallGraph
from .sampling import gen_gnp, gen_two_type, random_parts

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class TwoTypeGraphon:
    """Step graphon: u on (1/2, 1]^2, v on [0, 1/2]^2 and s across"""

    u: Fraction
    v: Fraction
    s: Fraction

    def __post_init__(self):
        for name in ("u", "v", "s"):
            value = Fraction(getattr(self, name))
            if not 0 <= value <= 1:
                raise ParameterError(f"graphon value {name} must lie in [0, 1], got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_triple(cls, w: WitnessTriple) -> "TwoTypeGraphon":
        return cls(w.u, w.v, w.s)

    @property
    def triple(self) -> WitnessTriple:
        return WitnessTriple(self.u, self.v, self.s)

    def is_constant(self) -> bool:
        return self.u == self.v == self.s

    @staticmethod
    def is_high(x: Fraction) -> bool:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ParameterError(f"point {x} outside [0, 1]")
        if x == HALF:
            raise ParameterError("coordinate exactly 1/2 lies on the block boundary")
        return x > HALF

    def __call__(self, x: Fraction, y: Fraction) -> Fraction:
        hx, hy = self.is_high(x), self.is_high(y)
        if hx and hy:
            return self.u
        if not hx and not hy:
            return self.v
        return self.s


def two_type_psi(F: SmallGraph, W: TwoTypeGraphon, x: Sequence[Fraction]) -> Fraction:
    """
    Symmetrised product of W over the edges of F at the point x

    Only k = #{i : x_i > 1/2} matters; the value is C(m, k)^-1 * L_k where L_k
    is the level sum of F at (u, v, s).
    """
    if len(x) != F.n:
        raise ParameterError(f"point has {len(x)} coordinates, pattern has {F.n} vertices")
    k = sum(1 for xi in x if W.is_high(xi))
    return level_sums(F, W.triple)[k] / comb(F.n, k)


Allocation = Sequence[Tuple[Fraction, Fraction]]


def _check_allocation(allocation: Allocation):
    low = sum(Fraction(a) for a, _ in allocation)
    high = sum(Fraction(b) for _, b in allocation)
    if any(Fraction(a) < 0 or Fraction(b) < 0 for a, b in allocation):
        raise ParameterError("allocations must be non-negative")
    if low > HALF or high > HALF:
        raise ParameterError(f"allocation uses {low} of the low half and {high} of the high half; each is 1/2")


def two_type_partition_integral(F: SmallGraph, W: TwoTypeGraphon, allocation: Allocation) -> Fraction:
    """
    Integral of the symmetrised Psi over A_1 x ... x A_m

    ``allocation[i] = (a_i, b_i)`` gives the measure of part A_i inside the low
    half [0, 1/2] and the high half (1/2, 1]. The integrand is constant on each
    choice of high coordinates H, so the integral is
    sum_H prod_{i in H} b_i prod_{i not in H} a_i * C(m, |H|)^-1 * L_|H|.
    """
    if len(allocation) != F.n:
        raise ParameterError(f"{len(allocation)} parts for a pattern with {F.n} vertices")
    _check_allocation(allocation)
    # coefficients of prod_i (a_i + b_i t): weight of configurations with k high coordinates
    weights = [Fraction(1)]
    for a, b in allocation:
        a, b = Fraction(a), Fraction(b)
        nxt = [Fraction(0)] * (len(weights) + 1)
        for k, c in enumerate(weights):
            nxt[k] += c * a
            nxt[k + 1] += c * b
        weights = nxt
    levels = level_sums(F, W.triple)
    m = F.n
    return sum((weights[k] * levels[k] / comb(m, k) for k in range(m + 1)), Fraction(0))


@dataclass(frozen=True)
class GeneratorSpec:
    """Random host model: ``gnp`` with probability p, or ``twotype`` with a triple"""

    kind: str
    n: int
    p: Optional[Fraction] = None
    triple: Optional[WitnessTriple] = None

    def __post_init__(self):
        if self.kind == "gnp":
            if self.p is None:
                raise ParameterError("gnp generator needs p")
        elif self.kind == "twotype":
            if self.triple is None:
                raise ParameterError("twotype generator needs u, v, s")
        else:
            raise ParameterError(f"unknown generator {self.kind!r}; use gnp or twotype")
        if self.n < 1:
            raise ParameterError(f"vertex count must be positive, got {self.n}")

    @classmethod
    def parse(cls, text: str, n: int) -> "GeneratorSpec":
        """``gnp:1/2`` or ``twotype:u,v,s``"""
        kind, _, params = text.partition(":")
        if kind == "gnp":
            return cls("gnp", n, p=parse_rational(params))
        if kind == "twotype":
            return cls("twotype", n, triple=WitnessTriple.parse(params))
        raise ParameterError(f"unknown generator {text!r}; use gnp:P or twotype:U,V,S")

    @property
    def density(self) -> Fraction:
        """Limiting edge density: p, or (u + v + 2s) / 4 for the two-type model"""
        if self.kind == "gnp":
            return Fraction(self.p)
        w = self.triple
        return (w.u + w.v + 2 * w.s) / 4

    def sample(self, seed: int, stream: int) -> HostGraph:
        if self.kind == "gnp":
            return gen_gnp(self.n, self.p, seed, stream)
        return gen_two_type(self.n, self.triple, seed, stream)

    def describe(self) -> dict:
        out = {"kind": self.kind, "n": self.n}
        if self.kind == "gnp":
            out["p"] = format_rational(self.p)
        else:
            out.update(self.triple.to_json())
        return out


@dataclass(frozen=True)
class TrialResult:
    trial: int
    edges: int
    parts: List[Tuple[int, ...]]
    count: int
    symmetrized: Fraction
    expected: Fraction
    relative_deviation: Optional[float]
    normalized_deviation: float


@dataclass
class ExperimentReport:
    """Per-trial counts against p^e(F) * prod |U_i|, reproducible from (parameters, seed)"""

    pattern: SmallGraph
    generator: GeneratorSpec
    alphas: List[Fraction]
    sizes: List[int]
    seed: int
    trials: List[TrialResult] = field(default_factory=list)

    def relative_deviations(self) -> List[float]:
        return [t.relative_deviation for t in self.trials if t.relative_deviation is not None]

    @property
    def mean_relative_deviation(self) -> Optional[float]:
        devs = self.relative_deviations()
        return statistics.fmean(devs) if devs else None

    @property
    def max_relative_deviation(self) -> Optional[float]:
        devs = self.relative_deviations()
        return max(devs) if devs else None

    @property
    def stdev_relative_deviation(self) -> Optional[float]:
        devs = self.relative_deviations()
        return statistics.stdev(devs) if len(devs) > 1 else None

    @property
    def mean_normalized_deviation(self) -> float:
        return statistics.fmean(t.normalized_deviation for t in self.trials) if self.trials else 0.0


def qr_experiment(
    F: SmallGraph,
    generator: GeneratorSpec,
    alphas: Sequence[Fraction],
    trials: int,
    seed: int,
    threads: int = 1,
    cap: int = COUNT_PATTERN_CAP,
) -> ExperimentReport:
    """
    Compare restricted counts on sampled hosts with p^e(F) * prod |U_i|

    Trial t samples its host and its parts from stream t of ``seed``; trials
    run in a thread pool and are collected in trial order.
    """
    if len(alphas) != F.n:
        raise ParameterError(f"{len(alphas)} part fractions for a pattern with {F.n} vertices")
    if trials < 1:
        raise ParameterError("at least one trial is needed")
    n = generator.n
    sizes = part_sizes(n, alphas)
    p = generator.density
    expected = p ** F.num_edges * prod(sizes)
    scale = n ** F.n

    def run(trial: int) -> TrialResult:
        G = generator.sample(seed, trial)
        parts = random_parts(n, sizes, seed, trial)
        spec = PartitionSpec.one_to_one(parts)
        count = count_constrained(F, G, spec, cap)
        sym = count_symmetrized(F, G, spec, cap)
        gap = abs(count - expected)
        rel = float(gap / expected) if expected else None
        logger.debug(f"Trial {trial}: count {count}, expected {float(expected):.1f}")
        return TrialResult(trial, G.num_edges, parts, count, sym, expected, rel, float(gap / scale))

    logger.info(f"Experiment: {trials} trials on {generator.describe()} with parts {sizes}")
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        results = list(pool.map(run, range(trials)))
    report = ExperimentReport(F, generator, [Fraction(a) for a in alphas], sizes, seed, results)
    logger.info(f"Mean relative deviation {report.mean_relative_deviation}")
    return report
