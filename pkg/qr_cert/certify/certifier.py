"""
Good / bad verdicts for pattern graphs

A graph F is good when the equal-parts restricted count property forces
quasi-randomness. Fast paths decide empty, single-edge, disconnected, regular
and star graphs; everything else goes through the degree-sequence system,
its resultant R(u) and exact root counting on (0, 1) and (1, inf).
"""
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.bipoly import BiPoly, resultant_v
from ..algebra.intervals import interval_eval
from ..algebra.poly import UniPoly, divide_out_root, primitive, squarefree_part
from ..algebra.roots import STURM_DEGREE_LIMIT, RootInterval, isolate_roots, refine
from ..errors import ParameterError, PolynomialError, VertexCapError
from ..graphs.core import (
    PATTERN_VERTEX_CAP,
    SmallGraph,
    StructureClass,
    StructureKind,
    classify,
    is_path,
    is_star,
    strip_isolated,
)
from ..graphs.formats import ATLAS_MAX_VERTICES, atlas_graphs, encode_graph6
from .lambda_poly import (
    SINGLE_EDGE_WITNESS,
    AffinePair,
    WitnessTriple,
    check_alg_system,
    degree_le1_check,
    degree_seq_equations,
)

logger = logging.getLogger(__name__)

# Exclusion boxes are refined to width 2^-k for each k in turn.
DEFAULT_REFINEMENT_WIDTHS = (16, 32, 64, 128)
SURVEY_MAX_VERTICES = 8


class VerdictKind(str, Enum):
    GOOD = "Good"
    BAD = "Bad"
    INCONCLUSIVE = "Inconclusive"


class Method(str, Enum):
    EMPTY_GRAPH = "EmptyGraph"
    SINGLE_EDGE = "SingleEdge"
    FAST_PATH_DISCONNECTED = "FastPathDisconnected"
    FAST_PATH_REGULAR = "FastPathRegular"
    FAST_PATH_STAR = "FastPathStar"
    RESULTANT_NO_ROOTS = "ResultantNoRoots"
    RESULTANT_PAIR_EXCLUSION = "ResultantPairExclusion"
    WITNESS_SEARCH = "WitnessSearch"
    UNRESOLVED_PAIRS = "UnresolvedPairs"
    DEGENERATE_SYSTEM = "DegenerateSystem"


_EXIT_CODES = {VerdictKind.GOOD: 0, VerdictKind.BAD: 1, VerdictKind.INCONCLUSIVE: 2}


@dataclass(frozen=True)
class PairCheck:
    """Outcome of the exclusion test for one (u-root, v-root) pair"""

    u_index: int
    v_index: int
    u_box: RootInterval
    v_box: RootInterval
    excluded_by: Optional[str]  # "f1", "f2" or None when unresolved
    width_exponent: int
    enclosure: Tuple[Fraction, Fraction]

    @property
    def excluded(self) -> bool:
        return self.excluded_by is not None


@dataclass(frozen=True)
class ResultantEvidence:
    """Everything the resultant path computed, in a form that can be re-checked"""

    f1: Optional[BiPoly] = None
    f2: Optional[BiPoly] = None
    resultant: Optional[UniPoly] = None
    multiplicity_at_0: int = 0
    multiplicity_at_1: int = 0
    roots_01: Optional[List[RootInterval]] = None
    roots_1inf: Optional[List[RootInterval]] = None
    pairs: List[PairCheck] = field(default_factory=list)
    diagnostic: Optional[str] = None

    @property
    def count_01(self) -> Optional[int]:
        return None if self.roots_01 is None else len(self.roots_01)

    @property
    def count_1inf(self) -> Optional[int]:
        return None if self.roots_1inf is None else len(self.roots_1inf)

    @property
    def unresolved_pairs(self) -> List[PairCheck]:
        return [p for p in self.pairs if not p.excluded]

    @property
    def rootless_intervals(self) -> List[str]:
        out = []
        if self.count_01 == 0:
            out.append("(0,1)")
        if self.count_1inf == 0:
            out.append("(1,inf)")
        return out


@dataclass(frozen=True)
class Verdict:
    """Certified outcome for one pattern graph"""

    graph: SmallGraph
    kind: VerdictKind
    method: Method
    structure: StructureClass
    witness: Optional[WitnessTriple] = None
    pair: Optional[AffinePair] = None
    evidence: ResultantEvidence = field(default_factory=ResultantEvidence)

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.kind]

    def __str__(self) -> str:
        return f"{self.kind.value}({self.method.value})"


def _bad(F: SmallGraph, witness: WitnessTriple, method: Method, structure: StructureClass, cap: int,
         evidence: Optional[ResultantEvidence] = None) -> Optional[Verdict]:
    """Bad verdict after re-validating the witness both ways; None if it does not validate"""
    if witness.all_equal():
        return None
    pair = check_alg_system(F, witness, cap)
    if pair is None:
        return None
    if degree_le1_check(F, witness, cap) != pair:
        raise PolynomialError(f"level equations and Lambda degree disagree for witness {witness}")
    return Verdict(F, VerdictKind.BAD, method, structure, witness, pair, evidence or ResultantEvidence())


def exclude_root_pairs(
    f1: BiPoly,
    f2: BiPoly,
    resultant: UniPoly,
    u_roots: Sequence[RootInterval],
    v_roots: Sequence[RootInterval],
    widths: Sequence[int] = DEFAULT_REFINEMENT_WIDTHS,
) -> List[PairCheck]:
    """
    Try to prove that no root pair (u_i, v_j) is a common zero of f1 and f2

    Both boxes are refined through the width schedule; a pair is excluded as
    soon as the interval enclosure of f1 or f2 on the box misses 0.
    """
    if not widths:
        raise ParameterError("refinement schedule is empty")
    checks = []
    refined: Dict[Tuple[str, int, int], RootInterval] = {}

    def box(side: str, index: int, k: int, root: RootInterval) -> RootInterval:
        key = (side, index, k)
        if key not in refined:
            refined[key] = refine(root, resultant, Fraction(1, 2 ** k))
        return refined[key]

    for i, u_root in enumerate(u_roots):
        for j, v_root in enumerate(v_roots):
            check = None
            for k in widths:
                u_box, v_box = box("u", i, k, u_root), box("v", j, k, v_root)
                for name, f in (("f1", f1), ("f2", f2)):
                    lo, hi = interval_eval(f, u_box, v_box)
                    if lo > 0 or hi < 0:
                        check = PairCheck(i, j, u_box, v_box, name, k, (lo, hi))
                        break
                if check:
                    break
            if check is None:
                lo, hi = interval_eval(f1, u_box, v_box)
                check = PairCheck(i, j, u_box, v_box, None, widths[-1], (lo, hi))
                logger.info(f"Pair ({i}, {j}) survives refinement to 2^-{widths[-1]}")
            checks.append(check)
    return checks


def resultant_evidence(
    H: SmallGraph,
    full_counts: bool = True,
    refinement_widths: Sequence[int] = DEFAULT_REFINEMENT_WIDTHS,
    sturm_degree_limit: int = STURM_DEGREE_LIMIT,
) -> ResultantEvidence:
    """
    Run the resultant method on a graph without isolated vertices

    Args:
        H: pattern graph with at least one edge and no isolated vertex
        full_counts: count roots on (1, inf) even when (0, 1) has none
        refinement_widths: exclusion schedule as exponents of 2^-k
        sturm_degree_limit: largest degree cross-checked with a Sturm chain
    """
    f1, f2 = degree_seq_equations(H)
    if f1 == f2:
        return ResultantEvidence(f1, f2, diagnostic="degree-sequence equations coincide (f1 = f2); resultant vanishes")
    R = resultant_v(f1, f2)
    if R.is_zero():
        return ResultantEvidence(f1, f2, diagnostic="f1 and f2 share a factor; resultant vanishes identically")
    R = primitive(R)
    core, mult0 = divide_out_root(R, Fraction(0))
    core, mult1 = divide_out_root(core, Fraction(1))
    logger.info(f"R(u) has degree {R.degree}; root 0 with multiplicity {mult0}, root 1 with multiplicity {mult1}")
    if core.degree <= 0:
        return ResultantEvidence(f1, f2, R, mult0, mult1, roots_01=[], roots_1inf=[])
    core = squarefree_part(core)
    roots_01 = isolate_roots(core, Fraction(0), Fraction(1), sturm_degree_limit)
    logger.info(f"{len(roots_01)} root(s) of R in (0,1)")
    roots_1inf = None
    if roots_01 or full_counts:
        roots_1inf = isolate_roots(core, Fraction(1), None, sturm_degree_limit)
        logger.info(f"{len(roots_1inf)} root(s) of R in (1,inf)")
    evidence = ResultantEvidence(f1, f2, R, mult0, mult1, roots_01, roots_1inf)
    if roots_01 and roots_1inf:
        pairs = exclude_root_pairs(f1, f2, core, roots_01, roots_1inf, refinement_widths)
        evidence = replace(evidence, pairs=pairs)
    return evidence


def _witness_from_pair(check: PairCheck) -> WitnessTriple:
    """Midpoint triple (u, v, 1) scaled into the unit cube"""
    u, v = check.u_box.midpoint, check.v_box.midpoint
    top = max(u, v, Fraction(1))
    return WitnessTriple(u / top, v / top, 1 / top)


def certify(
    F: SmallGraph,
    cap: int = PATTERN_VERTEX_CAP,
    refinement_widths: Sequence[int] = DEFAULT_REFINEMENT_WIDTHS,
    sturm_degree_limit: int = STURM_DEGREE_LIMIT,
    full_counts: bool = False,
    fast_paths: bool = True,
) -> Verdict:
    """
    Decide whether F is good, bad, or not settled by the resultant method

    Order after dropping isolated vertices: no edge, one edge (both Bad with
    witness 3/4, 1/4, 1/2), disconnected with two nontrivial components,
    regular with m >= 3, star with m >= 3, then the resultant method.
    Witness pairs are computed on F as given, isolated vertices included.

    Args:
        F: pattern graph
        cap: vertex cap for subset enumeration
        refinement_widths: exclusion schedule as exponents of 2^-k
        sturm_degree_limit: largest degree cross-checked with a Sturm chain
        full_counts: always count roots on both intervals
        fast_paths: when False, disconnected, regular and star graphs go
            through the resultant method too

    Returns:
        Verdict with method tag and evidence
    """
    if F.n > cap:
        raise VertexCapError(F.n, cap)
    H = strip_isolated(F)
    structure = classify(H)
    logger.debug(f"Certifying {F}: structure {structure}")
    kind = structure.kind
    if kind in (StructureKind.EMPTY, StructureKind.SINGLE_EDGE):
        method = Method.EMPTY_GRAPH if kind is StructureKind.EMPTY else Method.SINGLE_EDGE
        verdict = _bad(F, SINGLE_EDGE_WITNESS, method, structure, cap)
        if verdict is None:
            raise PolynomialError(f"canonical witness failed to validate for {F}")
        return verdict
    fast = {
        StructureKind.DISCONNECTED: Method.FAST_PATH_DISCONNECTED,
        StructureKind.REGULAR: Method.FAST_PATH_REGULAR,
        StructureKind.STAR: Method.FAST_PATH_STAR,
    }
    if fast_paths and kind in fast:
        return Verdict(F, VerdictKind.GOOD, fast[kind], structure)

    evidence = resultant_evidence(H, full_counts, refinement_widths, sturm_degree_limit)
    if evidence.diagnostic:
        logger.warning(f"{encode_graph6(F)}: {evidence.diagnostic}")
        return Verdict(F, VerdictKind.INCONCLUSIVE, Method.DEGENERATE_SYSTEM, structure, evidence=evidence)
    if evidence.count_01 == 0 or evidence.count_1inf == 0:
        return Verdict(F, VerdictKind.GOOD, Method.RESULTANT_NO_ROOTS, structure, evidence=evidence)
    unresolved = evidence.unresolved_pairs
    if not unresolved:
        return Verdict(F, VerdictKind.GOOD, Method.RESULTANT_PAIR_EXCLUSION, structure, evidence=evidence)
    for check in unresolved:
        found = _bad(F, _witness_from_pair(check), Method.WITNESS_SEARCH, structure, cap, evidence)
        if found:
            logger.info(f"Exact witness found at pair ({check.u_index}, {check.v_index})")
            return found
    logger.info(f"{encode_graph6(F)}: {len(unresolved)} unresolved root pair(s)")
    return Verdict(F, VerdictKind.INCONCLUSIVE, Method.UNRESOLVED_PAIRS, structure, evidence=evidence)


def structure_family(F: SmallGraph) -> str:
    """Grouping used in survey tallies, on the graph as given (isolated vertices count)"""
    if F.num_edges <= 1:
        return "trivial"
    if len(F.components()) > 1:
        return "disconnected"
    if len(set(F.degrees)) == 1:
        return "regular"
    if is_star(F):
        return "star"
    if is_path(F):
        return "path"
    return "resultant"


@dataclass(frozen=True)
class SurveyRow:
    graph6: str
    vertices: int
    edges: int
    family: str
    verdict: Verdict


@dataclass(frozen=True)
class Survey:
    m: int
    rows: List[SurveyRow]

    def family_tally(self, nontrivial_only: bool = True) -> Dict[str, int]:
        return dict(Counter(r.family for r in self.rows if not nontrivial_only or r.edges > 1))

    def method_tally(self) -> Dict[str, int]:
        return dict(Counter(r.verdict.method.value for r in self.rows))

    def verdict_tally(self) -> Dict[str, int]:
        return dict(Counter(r.verdict.kind.value for r in self.rows))


def survey(m: int, graphs: Optional[Sequence[SmallGraph]] = None, threads: int = 1, **options) -> Survey:
    """
    Certify every isomorphism class of graphs on m vertices

    Classes come from the graph atlas for m <= 7; larger m needs ``graphs``
    (typically read from a graph6 list file). Rows keep the input order
    whatever the thread count.
    """
    if not 2 <= m <= SURVEY_MAX_VERTICES:
        raise ParameterError(f"survey size must be in 2..{SURVEY_MAX_VERTICES}, got {m}")
    if graphs is None:
        if m > ATLAS_MAX_VERTICES:
            raise ParameterError(f"m = {m} needs a graph6 list file; the built-in atlas stops at {ATLAS_MAX_VERTICES}")
        graphs = atlas_graphs(m)
    for g in graphs:
        if g.n != m:
            raise ParameterError(f"graph {encode_graph6(g)} has {g.n} vertices, survey expects {m}")
    logger.info(f"Survey of {len(graphs)} graphs on {m} vertices with {threads} thread(s)")
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        verdicts = list(pool.map(lambda g: certify(g, **options), graphs))
    rows = [
        SurveyRow(encode_graph6(g), g.n, g.num_edges, structure_family(g), v)
        for g, v in zip(graphs, verdicts)
    ]
    return Survey(m, rows)


def certify_bipartite(a: int, b: int, **options) -> Verdict:
    """Certify K_{a,b}, always recording resultant root counts on both intervals"""
    if a < 1 or b < 1:
        raise ParameterError(f"complete bipartite sides must be positive, got ({a}, {b})")
    options.pop("full_counts", None)
    cap = options.get("cap", PATTERN_VERTEX_CAP)
    if a + b > cap:
        raise VertexCapError(a + b, cap)
    F = SmallGraph.complete_bipartite(a, b)
    verdict = certify(F, full_counts=True, **options)
    if verdict.evidence.resultant is None and verdict.evidence.diagnostic is None:
        evidence = resultant_evidence(
            strip_isolated(F),
            full_counts=True,
            refinement_widths=options.get("refinement_widths", DEFAULT_REFINEMENT_WIDTHS),
            sturm_degree_limit=options.get("sturm_degree_limit", STURM_DEGREE_LIMIT),
        )
        verdict = replace(verdict, evidence=evidence)
    logger.info(f"K_{{{a},{b}}}: {verdict}; rootless {verdict.evidence.rootless_intervals}")
    return verdict


@dataclass(frozen=True)
class PathSweepRow:
    m: int
    verdict: Verdict

    @property
    def parity_pattern_holds(self) -> bool:
        """Even m: no root in (0,1); odd m: no root in (1,inf)"""
        ev = self.verdict.evidence
        return ev.count_01 == 0 if self.m % 2 == 0 else ev.count_1inf == 0


def path_sweep(max_m: int, min_m: int = 4, **options) -> List[PathSweepRow]:
    """Certify the paths P_min_m .. P_max_m and record which interval is free of roots"""
    if min_m < 4 or max_m < min_m:
        raise ParameterError(f"path sweep needs 4 <= min_m <= max_m, got {min_m}..{max_m}")
    rows = []
    for m in range(min_m, max_m + 1):
        verdict = certify(SmallGraph.path(m), **options)
        row = PathSweepRow(m, verdict)
        logger.info(f"P{m}: {verdict}, roots (0,1)={verdict.evidence.count_01} (1,inf)={verdict.evidence.count_1inf}")
        rows.append(row)
    return rows
