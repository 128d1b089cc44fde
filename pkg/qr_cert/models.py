"""
Run configuration and JSON report models
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from . import REPORT_SCHEMA_VERSION, __version__
from .algebra.bipoly import BiPoly
from .algebra.poly import format_rational
from .algebra.roots import STURM_DEGREE_LIMIT, RootInterval
from .certify.certifier import DEFAULT_REFINEMENT_WIDTHS, PathSweepRow, ResultantEvidence, Survey, Verdict
from .counting.embeddings import COUNT_PATTERN_CAP
from .empirical.experiments import ExperimentReport
from .graphs.core import PATTERN_VERTEX_CAP
from .graphs.formats import encode_graph6


LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class RunConfig(BaseModel):
    """Settings shared by all subcommands; unknown keys are rejected"""

    model_config = ConfigDict(extra="forbid")

    pattern_vertex_cap: int = Field(PATTERN_VERTEX_CAP, ge=1, le=30, description="Vertex cap for subset enumeration")
    count_pattern_cap: int = Field(COUNT_PATTERN_CAP, ge=1, le=16, description="Vertex cap for host counting patterns")
    refinement_widths: List[int] = Field(list(DEFAULT_REFINEMENT_WIDTHS), description="Exclusion widths 2^-k")
    sturm_degree_limit: int = Field(STURM_DEGREE_LIMIT, ge=0, description="Largest degree cross-checked by Sturm")
    threads: int = Field(1, ge=1, description="Worker cap for surveys and experiments")
    log_level: str = Field("WARNING", description="Logging level")

    @field_validator("refinement_widths")
    @classmethod
    def _increasing(cls, value: List[int]) -> List[int]:
        if not value or any(k <= 0 for k in value) or any(a >= b for a, b in zip(value, value[1:])):
            raise ValueError("refinement_widths must be a non-empty increasing list of positive exponents")
        return value

    @field_validator("log_level")
    @classmethod
    def _level(cls, value: str) -> str:
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return value

    def certify_options(self) -> dict:
        return {
            "cap": self.pattern_vertex_cap,
            "refinement_widths": tuple(self.refinement_widths),
            "sturm_degree_limit": self.sturm_degree_limit,
        }


class Report(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    tool_version: str = __version__


class RootIntervalModel(BaseModel):
    lo: str
    hi: str
    certificate: str
    approx: float
    exact: Optional[str] = None

    @classmethod
    def of(cls, r: RootInterval) -> "RootIntervalModel":
        return cls(**r.to_json())


class PairModel(BaseModel):
    u_index: int
    v_index: int
    u_box: RootIntervalModel
    v_box: RootIntervalModel
    excluded_by: Optional[str]
    width_exponent: int
    enclosure: List[str]


def bipoly_terms(f: BiPoly) -> List[List[int]]:
    """Terms as [i, j, c] for c * u^i * v^j, sorted"""
    return [[i, j, c] for (i, j), c in sorted(f.terms().items())]


class CertifyReport(Report):
    graph: str
    vertices: int
    edges: int
    structure: str
    verdict: str
    method: str
    witness: Optional[Dict[str, str]] = None
    pair: Optional[Dict[str, str]] = None
    f1: Optional[List[List[int]]] = None
    f2: Optional[List[List[int]]] = None
    resultant_coeffs: Optional[List[str]] = None
    resultant_degree: Optional[int] = None
    multiplicity_at_0: int = 0
    multiplicity_at_1: int = 0
    roots_01: Optional[int] = None
    roots_1inf: Optional[int] = None
    intervals_01: List[RootIntervalModel] = []
    intervals_1inf: List[RootIntervalModel] = []
    rootless_intervals: List[str] = []
    pairs: List[PairModel] = []
    unresolved_pairs: int = 0
    diagnostic: Optional[str] = None

    @classmethod
    def of(cls, verdict: Verdict) -> "CertifyReport":
        ev = verdict.evidence
        F = verdict.graph
        return cls(
            graph=encode_graph6(F),
            vertices=F.n,
            edges=F.num_edges,
            structure=str(verdict.structure),
            verdict=verdict.kind.value,
            method=verdict.method.value,
            witness=verdict.witness.to_json() if verdict.witness else None,
            pair=verdict.pair.to_json() if verdict.pair else None,
            f1=bipoly_terms(ev.f1) if ev.f1 is not None else None,
            f2=bipoly_terms(ev.f2) if ev.f2 is not None else None,
            resultant_coeffs=ev.resultant.to_json() if ev.resultant is not None else None,
            resultant_degree=ev.resultant.degree if ev.resultant is not None else None,
            multiplicity_at_0=ev.multiplicity_at_0,
            multiplicity_at_1=ev.multiplicity_at_1,
            roots_01=ev.count_01,
            roots_1inf=ev.count_1inf,
            intervals_01=[RootIntervalModel.of(r) for r in ev.roots_01 or []],
            intervals_1inf=[RootIntervalModel.of(r) for r in ev.roots_1inf or []],
            rootless_intervals=ev.rootless_intervals,
            pairs=[
                PairModel(
                    u_index=p.u_index,
                    v_index=p.v_index,
                    u_box=RootIntervalModel.of(p.u_box),
                    v_box=RootIntervalModel.of(p.v_box),
                    excluded_by=p.excluded_by,
                    width_exponent=p.width_exponent,
                    enclosure=[format_rational(x) for x in p.enclosure],
                )
                for p in ev.pairs
            ],
            unresolved_pairs=len(ev.unresolved_pairs),
            diagnostic=ev.diagnostic,
        )


class SurveyRowModel(BaseModel):
    graph: str
    edges: int
    family: str
    verdict: str
    method: str


class SurveyReport(Report):
    m: int
    rows: List[SurveyRowModel]
    verdict_tally: Dict[str, int]
    method_tally: Dict[str, int]
    family_tally: Dict[str, int]

    @classmethod
    def of(cls, result: Survey) -> "SurveyReport":
        return cls(
            m=result.m,
            rows=[
                SurveyRowModel(
                    graph=r.graph6,
                    edges=r.edges,
                    family=r.family,
                    verdict=r.verdict.kind.value,
                    method=r.verdict.method.value,
                )
                for r in result.rows
            ],
            verdict_tally=result.verdict_tally(),
            method_tally=result.method_tally(),
            family_tally=result.family_tally(),
        )


class PathRowModel(BaseModel):
    m: int
    verdict: str
    method: str
    resultant_degree: Optional[int]
    roots_01: Optional[int]
    roots_1inf: Optional[int]
    parity_pattern_holds: bool


class PathSweepReport(Report):
    rows: List[PathRowModel]

    @classmethod
    def of(cls, rows: List[PathSweepRow]) -> "PathSweepReport":
        out = []
        for row in rows:
            ev = row.verdict.evidence
            out.append(
                PathRowModel(
                    m=row.m,
                    verdict=row.verdict.kind.value,
                    method=row.verdict.method.value,
                    resultant_degree=ev.resultant.degree if ev.resultant is not None else None,
                    roots_01=ev.count_01,
                    roots_1inf=ev.count_1inf,
                    parity_pattern_holds=row.parity_pattern_holds,
                )
            )
        return cls(rows=out)


class LambdaReport(Report):
    graph: str
    witness: Dict[str, str]
    power_basis: List[str]
    bernstein_basis: List[str]
    lambda_x: List[str]
    degree: int
    affine_pair: Optional[Dict[str, str]] = None
    level_equations_hold: bool


class ResultantReport(Report):
    graph: str
    f1: List[List[int]]
    f2: List[List[int]]
    resultant_coeffs: Optional[List[str]] = None
    resultant_degree: Optional[int] = None
    multiplicity_at_0: int = 0
    multiplicity_at_1: int = 0
    roots_01: Optional[int] = None
    roots_1inf: Optional[int] = None
    intervals_01: List[RootIntervalModel] = []
    intervals_1inf: List[RootIntervalModel] = []
    diagnostic: Optional[str] = None

    @classmethod
    def of(cls, graph: str, ev: ResultantEvidence) -> "ResultantReport":
        return cls(
            graph=graph,
            f1=bipoly_terms(ev.f1),
            f2=bipoly_terms(ev.f2),
            resultant_coeffs=ev.resultant.to_json() if ev.resultant is not None else None,
            resultant_degree=ev.resultant.degree if ev.resultant is not None else None,
            multiplicity_at_0=ev.multiplicity_at_0,
            multiplicity_at_1=ev.multiplicity_at_1,
            roots_01=ev.count_01,
            roots_1inf=ev.count_1inf,
            intervals_01=[RootIntervalModel.of(r) for r in ev.roots_01 or []],
            intervals_1inf=[RootIntervalModel.of(r) for r in ev.roots_1inf or []],
            diagnostic=ev.diagnostic,
        )


class CountReport(Report):
    pattern: str
    host_vertices: int
    host_edges: int
    part_sizes: List[int]
    assignment: Optional[List[int]] = None
    multiplicities: Optional[List[int]] = None
    count: Optional[str] = None
    symmetrized: Optional[str] = None
    summed: Optional[str] = None
    multiplicity_averaged: Optional[str] = None


class SampleReport(Report):
    generator: Dict[str, object]
    seed: int
    stream: int
    vertices: int
    edges: int
    graph6: Optional[str] = None
    edge_list: List[List[int]]


class TrialModel(BaseModel):
    trial: int
    edges: int
    part_sizes: List[int]
    count: int
    symmetrized: str
    expected: str
    relative_deviation: Optional[float]
    normalized_deviation: float


class ExperimentReportModel(Report):
    pattern: str
    generator: Dict[str, object]
    alphas: List[str]
    part_sizes: List[int]
    seed: int
    trials: List[TrialModel]
    mean_relative_deviation: Optional[float]
    max_relative_deviation: Optional[float]
    stdev_relative_deviation: Optional[float]
    mean_normalized_deviation: float

    @classmethod
    def of(cls, report: ExperimentReport) -> "ExperimentReportModel":
        return cls(
            pattern=encode_graph6(report.pattern),
            generator=report.generator.describe(),
            alphas=[format_rational(a) for a in report.alphas],
            part_sizes=report.sizes,
            seed=report.seed,
            trials=[
                TrialModel(
                    trial=t.trial,
                    edges=t.edges,
                    part_sizes=[len(p) for p in t.parts],
                    count=t.count,
                    symmetrized=format_rational(t.symmetrized),
                    expected=format_rational(t.expected),
                    relative_deviation=t.relative_deviation,
                    normalized_deviation=t.normalized_deviation,
                )
                for t in report.trials
            ],
            mean_relative_deviation=report.mean_relative_deviation,
            max_relative_deviation=report.max_relative_deviation,
            stdev_relative_deviation=report.stdev_relative_deviation,
            mean_normalized_deviation=report.mean_normalized_deviation,
        )
