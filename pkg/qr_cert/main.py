"""
qr-cert command line entry point
"""
import os
import sys
import json
import logging
import argparse
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ValidationError

from .algebra.poly import format_rational, parse_rational
from .certify.certifier import (
    Verdict,
    VerdictKind,
    certify,
    certify_bipartite,
    path_sweep,
    resultant_evidence,
    survey,
)
from .certify.lambda_poly import (
    WitnessTriple,
    bernstein_coefficients,
    check_alg_system,
    degree_le1_check,
    lambda_q,
    lambda_x,
)
from .counting.embeddings import (
    PartitionSpec,
    count_constrained,
    count_multiplicity_averaged,
    count_summed,
    count_summed_via_padding,
    count_symmetrized,
)
from .empirical.experiments import GeneratorSpec, qr_experiment
from .errors import ParameterError, QrCertError, UsageError
from .graphs.core import SmallGraph, strip_isolated
from .graphs.formats import (
    GRAPH6_MAX_VERTICES,
    encode_graph6,
    parse_parts,
    read_graph,
    read_graph_list,
    read_host_graph,
)
from .models import (
    CertifyReport,
    CountReport,
    ExperimentReportModel,
    LambdaReport,
    PathSweepReport,
    ResultantReport,
    RunConfig,
    SampleReport,
    SurveyReport,
)

logger = logging.getLogger("qr-cert")

EXIT_USAGE = 64
EXIT_INPUT = 65

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

ENV_VARS = {
    "pattern_vertex_cap": "QR_CERT_VERTEX_CAP",
    "count_pattern_cap": "QR_CERT_COUNT_CAP",
    "refinement_widths": "QR_CERT_REFINEMENT",
    "sturm_degree_limit": "QR_CERT_STURM_LIMIT",
    "threads": "QR_CERT_THREADS",
    "log_level": "QR_CERT_LOG_LEVEL",
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to exit code 64"""

    def error(self, message: str):
        raise UsageError(message)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"expected a comma separated list of integers, got {text!r}") from None


def _rational_list(text: str) -> list:
    return [parse_rational(x) for x in text.split(",")]


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments"""
    parser = _Parser(
        prog="qr-cert",
        description="Exact certifier for quasi-randomness of equal-parts restricted subgraph counts",
    )
    parser.add_argument("--config", type=str, help="Path to configuration file (default: $QR_CERT_CONFIG)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    parser.add_argument("--threads", type=int, help="Worker cap; results do not depend on it")
    parser.add_argument("--vertex-cap", type=int, help="Vertex cap for subset enumeration")
    parser.add_argument("--sturm-limit", type=int, help="Largest resultant degree cross-checked by a Sturm chain")
    parser.add_argument("--refinement", type=str, help="Exclusion widths as exponents k of 2^-k, e.g. 16,32,64,128")
    common = _Parser(add_help=False)
    common.add_argument("--out", type=str, help="Write the JSON report here instead of stdout")
    common.add_argument("--text", action="store_true", help="Print a short human readable summary instead of JSON")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser(
        "certify",
        parents=[common],
        help="Decide whether F is good: the equal-parts restricted count property forces quasi-randomness",
        description="Good/Bad/Inconclusive verdict for F via fast paths or the resultant R(u) of the "
                    "degree-sequence equations and exact root counts on (0,1) and (1,inf). "
                    "Exit code 0 Good, 1 Bad, 2 Inconclusive.",
    )
    p.add_argument("graph", help="graph6 string or path to a .g6 / edge-list file")
    p.add_argument("--full", action="store_true", help="Count resultant roots on both intervals")

    p = sub.add_parser(
        "survey",
        parents=[common],
        help="Certify every graph on m vertices",
        description="Verdict table for all isomorphism classes on m vertices (graph atlas up to 7 vertices).",
    )
    p.add_argument("--m", type=int, required=True, help="Number of vertices, 2..8")
    p.add_argument("--graph-list", type=str, help="graph6 list file (one graph per line); required for m = 8")

    p = sub.add_parser(
        "bipartite",
        parents=[common],
        help="Certify the complete bipartite graph K_{a,b}",
        description="Verdict for K_{a,b} with resultant root counts on (0,1) and (1,inf) always recorded.",
    )
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = sub.add_parser(
        "paths",
        parents=[common],
        help="Certify the paths P_4..P_max and record the parity pattern of resultant roots",
        description="Even m: no root in (0,1); odd m: no root in (1,inf). Recorded, not assumed.",
    )
    p.add_argument("--max", type=int, required=True, dest="max_m")
    p.add_argument("--min", type=int, default=4, dest="min_m")

    p = sub.add_parser(
        "lambda",
        parents=[common],
        help="The subset polynomials Lambda(q) and Lambda*(x) of F at a triple (u, v, s)",
        description="Power and Bernstein forms of Lambda_{F;u,v,s}(q), Lambda*(x), and the degree <= 1 check.",
    )
    p.add_argument("graph", help="graph6 string or file")
    p.add_argument("--witness", type=str, required=True, help="u,v,s as p/q or decimal strings")

    p = sub.add_parser(
        "resultant",
        parents=[common],
        help="Resultant R(u) of the degree-sequence equations f1, f2 (s = 1) with root counts",
        description="Primitive R(u) = Res_v(f1, f2), its roots at 0 and 1, and isolated roots on (0,1) and (1,inf).",
    )
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("graph", nargs="?", help="graph6 string or file")
    group.add_argument("--path", type=int, help="Use the path P_N")

    p = sub.add_parser(
        "count",
        parents=[common],
        help="Restricted count N(F,G;U_1..U_m) of injective homomorphisms and its variants",
        description="Exact counts: N with each pattern vertex in its part, the symmetrized average over "
                    "labellings, the sum over m-subsets of r parts, and multiplicity averages.",
    )
    p.add_argument("--pattern", required=True, help="Pattern graph F (graph6 or file)")
    p.add_argument("--host", required=True, help="Host graph G (graph6, .g6 or edge-list file)")
    p.add_argument("--parts", required=True, help="Parts JSON file")
    p.add_argument("--symmetrize", action="store_true", help="Average over all labellings of F")
    p.add_argument("--summed", action="store_true", help="Sum over all increasing m-tuples of the parts")
    p.add_argument("--padding", action="store_true", help="With --summed, also compute it by adjoining isolated vertices")
    p.add_argument("--mults", type=str, help="Multiplicities m_1,...,m_r of repeated parts")

    p = sub.add_parser(
        "sample",
        parents=[common],
        help="Seeded random host graph: G(n,p) or the two-type block model of a triple",
        description="Platform independent sampling from a Philox counter-based stream keyed by (seed, stream).",
    )
    p.add_argument("model", choices=["gnp", "twotype"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=str, help="Edge probability for gnp")
    p.add_argument("--uvs", type=str, help="u,v,s for twotype")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--stream", type=int, default=0)

    p = sub.add_parser(
        "experiment",
        parents=[common],
        help="Compare N(F,G;U_1..U_m) on sampled hosts with p^e(F) prod |U_i|",
        description="Each trial samples a host and random disjoint parts of sizes floor(alpha_i n) from its own stream.",
    )
    p.add_argument("--pattern", required=True)
    p.add_argument("--gen", required=True, help="gnp:P or twotype:U,V,S")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphas", required=True, help="alpha_1,...,alpha_m as p/q or decimal strings")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, required=True)

    return parser.parse_args(argv)


def load_config(config_path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Load configuration: defaults < config file < QR_CERT_* environment < flags

    Args:
        config_path: JSON file; falls back to $QR_CERT_CONFIG
        overrides: values from command line flags (None entries are ignored)
    """
    config: Dict[str, Any] = {}
    path = config_path or os.environ.get("QR_CERT_CONFIG")
    if path:
        if not os.path.exists(path):
            raise ParameterError(f"config file not found: {path}")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                file_config = json.load(f)
        except json.JSONDecodeError as e:
            raise ParameterError(f"config file {path} is not valid JSON: {e.msg} (line {e.lineno})") from None
        if not isinstance(file_config, dict):
            raise ParameterError(f"config file {path} must hold a JSON object")
        config.update(file_config)

    for key, var in ENV_VARS.items():
        raw = os.environ.get(var)
        if raw:
            config[key] = _int_list(raw) if key == "refinement_widths" else raw

    config.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return RunConfig(**config)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(x) for x in first["loc"])
        raise ParameterError(f"invalid configuration {where}: {first['msg']}") from None


def setup_logging(level: str):
    """Log to stderr; stdout carries the reports"""
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=[logging.StreamHandler(sys.stderr)], force=True)


def _emit(report: BaseModel, out: Optional[str]):
    text = report.model_dump_json(indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        logger.info(f"Report written to {out}")
    else:
        print(text)


def _verdict_line(v: Verdict) -> str:
    ev = v.evidence
    line = f"{encode_graph6(v.graph)}\t{v.kind.value}\t{v.method.value}"
    if ev.resultant is not None:
        line += f"\troots(0,1)={ev.count_01}\troots(1,inf)={ev.count_1inf}"
    if v.witness is not None:
        w = v.witness
        line += f"\twitness=({format_rational(w.u)}, {format_rational(w.v)}, {format_rational(w.s)})"
    return line


def _run_certify(args, config: RunConfig) -> int:
    verdict = certify(read_graph(args.graph), full_counts=args.full, **config.certify_options())
    if args.text:
        print(_verdict_line(verdict))
    else:
        _emit(CertifyReport.of(verdict), args.out)
    return verdict.exit_code


def _run_bipartite(args, config: RunConfig) -> int:
    verdict = certify_bipartite(args.a, args.b, **config.certify_options())
    if args.text:
        print(f"K_{{{args.a},{args.b}}}\t{_verdict_line(verdict)}\trootless={','.join(verdict.evidence.rootless_intervals)}")
    else:
        _emit(CertifyReport.of(verdict), args.out)
    return verdict.exit_code


def _run_survey(args, config: RunConfig) -> int:
    graphs = read_graph_list(args.graph_list) if args.graph_list else None
    result = survey(args.m, graphs, threads=config.threads, **config.certify_options())
    if args.text:
        for row in result.rows:
            print(f"{row.family}\t{_verdict_line(row.verdict)}")
    else:
        _emit(SurveyReport.of(result), args.out)
    inconclusive = any(r.verdict.kind is VerdictKind.INCONCLUSIVE for r in result.rows)
    return 2 if inconclusive else 0


def _run_paths(args, config: RunConfig) -> int:
    rows = path_sweep(args.max_m, args.min_m, **config.certify_options())
    if args.text:
        for row in rows:
            print(f"P{row.m}\t{_verdict_line(row.verdict)}\tpattern={'yes' if row.parity_pattern_holds else 'no'}")
    else:
        _emit(PathSweepReport.of(rows), args.out)
    return 2 if any(r.verdict.kind is VerdictKind.INCONCLUSIVE for r in rows) else 0


def _run_lambda(args, config: RunConfig) -> int:
    F = read_graph(args.graph)
    w = WitnessTriple.parse(args.witness)
    cap = config.pattern_vertex_cap
    power = lambda_q(F, w, cap)
    pair = degree_le1_check(F, w, cap)
    report = LambdaReport(
        graph=encode_graph6(F),
        witness=w.to_json(),
        power_basis=power.to_json(),
        bernstein_basis=[format_rational(c) for c in bernstein_coefficients(F, w, cap)],
        lambda_x=lambda_x(F, w, cap).to_json(),
        degree=power.degree,
        affine_pair=pair.to_json() if pair else None,
        level_equations_hold=check_alg_system(F, w, cap) is not None,
    )
    if args.text:
        print(f"Lambda(q) = {power.format('q')}")
    else:
        _emit(report, args.out)
    return 0


def _run_resultant(args, config: RunConfig) -> int:
    F = SmallGraph.path(args.path) if args.path is not None else read_graph(args.graph)
    H = strip_isolated(F)
    evidence = resultant_evidence(
        H,
        full_counts=True,
        refinement_widths=tuple(config.refinement_widths),
        sturm_degree_limit=config.sturm_degree_limit,
    )
    if args.text:
        R = evidence.resultant
        print(f"R(u) = {R.format('u') if R is not None else evidence.diagnostic}")
        print(f"roots in (0,1): {evidence.count_01}, roots in (1,inf): {evidence.count_1inf}")
    else:
        _emit(ResultantReport.of(encode_graph6(F), evidence), args.out)
    return 0


def _run_count(args, config: RunConfig) -> int:
    F = read_graph(args.pattern)
    G = read_host_graph(args.host)
    parsed = parse_parts(Path(args.parts).read_text(encoding="utf-8"))
    parts = parsed["parts"]
    cap, threads = config.count_pattern_cap, config.threads
    mults = _int_list(args.mults) if args.mults else parsed.get("multiplicities")
    report = CountReport(
        pattern=encode_graph6(F),
        host_vertices=G.n,
        host_edges=G.num_edges,
        part_sizes=[len(p) for p in parts],
    )
    if mults is not None:
        report.multiplicities = list(mults)
        report.multiplicity_averaged = format_rational(count_multiplicity_averaged(F, G, parts, mults, cap, threads))
    elif args.summed:
        report.summed = format_rational(count_summed(F, G, parts, cap, threads))
        if args.padding:
            padded = count_summed_via_padding(F, G, parts, cap, threads)
            logger.info(f"Summed count via padding: {format_rational(padded)}")
            if format_rational(padded) != report.summed:
                raise ParameterError("padding identity mismatch; parts probably differ in size")
    else:
        assignment = parsed.get("assignment", list(range(len(parts))))
        spec = PartitionSpec(tuple(parts), tuple(assignment))
        report.assignment = list(assignment)
        report.count = str(count_constrained(F, G, spec, cap, threads))
        if args.symmetrize:
            report.symmetrized = format_rational(count_symmetrized(F, G, spec, cap, threads))
    if args.text:
        print(" ".join(f"{k}={v}" for k, v in report.model_dump(exclude_none=True).items()
                       if k in ("count", "symmetrized", "summed", "multiplicity_averaged")))
    else:
        _emit(report, args.out)
    return 0


def _run_sample(args, config: RunConfig) -> int:
    if args.model == "gnp":
        if args.p is None:
            raise UsageError("sample gnp needs --p")
        generator = GeneratorSpec("gnp", args.n, p=parse_rational(args.p))
    else:
        if args.uvs is None:
            raise UsageError("sample twotype needs --uvs")
        generator = GeneratorSpec("twotype", args.n, triple=WitnessTriple.parse(args.uvs))
    G = generator.sample(args.seed, args.stream)
    report = SampleReport(
        generator=generator.describe(),
        seed=args.seed,
        stream=args.stream,
        vertices=G.n,
        edges=G.num_edges,
        graph6=encode_graph6(G.to_small()) if G.n <= GRAPH6_MAX_VERTICES else None,
        edge_list=[[i + 1, j + 1] for i, j in G.edges()],
    )
    if args.text:
        print(f"{G.n} {G.num_edges}")
        for i, j in G.edges():
            print(f"{i + 1} {j + 1}")
    else:
        _emit(report, args.out)
    return 0


def _run_experiment(args, config: RunConfig) -> int:
    F = read_graph(args.pattern)
    generator = GeneratorSpec.parse(args.gen, args.n)
    report = qr_experiment(
        F, generator, _rational_list(args.alphas), args.trials, args.seed,
        threads=config.threads, cap=config.count_pattern_cap,
    )
    if args.text:
        print(f"mean relative deviation {report.mean_relative_deviation}")
    else:
        _emit(ExperimentReportModel.of(report), args.out)
    return 0


COMMANDS = {
    "certify": _run_certify,
    "survey": _run_survey,
    "bipartite": _run_bipartite,
    "paths": _run_paths,
    "lambda": _run_lambda,
    "resultant": _run_resultant,
    "count": _run_count,
    "sample": _run_sample,
    "experiment": _run_experiment,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    try:
        args = parse_args(argv)
        overrides: Dict[str, Any] = {
            "threads": args.threads,
            "pattern_vertex_cap": args.vertex_cap,
            "sturm_degree_limit": args.sturm_limit,
            "refinement_widths": _int_list(args.refinement) if args.refinement else None,
        }
        if args.verbose:
            overrides["log_level"] = "DEBUG" if args.verbose > 1 else "INFO"
        config = load_config(args.config, overrides)
        setup_logging(config.log_level)
        logger.debug(f"Configuration: {config.model_dump_json()}")
        return COMMANDS[args.command](args, config)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except QrCertError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
