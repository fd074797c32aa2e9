"""Subcommand implementations.

Each `cmd_*` takes the parsed arguments, the validated `RunConfig`, and the
effective `Settings`, writes its artifacts, and returns the process exit code.
Reports carry provenance (graph source and fingerprint, tie-break rule, L, g,
exactness mode, seeds) and nothing run-dependent such as timestamps.
"""

from __future__ import annotations

import argparse
import math
from pathlib import Path
from typing import Any

from src.adversary.bound import adversary_bound, require_enumerable, require_relation, sampled_adversary_bound
from src.adversary.family import InstanceFamily
from src.adversary.schemas import AdversaryReport, CheckReport, estimate_report, evaluation_report
from src.adversary.verify import run_verification_suite
from src.config import RunConfig, Settings
from src.errors import BudgetExceededError, InfeasibleParametersError, InputValidationError, VerificationFailedError
from src.graph.generators import FamilyParams, GraphFamily, generate
from src.graph.graph import Graph, dump_graph, load_graph
from src.graph.metrics import bound_calculator
from src.routing.anneal import anneal_congestion
from src.routing.bruteforce import min_congestion_bruteforce
from src.routing.paths import (
    TIE_BREAK_RULE,
    PathSystem,
    check_congestion_inequality,
    dump_path_system,
    load_path_system,
    shortest_path_system,
    vertex_congestion,
)
from src.solvers.oracle import QueryOracle
from src.solvers.search import SolveResult, decision_from_search, random_descent, steepest_descent
from src.staircase.instance import HardInstance, dump_instance, eval_f, load_instance, local_minima
from src.staircase.milestones import milestone_sequence
from src.utils.artifacts import canonical_json, render_csv, write_json_atomic, write_text_atomic
from src.utils.logging import get_logger
from src.utils.rationals import decimal_string

logger = get_logger(__name__)

SCALING_COLUMNS = (
    "n",
    "L",
    "g",
    "mode",
    "exactness",
    "bound",
    "min_ratio_squared_numerator",
    "min_ratio_squared_denominator",
    "threshold",
    "ratio",
)


def _emit_json(payload: Any, out: Path | None) -> None:
    if out is None:
        print(canonical_json(payload), end="")
    else:
        write_json_atomic(out, payload)


def _family_params(args: argparse.Namespace) -> FamilyParams:
    return FamilyParams(
        n=getattr(args, "n", None),
        degree=getattr(args, "degree", None),
        rows=getattr(args, "rows", None),
        cols=getattr(args, "cols", None),
        dim=getattr(args, "dim", None),
    )


def resolve_graph(
    args: argparse.Namespace,
    config: RunConfig,
    cfg: Settings,
    default_family: str | None = None,
) -> tuple[Graph, dict[str, Any]]:
    """Load `--graph` or generate from `--family` and its parameters."""

    if config.graph_file is not None:
        graph = load_graph(config.graph_file)
        return graph, {"source": "file", "file": config.graph_file.name, "fingerprint": graph.fingerprint()}

    family = config.family or default_family
    if family is None:
        raise InfeasibleParametersError("Give a graph source: --graph FILE or --family NAME.")
    params = _family_params(args)
    graph = generate(family, params, seed=config.seed, cfg=cfg)
    return graph, {
        "source": "family",
        "family": GraphFamily.parse(family).value,
        "params": params.model_dump(exclude_none=True),
        "seed": config.seed,
        "fingerprint": graph.fingerprint(),
    }


def resolve_paths(args: argparse.Namespace, graph: Graph) -> tuple[PathSystem, dict[str, Any]]:
    paths_file: Path | None = getattr(args, "paths", None)
    if paths_file is not None:
        system = load_path_system(paths_file, graph)
        return system, {"source": "file", "file": paths_file.name, "fingerprint": system.fingerprint()}
    system = shortest_path_system(graph)
    return system, {"source": "shortest", "tie_break": TIE_BREAK_RULE, "fingerprint": system.fingerprint()}


def default_L(n: int) -> int:
    return max(1, math.isqrt(n))


def cmd_gen_graph(args: argparse.Namespace, config: RunConfig, cfg: Settings) -> int:
    if config.family is None:
        raise InfeasibleParametersError("gen-graph needs --family.")
    graph, provenance = resolve_graph(args, config, cfg)
    if config.out is None:
        print(canonical_json(graph.to_payload().model_dump(mode="json")), end="")
    else:
        dump_graph(graph, config.out)
    logger.info("Graph generated", extra={"context": {**provenance, "edges": len(graph.edges)}})
    return 0


def cmd_routes(args: argparse.Namespace, config: RunConfig, cfg: Settings) -> int:
    graph, graph_provenance = resolve_graph(args, config, cfg)

    if args.method == "bruteforce":
        system, _ = min_congestion_bruteforce(graph, cfg=cfg)
    else:
        system, _ = resolve_paths(args, graph)
        if args.method == "anneal":
            iterations = cfg.anneal_iterations if args.iters is None else args.iters
            system = anneal_congestion(graph, system, iterations, config.seed)

    report = vertex_congestion(system)
    n = graph.n
    payload = {
        "method": args.method,
        "graph": graph_provenance,
        "seed": config.seed,
        "tie_break": TIE_BREAK_RULE,
        "congestion": report.model_dump(mode="json"),
        "bracket_holds": n <= report.g <= n * n,
    }
    if 2 <= n <= cfg.expansion_max_vertices:
        payload["inequality"] = check_congestion_inequality(graph, system, cfg=cfg).model_dump(mode="json")
    if config.out is not None:
        dump_path_system(system, config.out)
    _emit_json(payload, args.report)
    return 0


def _markdown_summary(report: AdversaryReport) -> str:
    lines = [
        f"# Adversary evaluation (n={report.n}, L={report.L}, g={report.g})",
        "",
        f"- mode: {report.mode}" + (" (upper bound of the exact minimum)" if report.upper_bound else ""),
        f"- exact arithmetic: {'yes' if report.exact else 'no'}",
        f"- min ratio squared: {report.min_ratio_squared.numerator}/{report.min_ratio_squared.denominator}"
        f" ≈ {report.min_ratio_squared.decimal}",
        f"- bound: {report.bound}",
        f"- threshold (1/8e)·n^0.75/√g: {decimal_string(report.estimates['threshold'])}",
        f"- witness: F1={report.witness.F1.milestones} b={report.witness.F1.b}, "
        f"F2={report.witness.F2.milestones} b={report.witness.F2.b}, v={report.witness.v}",
    ]
    if report.checks:
        lines += ["", "| check | status | checked | failures |", "| --- | --- | --- | --- |"]
        lines += [f"| {c.name} | {c.status} | {c.checked} | {c.failures} |" for c in report.checks]
    return "\n".join(lines) + "\n"


def _raise_on_failures(checks: list[CheckReport]) -> None:
    failed = [c.name for c in checks if c.failed]
    if failed:
        raise VerificationFailedError(f"Checks failed: {', '.join(failed)}.")


def cmd_adversary(args: argparse.Namespace, config: RunConfig, cfg: Settings) -> int:
    graph, graph_provenance = resolve_graph(args, config, cfg, default_family="complete")
    system, paths_provenance = resolve_paths(args, graph)
    L = config.L if config.L is not None else default_L(graph.n)
    fam = InstanceFamily(graph, system, L, exactness=config.exactness, cfg=cfg)

    if args.sampled is not None:
        if args.verify:
            raise InputValidationError("--verify needs full enumeration; drop --sampled.")
        report = estimate_report(sampled_adversary_bound(fam, args.sampled, config.seed, cfg))
        checks: list[CheckReport] = []
    else:
        evaluation = adversary_bound(fam, cfg)
        report = evaluation_report(evaluation)
        checks = run_verification_suite(fam, args.verify, evaluation) if args.verify else []

    report.checks = checks
    report.estimates = bound_calculator(graph.n, fam.g).model_dump(mode="json")
    report.estimates["bound_meets_threshold"] = float(report.bound) >= report.estimates["threshold"]
    report.provenance = {
        **fam.provenance(),
        "graph": graph_provenance,
        "paths": paths_provenance,
        "seed": config.seed,
        "budget_labels": cfg.budget_labels,
        "budget_rprime": cfg.budget_rprime,
    }

    _emit_json(report.model_dump(mode="json"), config.out)
    if args.report_md is not None:
        write_text_atomic(args.report_md, _markdown_summary(report))
    _raise_on_failures(checks)
    return 0


def _solve_instance(args: argparse.Namespace, config: RunConfig, cfg: Settings) -> tuple[HardInstance, int | None]:
    if args.instance is not None:
        instance, b = load_instance(args.instance)
        if args.b is not None:
            b = args.b
        return instance, b

    if args.milestones is None:
        raise InputValidationError("solve needs --instance FILE or a graph source with --milestones.")
    graph, _ = resolve_graph(args, config, cfg)
    system, _ = resolve_paths(args, graph)
    milestones = milestone_sequence((int(v) for v in args.milestones.split(",")), graph.n)
    return HardInstance.from_graph(graph, system, milestones), args.b


def cmd_solve(args: argparse.Namespace, config: RunConfig, cfg: Settings) -> int:
    instance, b = _solve_instance(args, config, cfg)
    if args.save_instance is not None:
        dump_instance(instance, b, args.save_instance)

    if args.algo == "steepest":
        result: SolveResult = steepest_descent(QueryOracle(instance), args.start)
    elif args.algo == "random":
        probes = instance.n if args.probes is None else args.probes
        result = random_descent(QueryOracle(instance), probes, config.seed)
    else:
        if b is None:
            raise InputValidationError("--algo decide needs a hidden bit: --b or an instance file with b.")
        result = decision_from_search(QueryOracle(instance, mode="g", b=b), args.start)

    _emit_json(result.model_dump(mode="json"), config.out)
    return 0


def _scaling_row(n: int, family: str, args: argparse.Namespace, config: RunConfig, cfg: Settings) -> list[str]:
    graph = generate(family, FamilyParams(n=n), seed=config.seed, cfg=cfg)
    fam = InstanceFamily(graph, shortest_path_system(graph), default_L(n), exactness=config.exactness, cfg=cfg)
    require_relation(fam)

    try:
        require_enumerable(fam, cfg)
    except BudgetExceededError:
        samples = cfg.sampled_default_samples if args.samples is None else args.samples
        estimate = sampled_adversary_bound(fam, samples, config.seed, cfg)
        mode, value = "sampled", estimate.min_ratio_squared
    else:
        mode, value = "full", adversary_bound(fam, cfg).min_ratio_squared

    bound = math.sqrt(value)
    threshold = bound_calculator(n, fam.g).threshold
    digits = cfg.csv_significant_digits
    return [
        str(n),
        str(fam.L),
        str(fam.g),
        mode,
        "exact" if fam.exact else "inexact",
        f"{bound:.{digits}g}",
        str(value.numerator),
        str(value.denominator),
        f"{threshold:.{digits}g}",
        f"{bound / threshold:.{digits}g}",
    ]


def cmd_scaling(args: argparse.Namespace, config: RunConfig, cfg: Settings) -> int:
    family = config.family or "complete"
    ns = [4, 9] if args.ns is None else args.ns
    rows = [_scaling_row(n, family, args, config, cfg) for n in ns]
    text = render_csv(SCALING_COLUMNS, rows)
    if config.out is None:
        print(text, end="")
    else:
        write_text_atomic(config.out, text)
    return 0


def _structural_checks(fam: InstanceFamily) -> list[CheckReport]:
    graph = fam.graph
    unique_failures = []
    checked = 0
    for x in fam.sequences():
        inst = fam.instance(x)
        minima = local_minima(graph, lambda v: eval_f(inst, v))
        checked += 1
        if minima != {x.final}:
            unique_failures.append({"x": ",".join(map(str, x.entries)), "minima": sorted(minima)})

    g = fam.g
    n = graph.n
    return [
        CheckReport(
            name="unique-minimum",
            status="fail" if unique_failures else "pass",
            checked=checked,
            failures=len(unique_failures),
            violations=[
                {"context": {"x": item["x"]}, "lhs": str(item["minima"]), "rhs": "{x_(L+1)}"}
                for item in unique_failures[: fam.cfg.max_reported_violations]
            ],
        ),
        CheckReport(
            name="congestion-bracket",
            status="pass" if n <= g <= n * n else "fail",
            checked=1,
            failures=0 if n <= g <= n * n else 1,
            details={"n": str(n), "g": str(g), "n_squared": str(n * n)},
        ),
    ]


def cmd_verify(args: argparse.Namespace, config: RunConfig, cfg: Settings) -> int:
    graph, graph_provenance = resolve_graph(args, config, cfg, default_family="complete")
    system, paths_provenance = resolve_paths(args, graph)
    L = config.L if config.L is not None else default_L(graph.n)
    fam = InstanceFamily(graph, system, L, exactness=config.exactness, cfg=cfg)
    require_enumerable(fam, cfg)

    checks = _structural_checks(fam) + run_verification_suite(fam, args.checks)
    payload = {
        "provenance": {**fam.provenance(), "graph": graph_provenance, "paths": paths_provenance},
        "checks": [c.model_dump(mode="json") for c in checks],
        "passed": not any(c.failed for c in checks),
    }
    _emit_json(payload, config.out)
    _raise_on_failures(checks)
    return 0
