"""Command-line entry point.

Subcommands:
1. gen-graph: write a graph from a named family.
2. routes: build a path system (shortest, anneal, bruteforce) and report its congestion.
3. adversary: evaluate the adversary minimum on a family, optionally with checks.
4. solve: run a query-counted local-search baseline on one instance.
5. scaling: tabulate exact bounds against the closed-form threshold as CSV.
6. verify: run the structural checks and the full proof-chain suite.

Usage:
    python -m src.cli.main adversary --family complete --n 4 --L 2 --verify all --out k4.json

Exit codes: 0 success, 1 invalid input, 2 budget exceeded, 3 failed check.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import NoReturn

from pydantic import ValidationError

from src.adversary.verify import CHECK_NAMES
from src.cli.commands import cmd_adversary, cmd_gen_graph, cmd_routes, cmd_scaling, cmd_solve, cmd_verify
from src.config import RunConfig, Settings, settings, validate_run_config
from src.errors import InputValidationError, StaircaseError
from src.utils.logging import configure_logging, get_logger

logger = get_logger(__name__)

Command = Callable[[argparse.Namespace, RunConfig, Settings], int]

COMMANDS: dict[str, Command] = {
    "gen-graph": cmd_gen_graph,
    "routes": cmd_routes,
    "adversary": cmd_adversary,
    "solve": cmd_solve,
    "scaling": cmd_scaling,
    "verify": cmd_verify,
}


class _ArgumentParser(argparse.ArgumentParser):
    """Reports malformed flags as invalid input (exit 1) instead of exiting 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise InputValidationError(f"{self.prog}: {message}")


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--out", type=Path, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget-labels", type=int, default=settings.budget_labels)
    parser.add_argument("--budget-rprime", type=int, default=settings.budget_rprime)
    exactness = parser.add_mutually_exclusive_group()
    exactness.add_argument("--exact", dest="exactness", action="store_const", const="exact")
    exactness.add_argument("--float", dest="exactness", action="store_const", const="float-fallback")
    parser.set_defaults(exactness="exact")
    parser.add_argument("--debug", type=int, default=0)
    return parser


def _graph_source_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--graph", type=Path, default=None)
    parser.add_argument("--family", type=str, default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--degree", type=int, default=None)
    parser.add_argument("--rows", type=int, default=None)
    parser.add_argument("--cols", type=int, default=None)
    parser.add_argument("--dim", type=int, default=None)
    parser.add_argument("--paths", type=Path, default=None)
    return parser


def _build_arg_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    source = _graph_source_parser()
    parser = _ArgumentParser(description="Staircase hard instances and exact adversary bounds")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("gen-graph", parents=[common, source], help="Write a graph from a named family")

    routes = sub.add_parser("routes", parents=[common, source], help="Build a path system and report congestion")
    routes.add_argument("--method", choices=["shortest", "anneal", "bruteforce"], default="shortest")
    routes.add_argument("--iters", type=int, default=None)
    routes.add_argument("--report", type=Path, default=None)

    adversary = sub.add_parser("adversary", parents=[common, source], help="Evaluate the adversary minimum")
    adversary.add_argument("--L", dest="L", type=int, default=None)
    adversary.add_argument("--verify", nargs="+", choices=["all", *CHECK_NAMES], default=None)
    adversary.add_argument("--sampled", type=int, default=None)
    adversary.add_argument("--report-md", type=Path, default=None)

    solve = sub.add_parser("solve", parents=[common, source], help="Run a local-search baseline")
    solve.add_argument("--instance", type=Path, default=None)
    solve.add_argument("--milestones", type=str, default=None)
    solve.add_argument("--b", type=int, choices=[0, 1], default=None)
    solve.add_argument("--algo", choices=["steepest", "random", "decide"], default="steepest")
    solve.add_argument("--start", type=int, default=1)
    solve.add_argument("--probes", type=int, default=None)
    solve.add_argument("--save-instance", type=Path, default=None)

    scaling = sub.add_parser("scaling", parents=[common], help="Tabulate bounds over vertex counts")
    scaling.add_argument("--family", type=str, default=None)
    scaling.add_argument("--ns", type=int, nargs="*", default=None)
    scaling.add_argument("--samples", type=int, default=None)

    verify = sub.add_parser("verify", parents=[common, source], help="Run every check on one family")
    verify.add_argument("--L", dest="L", type=int, default=None)
    verify.add_argument("--checks", nargs="+", choices=["all", *CHECK_NAMES], default=["all"])

    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    family_params = {
        key: value
        for key in ("n", "degree", "rows", "cols", "dim")
        if (value := getattr(args, key, None)) is not None
    }
    return RunConfig(
        subcommand=args.subcommand,
        graph_file=getattr(args, "graph", None),
        family=getattr(args, "family", None),
        family_params=family_params,
        seed=args.seed,
        L=getattr(args, "L", None),
        out=args.out,
        budget_labels=args.budget_labels,
        budget_rprime=args.budget_rprime,
        exactness=args.exactness,
        debug=bool(args.debug),
    )


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_arg_parser().parse_args(argv)
    except InputValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    configure_logging(debug=bool(args.debug))

    try:
        config = _run_config(args)
        validate_run_config(config)
        return COMMANDS[args.subcommand](args, config, config.effective_settings())
    except StaircaseError as exc:
        logger.error("Command failed", extra={"context": {"subcommand": args.subcommand, "error": str(exc)}})
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
