"""Command-line front end.

Usage
-----
$ pointproc draw pipelines/fig1.pp --seed 7 --n 5 --format svg > fig1.svg
$ pointproc intensity pipelines/fig1.pp --region "rect(0,0,0.5,0.5)"
$ pointproc verify distributive
$ pointproc parse pipelines/compound.pp

Results go to stdout, logs to stderr. Exit codes: 0 success, 1 parse or type
error, 2 invalid request, 3 resource guard, 4 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv

from pointproc import __version__
from pointproc.core.config import OUTPUT_FORMATS, RunConfig, load_config, resolve_seed
from pointproc.core.errors import DslError, DslSyntaxError, RangeError, ResourceError, UsageError
from pointproc.dsl.ast import to_source, to_tree
from pointproc.dsl.compiler import check
from pointproc.dsl.parser import parse
from pointproc.output.render import to_json
from pointproc.workflows.runs import run_draws, run_intensity, run_verify
from pointproc.workflows.suites import SUITE_NAMES

logger = logging.getLogger("pointproc")

EXIT_OK = 0
EXIT_DSL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_VERIFY = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pointproc", description="Composable point processes")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--config",
        default=None,
        help="Path to YAML config file (default: configs/default.yml)",
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default: from config, else WARNING)")
    parser.add_argument("--workers", type=int, default=None, help="Threads for replicate sampling")
    sub = parser.add_subparsers(dest="command", required=True)

    draw = sub.add_parser("draw", help="Sample a pipeline and print the draws")
    draw.add_argument("file", help="Pipeline file, or - for stdin")
    draw.add_argument("--seed", default=None, help="64-bit seed (default: $POINTPROC_SEED, then config)")
    draw.add_argument("--n", type=int, default=None, help="Number of draws")
    draw.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="Output format")

    intensity = sub.add_parser("intensity", help="Compare compositional and empirical intensities")
    intensity.add_argument("file", help="Pipeline file, or - for stdin")
    intensity.add_argument(
        "--region",
        action="append",
        default=None,
        help="Region literal, e.g. 'rect(0,0,0.5,0.5)'; repeatable (default: all)",
    )
    intensity.add_argument("--seed", default=None, help="64-bit seed")
    intensity.add_argument("--n", type=int, default=None, help="Monte Carlo draws")

    verify = sub.add_parser("verify", help="Run a verification suite")
    verify.add_argument("suite", choices=SUITE_NAMES)
    verify.add_argument("--seed", default=None, help="64-bit seed")

    parse_cmd = sub.add_parser("parse", help="Parse and type-check a pipeline, print its AST")
    parse_cmd.add_argument("file", help="Pipeline file, or - for stdin")
    return parser


def read_source(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    path = Path(name)
    if not path.is_file():
        raise UsageError(f"pipeline file {name} not found")
    return path.read_text(encoding="utf-8")


def _run(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    if args.command == "parse":
        tree = parse(read_source(args.file))
        universe = check(tree)
        sys.stdout.write(to_json({"source": to_source(tree), "universe": universe.value, "ast": to_tree(tree)}))
        return EXIT_OK

    seed = resolve_seed(args.seed, config)
    if args.command == "verify":
        text, passed = run_verify(args.suite, seed, config, args.workers)
        sys.stdout.write(text)
        return EXIT_OK if passed else EXIT_VERIFY

    pipeline = parse(read_source(args.file))
    if args.command == "draw":
        cfg = RunConfig.from_config(config, seed, draws=args.n, output_format=args.format, workers=args.workers)
        sys.stdout.write(run_draws(pipeline, cfg))
        return EXIT_OK

    cfg = RunConfig.from_config(
        config,
        seed,
        draws=args.n if args.n is not None else config["intensity"]["empirical_draws"],
        regions=args.region,
        workers=args.workers,
    )
    sys.stdout.write(run_intensity(pipeline, cfg))
    return EXIT_OK


def _report_syntax(exc: DslSyntaxError) -> None:
    print(f"syntax error: {exc}", file=sys.stderr)
    if exc.source_line is not None:
        print(f"  {exc.source_line}", file=sys.stderr)
        print(f"  {' ' * (exc.column - 1)}^", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:  # noqa: D401
    load_dotenv()
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except (UsageError, OSError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=(args.log_level or config.get("logging", {}).get("level", "WARNING")).upper(),
        stream=sys.stderr,
    )
    logger.info("pointproc %s: %s", __version__, args.command)

    try:
        return _run(args, config)
    except DslSyntaxError as exc:
        _report_syntax(exc)
        return EXIT_DSL
    except DslError as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_DSL
    except (UsageError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
