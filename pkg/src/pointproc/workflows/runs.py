"""The three runs behind the CLI: draws, intensity reports and verification.

Each run takes an already-parsed pipeline (or suite name) plus resolved
settings and returns the text to print, so the CLI only handles I/O and exit
codes.
"""

from __future__ import annotations

import logging
import math
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from pointproc.core.config import DEFAULTS, RunConfig
from pointproc.core.errors import DslTypeError, RangeError, UsageError
from pointproc.core.seeding import SeedState
from pointproc.core.space import region_measure
from pointproc.core.state import VerificationState
from pointproc.dsl import ast
from pointproc.dsl.compiler import compile_pipeline, compile_region, region_universe_of
from pointproc.dsl.parser import parse_region
from pointproc.intensity.expected import within_band
from pointproc.intensity.measure import eval, uses_quadrature
from pointproc.output.render import render_draws, to_json
from pointproc.process.point_process import PointProcess, count_matrix
from pointproc.workflows.manager import SuiteManager
from pointproc.workflows.suites import SUITES, expand

logger = logging.getLogger(__name__)


def run_draws(pipeline: ast.Expr, cfg: RunConfig) -> str:
    """``cfg.draws`` draws of *pipeline*, serialised as ``cfg.output_format``."""

    process = compile_pipeline(pipeline, cfg.poisson_epsilon)
    bags = process.draws(cfg.seed, cfg.draws, cfg.workers)
    logger.info("Drew %d bags (%d points) from %s", len(bags), sum(len(b) for b in bags), process.label)
    return render_draws(bags, process.universe, cfg.output_format, cfg.seed)


def _regions(process: PointProcess, sources: Sequence[str]) -> List[Tuple[str, Any]]:
    compiled = []
    for text in sources:
        node = parse_region(text)
        universe = region_universe_of(node, {}, hint=process.universe)
        if universe is not process.universe:
            raise DslTypeError(
                f"region lives in {universe.value}, the pipeline in {process.universe.value}",
                ast.to_source(node),
            )
        region = compile_region(node, process.universe)
        if math.isinf(region_measure(region)):
            raise RangeError(f"region {ast.to_source(node)} has infinite measure")
        compiled.append((ast.to_source(node), region))
    return compiled


def intensity_report(pipeline: ast.Expr, cfg: RunConfig) -> Dict[str, Any]:
    """Compositional against empirical intensity for every region in ``cfg.regions``.

    Raises
    ------
    RangeError
        When a region has infinite measure.
    """

    process = compile_pipeline(pipeline, cfg.poisson_epsilon)
    regions = _regions(process, cfg.regions or ["all"])
    measure = process.intensity
    mode = "quadrature" if uses_quadrature(measure) else "exact"
    compositional = [eval(measure, region, cfg.quadrature_resolution) for _, region in regions]

    n = cfg.draws
    counts = count_matrix(process, [region for _, region in regions], n, SeedState(cfg.seed), cfg.workers)
    rows = []
    for j, (text, _) in enumerate(regions):
        column = counts[:, j].astype(float)
        mean = float(column.mean())
        stderr = float(column.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        rows.append(
            {
                "region": text,
                "exact_or_quadrature": compositional[j],
                "mode": mode,
                "empirical": mean,
                "stderr": stderr,
                "n": n,
                "agree": within_band(mean, compositional[j], stderr),
            }
        )
        logger.debug("region %s: compositional %.6g, empirical %.6g ± %.3g", text, compositional[j], mean, stderr)
    return {
        "pipeline": ast.to_source(pipeline),
        "universe": process.universe.value,
        "seed": cfg.seed,
        "regions": rows,
    }


def run_intensity(pipeline: ast.Expr, cfg: RunConfig) -> str:
    return to_json(intensity_report(pipeline, cfg))


def verify_states(
    suite: str, seed: int, config: Mapping[str, Any], workers: Optional[int] = None
) -> List[VerificationState]:
    """Run *suite* (or every suite for ``all``) and return one state per suite.

    *workers* overrides ``run.workers`` from the config when given.
    """

    settings = {**DEFAULTS["verify"], **config.get("verify", {})}
    if workers is None:
        workers = config.get("run", {}).get("workers", 1)
    if workers < 1:
        raise UsageError("workers must be at least 1")
    states = []
    for name in expand(suite):
        state = VerificationState(
            suite=name,
            seed=seed,
            instances=int(settings["instances"]),
            draws=int(settings["draws"]),
            seeds=tuple(int(s) for s in settings["seeds"]),
            metadata={"workers": workers},
        )
        manager = SuiteManager(SUITES[name], max_retries=int(settings["max_retries"]))
        states.append(manager.run(state))
    return states


def run_verify(
    suite: str, seed: int, config: Mapping[str, Any], workers: Optional[int] = None
) -> Tuple[str, bool]:
    """JSON report of the requested suite(s) and whether everything passed."""

    states = verify_states(suite, seed, config, workers)
    passed = all(state.passed for state in states)
    report = {
        "suite": suite,
        "seed": seed,
        "passed": passed,
        "suites": [state.to_dict() for state in states],
    }
    return to_json(report), passed
