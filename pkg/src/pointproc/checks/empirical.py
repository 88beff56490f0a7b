"""Monte Carlo checks: samplers against exact and compositional answers.

All of these are statistical (4σ bands unless noted) and run once per seed in
``state.seeds``. On a reseed the manager hands over a fresh seed, from which
a new set of seeds is derived.
"""

from __future__ import annotations

import math
from typing import Dict, List, Tuple

import numpy as np
from scipy import stats

from pointproc.core.base_check import BaseCheck
from pointproc.core.seeding import SeedState, mix
from pointproc.core.space import STAR, Nat, Region, Universe, region_rect, region_set, region_universal
from pointproc.core.state import CheckResult, VerificationState
from pointproc.dist.bag_dist import prob_count
from pointproc.dist.discrete import dist_from_pmf, poisson_trunc
from pointproc.intensity.expected import empirical_intensity_stats, intensity_of_exact
from pointproc.intensity.measure import eval
from pointproc.process.constructors import (
    cluster_demo,
    compound,
    from_nat_dist,
    from_point_dist,
    poisson_pp,
    thin_constant,
)
from pointproc.process.point_process import PointProcess, count_matrix, pp_bind

SIGMAS = 4.0
MIN_CELL_PROBABILITY = 0.01
WALD_TOLERANCE = 1e-6


def run_seeds(state: VerificationState, seed: int) -> Tuple[int, ...]:
    """The configured seeds on the first attempt, derived ones after a reseed."""

    if seed == state.seed:
        return tuple(state.seeds)
    return tuple(mix(seed, j) for j in range(len(state.seeds)))


def wald_compound() -> PointProcess:
    """N ~ Poisson(3) (ε = 1e-9) stars, each replaced by one or two stars."""

    return compound(poisson_trunc(3.0, 1e-9), dist_from_pmf({1: 0.5, 2: 0.5}))


def discrete_examples() -> Dict[str, Tuple[PointProcess, List[Region]]]:
    """Every discrete example process, with the regions its counts are checked on."""

    star = [region_set([STAR])]
    counts = poisson_trunc(3.0)
    landing = dist_from_pmf({Nat(0): 5 / 6, Nat(6): 1 / 6})
    return {
        "fair_coin": (from_nat_dist(dist_from_pmf({0: 0.5, 1: 0.5})), star),
        "poisson_count": (from_nat_dist(counts), star),
        "compound": (wald_compound(), star),
        "thinned": (thin_constant(from_nat_dist(counts), 0.5), star),
        "nats_pair": (
            pp_bind(from_nat_dist(counts), lambda _star: from_point_dist(landing), universe=Universe.NATS),
            [region_set([Nat(0)]), region_set([Nat(6)]), region_universal(Universe.NATS)],
        ),
    }


def _z(observed: float, expected: float, stderr: float) -> float:
    if stderr == 0.0:
        return 0.0 if observed == expected else math.inf
    return abs(observed - expected) / stderr


class ExactCalibration(BaseCheck):
    """Empirical count frequencies against exact probabilities, every cell with p ≥ 0.01."""

    statistical = True

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        n = state.draws
        worst, worst_cell, cells = 0.0, None, 0
        for name, (process, regions) in discrete_examples().items():
            exact = process.exact
            table = {
                (r, k): prob_count(exact, region, k)
                for r, region in enumerate(regions)
                for k in range(max(len(b) for b, _ in exact.items) + 1)
            }
            table = {cell: p for cell, p in table.items() if p >= MIN_CELL_PROBABILITY}
            for s in run_seeds(state, seed):
                observed = count_matrix(process, regions, n, SeedState(s), state.metadata.get("workers", 1))
                for (r, k), p in table.items():
                    z = _z(float(np.mean(observed[:, r] == k)), p, math.sqrt(p * (1.0 - p) / n))
                    cells += 1
                    if z > worst:
                        worst, worst_cell = z, {"process": name, "region": r, "k": k, "seed": s}
        return CheckResult(
            self.name,
            passed=worst <= SIGMAS,
            instances=cells,
            max_discrepancy=worst,
            tolerance=SIGMAS,
            detail={"worst_cell": worst_cell},
        )


class PoissonIntensity(BaseCheck):
    """Poisson(10) on the unit square: 𝔼π([0,.5)²) = 2.5, Monte Carlo within 3·√(2.5/n)."""

    statistical = True

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        n = state.draws
        process = poisson_pp(10.0, region_universal(Universe.UNIT_SQUARE))
        window = region_rect(0.0, 0.0, 0.5, 0.5)
        compositional = eval(process.intensity, window)
        band = 3.0 * math.sqrt(2.5 / n)
        means = []
        for s in run_seeds(state, seed):
            mean, _ = empirical_intensity_stats(process, window, n, SeedState(s), state.metadata.get("workers", 1))
            means.append(mean)
        worst = max(abs(m - 2.5) for m in means)
        return CheckResult(
            self.name,
            passed=compositional == 2.5 and worst <= band,
            instances=len(means),
            max_discrepancy=worst,
            tolerance=band,
            detail={"compositional": compositional, "empirical": means},
        )


class WaldLemma(BaseCheck):
    """𝔼γ(⋆) = 𝔼N·𝔼X = 4.5 compositionally, exactly and by Monte Carlo."""

    statistical = True

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        n = state.draws
        gamma = wald_compound()
        star = region_set([STAR])
        compositional = eval(gamma.intensity, star)
        exact = gamma.exact
        by_counts = math.fsum(
            k * prob_count(exact, star, k) for k in range(max(len(b) for b, _ in exact.items) + 1)
        )
        worst_z = 0.0
        means = []
        for s in run_seeds(state, seed):
            mean, stderr = empirical_intensity_stats(gamma, star, n, SeedState(s), state.metadata.get("workers", 1))
            means.append(mean)
            worst_z = max(worst_z, _z(mean, compositional, stderr))
        passed = (
            abs(compositional - 4.5) <= WALD_TOLERANCE
            and abs(by_counts - compositional) <= WALD_TOLERANCE
            and worst_z <= SIGMAS
        )
        return CheckResult(
            self.name,
            passed=passed,
            instances=len(means),
            max_discrepancy=worst_z,
            tolerance=SIGMAS,
            detail={
                "compositional": compositional,
                "exact": by_counts,
                "from_exact_measure": eval(intensity_of_exact(exact), star),
                "empirical": means,
            },
        )


class PoissonIndependence(BaseCheck):
    """Counts of a Poisson process in disjoint windows: joint law factorises, correlation ≈ 0."""

    statistical = True

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        n = state.draws
        rate = 10.0
        process = poisson_pp(rate, region_universal(Universe.UNIT_SQUARE))
        windows = [region_rect(0.0, 0.0, 0.5, 0.5), region_rect(0.5, 0.5, 1.0, 1.0)]
        mean = rate * 0.25
        ks = np.arange(0, 16)
        marginal = stats.poisson.pmf(ks, mean)
        cells = [(int(a), int(b), float(marginal[a] * marginal[b])) for a in ks for b in ks]
        cells = [c for c in cells if c[2] >= MIN_CELL_PROBABILITY]
        worst_z, worst_r, checked = 0.0, 0.0, 0
        for s in run_seeds(state, seed):
            counts = count_matrix(process, windows, n, SeedState(s), state.metadata.get("workers", 1))
            for a, b, p in cells:
                freq = float(np.mean((counts[:, 0] == a) & (counts[:, 1] == b)))
                worst_z = max(worst_z, _z(freq, p, math.sqrt(p * (1.0 - p) / n)))
                checked += 1
            r = float(np.corrcoef(counts[:, 0], counts[:, 1])[0, 1])
            worst_r = max(worst_r, abs(r) * math.sqrt(n))
        return CheckResult(
            self.name,
            passed=worst_z <= SIGMAS and worst_r <= SIGMAS,
            instances=checked,
            max_discrepancy=max(worst_z, worst_r),
            tolerance=SIGMAS,
            detail={"joint_cells_z": worst_z, "correlation_z": worst_r},
        )


class ClusterIntensity(BaseCheck):
    """Diagonal cluster process: quadrature intensity of the unit square against Monte Carlo.

    Uses the full ``state.draws`` replicates of the first seed and a 3σ band.
    """

    statistical = True
    sigmas = 3.0

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        n = state.draws
        process = cluster_demo()
        square = region_universal(Universe.UNIT_SQUARE)
        compositional = eval(process.intensity, square)
        s = run_seeds(state, seed)[0]
        mean, stderr = empirical_intensity_stats(process, square, n, SeedState(s), state.metadata.get("workers", 1))
        z = _z(mean, compositional, stderr)
        return CheckResult(
            self.name,
            passed=z <= self.sigmas,
            instances=n,
            max_discrepancy=z,
            tolerance=self.sigmas,
            detail={"compositional": compositional, "empirical": mean, "stderr": stderr},
        )
