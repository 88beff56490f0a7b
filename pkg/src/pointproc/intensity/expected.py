"""The morphism 𝔼 : GB → M on exact values, plus Monte Carlo estimators."""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Dict, Sequence, Tuple

import numpy as np

from pointproc.core.seeding import SeedState
from pointproc.core.space import Point, Region
from pointproc.dist.bag_dist import BagDist, distributive_law
from pointproc.dist.discrete import DiscreteDist, dist_prob
from pointproc.intensity.measure import IntensityMeasure, WeightedSum, eval
from pointproc.process.point_process import PointProcess, empirical_counts


def intensity_of_exact(alpha: BagDist) -> IntensityMeasure:
    """Each point x receives Σ over support bags of weight · multiplicity(x)."""

    acc: Dict[Point, float] = defaultdict(float)
    for bag, weight in alpha.items:
        for point, multiplicity in bag.multiplicities().items():
            acc[point] += weight * multiplicity
    return WeightedSum(tuple(acc.items()))


def intensity_empirical(alpha: PointProcess, region: Region, n: int, state: SeedState, workers: int = 1) -> float:
    """Mean count in *region* over replicates ``0 .. n-1`` of *state*."""

    return empirical_intensity_stats(alpha, region, n, state, workers)[0]


def empirical_intensity_stats(
    alpha: PointProcess, region: Region, n: int, state: SeedState, workers: int = 1
) -> Tuple[float, float]:
    """(mean, standard error of the mean) of the count in *region*."""

    counts = empirical_counts(alpha, region, n, state, workers).astype(float)
    mean = float(counts.mean())
    stderr = float(counts.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return mean, stderr


def distributive_intensity_check(nus: Sequence[DiscreteDist], region: Region) -> Tuple[float, float]:
    """(Σᵢ νᵢ(U), 𝔼(l[ν₁..νₙ])(U)); the two sides must agree."""

    left = math.fsum(dist_prob(nu, region) for nu in nus)
    right = eval(intensity_of_exact(distributive_law(nus)), region)
    return left, right


def within_band(observed: float, expected: float, stderr: float, sigmas: float = 4.0, floor: float = 1e-9) -> bool:
    """|observed − expected| ≤ sigmas·stderr, or ≤ *floor* when stderr is 0."""

    return bool(np.abs(observed - expected) <= max(sigmas * stderr, floor))
