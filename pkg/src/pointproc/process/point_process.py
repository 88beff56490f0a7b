"""Sampler-based point processes: the operational GB value.

A :class:`PointProcess` couples a deterministic sampler ``SeedState -> Bag``
with its intensity measure and, when every ingredient is discrete, its exact
:class:`~pointproc.dist.discrete.DiscreteDist` over bags. Both of the latter
are built lazily by the combinators and never set by users.

Sampling a bind follows three steps: draw a bag from the base process with
``state.split(0)``, run the kernel process of the *i*-th point of the
(canonically sorted) bag with ``state.split(i + 1)``, and union the results.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from pointproc.core.bag import Bag, bag_union, bag_unit, count_in_region
from pointproc.core.errors import ResourceError, UsageError
from pointproc.core.seeding import SeedState
from pointproc.core.space import Point, Region, Universe, point_universe, region_intersect
from pointproc.dist.bag_dist import BagDist, gbe_bind, gbe_unit
from pointproc.intensity.measure import IntensityMeasure, intensity_bind, intensity_unit

logger = logging.getLogger(__name__)

MAX_DRAW_POINTS = 1_000_000

Sampler = Callable[[SeedState], Bag]
Lazy = Union[object, Callable[[], object]]


class PointProcess:
    """A seeded sampler over bags of points of one universe.

    Parameters
    ----------
    sampler
        Pure function of a :class:`SeedState`; equal states give equal bags.
    universe
        Universe every drawn point belongs to.
    intensity
        The intensity measure, or a zero-argument callable producing it.
    exact
        Exact distribution over bags, a callable producing it (or ``None``),
        or ``None`` when the process has continuous ingredients.
    label
        Short description used in logs and reprs.
    """

    def __init__(
        self,
        sampler: Sampler,
        universe: Universe,
        *,
        intensity: Lazy,
        exact: Lazy = None,
        label: str = "process",
    ) -> None:
        self._sampler = sampler
        self.universe = Universe(universe)
        self._intensity = intensity
        self._exact = exact
        self.label = label

    def __repr__(self) -> str:
        return f"PointProcess({self.label}, universe={self.universe.value})"

    @cached_property
    def intensity(self) -> IntensityMeasure:
        value = self._intensity
        return value() if callable(value) else value

    @cached_property
    def exact(self) -> Optional[BagDist]:
        value = self._exact
        return value() if callable(value) else value

    # ------------------------------------------------------------------
    # Sampling
    # ------------------------------------------------------------------

    def sample(self, state: SeedState) -> Bag:
        return self._sampler(state)

    def draw(self, seed: int, index: int = 0) -> Bag:
        """Draw number *index* of the run seeded with *seed*."""

        return self.sample(SeedState(seed, index))

    def draws(self, seed: int, n: int, workers: int = 1) -> List[Bag]:
        return self.sample_many(SeedState(seed), n, workers)

    def sample_many(self, state: SeedState, n: int, workers: int = 1) -> List[Bag]:
        """Replicates ``0 .. n-1`` of *state*; the result does not depend on *workers*."""

        if n < 1:
            raise UsageError(f"number of draws must be at least 1, got {n}")
        states = [state.replicate(i) for i in range(n)]
        if workers <= 1:
            return [self.sample(s) for s in states]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(self.sample, states))


# ---------------------------------------------------------------------------
# Monad structure
# ---------------------------------------------------------------------------


def pp_unit(x: Point) -> PointProcess:
    """η^{GB}: the deterministic process whose every draw is ``[x]``."""

    universe = point_universe(x)
    bag = bag_unit(x)
    return PointProcess(
        lambda _state: bag,
        universe,
        intensity=intensity_unit(x),
        exact=gbe_unit(x) if universe.is_discrete else None,
        label=f"unit({x!r})",
    )


def pp_bind(
    alpha: PointProcess,
    f: Callable[[Point], PointProcess],
    universe: Optional[Universe] = None,
    kernel: Optional[Callable[[Point], IntensityMeasure]] = None,
    label: Optional[str] = None,
) -> PointProcess:
    """α ≫= f.

    *universe* is the universe of the processes ``f`` returns (default: the
    universe of α). *kernel* may supply the intensity kernel ``x ↦ 𝔼(f(x))``
    in a form the simplifier recognises; by default it is read off ``f(x)``.
    """

    target = Universe(universe) if universe is not None else alpha.universe

    def sampler(state: SeedState) -> Bag:
        base = alpha.sample(state.split(0))
        parts = []
        size = 0
        for i, x in enumerate(base):
            child = f(x)
            if child.universe is not target:
                raise UsageError(
                    f"kernel returned a {child.universe.value} process, expected {target.value}"
                )
            part = child.sample(state.split(i + 1))
            size += len(part)
            if size > MAX_DRAW_POINTS:
                raise ResourceError(f"a single draw exceeded {MAX_DRAW_POINTS} points")
            parts.append(part)
        return bag_union(parts)

    def exact() -> Optional[BagDist]:
        base = alpha.exact
        if base is None:
            return None
        kernels: Dict[Point, BagDist] = {}
        for x in sorted({x for bag, _ in base.items for x in bag}):
            kx = f(x).exact
            if kx is None:
                return None
            kernels[x] = kx
        return gbe_bind(base, kernels.__getitem__)

    def intensity() -> IntensityMeasure:
        return intensity_bind(alpha.intensity, kernel or (lambda x: f(x).intensity))

    return PointProcess(
        sampler,
        target,
        intensity=intensity,
        exact=exact,
        label=label or f"bind({alpha.label})",
    )


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------


def count_matrix(
    alpha: PointProcess, regions: Sequence[Region], n: int, state: SeedState, workers: int = 1
) -> np.ndarray:
    """(n, len(regions)) array of counts; row i is replicate i of *state*."""

    bags = alpha.sample_many(state, n, workers)
    return np.array([[count_in_region(b, r) for r in regions] for b in bags], dtype=np.int64).reshape(n, len(regions))


def empirical_counts(alpha: PointProcess, region: Region, n: int, state: SeedState, workers: int = 1) -> np.ndarray:
    """Counts in *region* for replicates ``0 .. n-1`` of *state*."""

    return count_matrix(alpha, [region], n, state, workers)[:, 0]


def empirical_count_prob(
    alpha: PointProcess, region: Region, k: int, n: int, state: SeedState, workers: int = 1
) -> float:
    """Fraction of *n* draws with exactly *k* points in *region*."""

    return float(np.mean(empirical_counts(alpha, region, n, state, workers) == k))


def empirical_joint_count_prob(
    alpha: PointProcess,
    regions: Sequence[Region],
    ks: Sequence[int],
    n: int,
    state: SeedState,
    workers: int = 1,
) -> float:
    if len(regions) != len(ks):
        raise UsageError("one count per region is required")
    for a, b in itertools.combinations(regions, 2):
        if not region_intersect(a, b).is_empty:
            raise UsageError("joint count probabilities need pairwise disjoint regions")
    counts = count_matrix(alpha, regions, n, state, workers)
    return float(np.mean(np.all(counts == np.asarray(ks, dtype=np.int64), axis=1)))


def count_correlation(
    alpha: PointProcess, u: Region, v: Region, n: int, state: SeedState, workers: int = 1
) -> float:
    """Sample correlation of the counts in *u* and *v*; NaN if either is constant."""

    counts = count_matrix(alpha, [u, v], n, state, workers).astype(float)
    if counts[:, 0].std() == 0.0 or counts[:, 1].std() == 0.0:
        return math.nan
    return float(np.corrcoef(counts[:, 0], counts[:, 1])[0, 1])
