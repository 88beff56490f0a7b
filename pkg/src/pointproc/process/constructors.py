"""Example point processes, each assembled from the monad operations.

The Poisson process is literally ``from_nat_dist(Poisson(Λ)) ≫= λ⋆. uniform``;
thinning, displacement and the diagonal cluster process are further binds on
top of it.
"""

from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np

from pointproc.core.bag import EMPTY_BAG, Bag, bag_union, bag_unit
from pointproc.core.errors import UsageError
from pointproc.core.space import (
    STAR,
    Nat,
    Point,
    Real,
    Real2,
    Region,
    Universe,
    point_universe,
    region_measure,
    region_rect,
    region_universal,
)
from pointproc.core.seeding import SeedState
from pointproc.dist.discrete import (
    DEFAULT_POISSON_EPSILON,
    DiscreteDist,
    dist_from_pmf,
    dist_map,
    dist_product,
    dist_unit,
    expectation,
    poisson_trunc,
    quantile_function,
)
from pointproc.intensity.measure import ZERO, Density, ScaledDiracKernel, WeightedSum, combine
from pointproc.process.point_process import PointProcess, pp_bind, pp_unit

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Distributions as processes
# ---------------------------------------------------------------------------


def _as_count(value: object) -> int:
    if isinstance(value, Nat):
        return value.value
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 0:
        raise UsageError(f"count distributions live on the naturals, got {value!r}")
    return int(value)


def from_nat_dist(d: DiscreteDist) -> PointProcess:
    """A draw is ``k`` copies of ⋆ with probability ``d_k``."""

    counts = DiscreteDist(tuple((_as_count(k), w) for k, w in d.items), d.defect)
    quantile = quantile_function(counts)
    mean = expectation(counts)

    def stars(k: int) -> Bag:
        return Bag((STAR,) * k)

    return PointProcess(
        lambda state: stars(quantile(state.uniform(0))),
        Universe.UNIT1,
        intensity=WeightedSum(((STAR, mean),)) if mean > 0 else ZERO,
        exact=lambda: dist_map(counts, stars),
        label=f"fromdist(mean={mean:g})",
    )


def from_point_dist(nu: DiscreteDist) -> PointProcess:
    """G η^B: a single point drawn from *nu*."""

    universes = {point_universe(x) for x, _ in nu.items}
    if len(universes) != 1:
        raise UsageError("a point distribution needs a non-empty support in one universe")
    universe = universes.pop()
    quantile = quantile_function(nu)
    return PointProcess(
        lambda state: bag_unit(quantile(state.uniform(0))),
        universe,
        intensity=WeightedSum(nu.items),
        exact=(lambda: dist_map(nu, bag_unit)) if universe.is_discrete else None,
        label="from_point_dist",
    )


# ---------------------------------------------------------------------------
# Continuous building blocks
# ---------------------------------------------------------------------------


def uniform_point(region: Region) -> PointProcess:
    """One point uniformly distributed on a finite, positive-measure region of ℝ or 𝕀²."""

    if region.universe.is_discrete:
        raise UsageError(f"uniform_point needs a continuous universe, got {region.universe.value}")
    size = region_measure(region)
    if not 0.0 < size < math.inf:
        raise UsageError(f"uniform_point needs a region of finite positive measure, got {size}")

    if region.universe is Universe.REAL_LINE:
        pieces = region.intervals
        weights = [b - a for a, b in pieces]
    else:
        pieces = region.rects
        weights = [(x1 - x0) * (y1 - y0) for x0, y0, x1, y1 in pieces]
    cumulative = np.cumsum(weights) / size
    last = len(pieces) - 1

    def pick(state: SeedState):
        return pieces[min(int(np.searchsorted(cumulative, state.uniform(0), side="right")), last)]

    def stretch(lo: float, hi: float, u: float) -> float:
        return min(lo + u * (hi - lo), float(np.nextafter(hi, lo)))

    if region.universe is Universe.REAL_LINE:

        def sampler(state: SeedState) -> Bag:
            a, b = pick(state)
            return bag_unit(Real(stretch(a, b, state.uniform(1))))

    else:

        def sampler(state: SeedState) -> Bag:
            x0, y0, x1, y1 = pick(state)
            return bag_unit(Real2(stretch(x0, x1, state.uniform(1)), stretch(y0, y1, state.uniform(2))))

    return PointProcess(
        sampler,
        region.universe,
        intensity=Density(1.0 / size, region),
        label=f"uniform({region})",
    )


def poisson_pp(rate: float, region: Region, eps: float = DEFAULT_POISSON_EPSILON) -> PointProcess:
    """Poisson process: a Poisson(rate) number of independent uniform points.

    Draws come from the truncated count distribution; the intensity is the
    closed form ``rate·|U ∩ region| / |region|``, independent of *eps*.
    """

    count = from_nat_dist(poisson_trunc(rate, eps))
    spot = uniform_point(region)
    bound = pp_bind(count, lambda _star: spot, universe=region.universe)
    return PointProcess(
        bound.sample,
        region.universe,
        intensity=Density(rate / region_measure(region), region),
        label=f"poisson({rate:g}, {region})",
    )


def compound(n: DiscreteDist, x: DiscreteDist) -> PointProcess:
    """Compound distribution γ = N ≫= λ⋆. X on the one-point space."""

    inner = from_nat_dist(x)
    return pp_bind(from_nat_dist(n), lambda _star: inner, universe=Universe.UNIT1, label="compound")


def superpose(alpha: PointProcess, beta: PointProcess) -> PointProcess:
    """Independent union of two processes on one universe."""

    if alpha.universe is not beta.universe:
        raise UsageError(f"cannot superpose {alpha.universe.value} and {beta.universe.value} processes")

    def exact():
        if alpha.exact is None or beta.exact is None:
            return None
        return dist_map(dist_product([alpha.exact, beta.exact]), bag_union)

    return PointProcess(
        lambda state: bag_union((alpha.sample(state.split(0)), beta.sample(state.split(1)))),
        alpha.universe,
        intensity=lambda: combine([alpha.intensity, beta.intensity]),
        exact=exact,
        label=f"superpose({alpha.label}, {beta.label})",
    )


# ---------------------------------------------------------------------------
# Thinning and displacement
# ---------------------------------------------------------------------------


class KeepWithProbability:
    """Thinning rule keeping each point independently with probability *p*."""

    def __init__(self, p: float) -> None:
        if not (isinstance(p, (int, float)) and 0.0 <= p <= 1.0):
            raise UsageError(f"keep probability must lie in [0, 1], got {p!r}")
        self.p = float(p)

    def __call__(self, x: Point) -> PointProcess:
        kept = bag_unit(x)
        p = self.p
        universe = point_universe(x)
        return PointProcess(
            lambda state: kept if state.uniform(0) < p else EMPTY_BAG,
            universe,
            intensity=WeightedSum(((x, p),)),
            exact=(lambda: dist_from_pmf({kept: p, EMPTY_BAG: 1.0 - p})) if universe.is_discrete else None,
            label=f"keep({p:g})",
        )

    def __repr__(self) -> str:
        return f"KeepWithProbability({self.p})"


def keep_with_probability(p: float) -> KeepWithProbability:
    return KeepWithProbability(p)


def thin(alpha: PointProcess, rule: Callable[[Point], PointProcess]) -> PointProcess:
    """α ≫= rule, where ``rule(x)`` draws ``[x]`` or ``[]`` (not checked)."""

    kernel = ScaledDiracKernel(rule.p) if isinstance(rule, KeepWithProbability) else None
    return pp_bind(alpha, rule, universe=alpha.universe, kernel=kernel, label=f"thin({alpha.label})")


def thin_constant(alpha: PointProcess, p: float) -> PointProcess:
    return thin(alpha, keep_with_probability(p))


def _single_point(delta: PointProcess) -> PointProcess:
    def sampler(state: SeedState) -> Bag:
        bag = delta.sample(state)
        if len(bag) != 1:
            raise UsageError(f"displacement must draw exactly one point, drew {len(bag)}")
        return bag

    return PointProcess(sampler, delta.universe, intensity=lambda: delta.intensity, exact=None, label=delta.label)


def displace(alpha: PointProcess, delta: PointProcess) -> PointProcess:
    """α ≫= λx. (Δ ≫= λd. η(x + d)) on the real line."""

    for process in (alpha, delta):
        if process.universe is not Universe.REAL_LINE:
            raise UsageError(f"displace works on real_line processes, got {process.universe.value}")
    offset = _single_point(delta)

    def shifted(x: Real) -> PointProcess:
        return pp_bind(offset, lambda d: pp_unit(Real(x.value + d.value)), universe=Universe.REAL_LINE)

    return pp_bind(alpha, shifted, universe=Universe.REAL_LINE, label=f"displace({alpha.label})")


# ---------------------------------------------------------------------------
# Clustered process
# ---------------------------------------------------------------------------


def cluster_square(centre: Real2, side: float) -> Region:
    """Square of the given side centred on *centre*, clipped to the unit square."""

    half = 0.5 * side
    return region_rect(
        max(0.0, centre.x - half),
        max(0.0, centre.y - half),
        min(1.0, centre.x + half),
        min(1.0, centre.y + half),
    )


def diagonal_rate(centre: Real2, peak: float) -> float:
    """Per-cluster rate ``peak·(1 − |x − y|)``: highest on the diagonal."""

    return peak * (1.0 - abs(centre.x - centre.y))


def cluster_demo(
    seed_rate: float = 10.0,
    cluster_rate: float = 20.0,
    side: float = 0.1,
    eps: float = DEFAULT_POISSON_EPSILON,
) -> PointProcess:
    """β = π ≫= λ(x,y). (N'(x,y) ≫= λ⋆. U'(x,y)) on the unit square."""

    if not side > 0.0:
        raise UsageError(f"cluster side must be positive, got {side}")
    universe = Universe.UNIT_SQUARE
    seeds = poisson_pp(seed_rate, region_universal(universe), eps)

    def cluster(centre: Real2) -> PointProcess:
        rate = diagonal_rate(centre, cluster_rate)
        square = cluster_square(centre, side)
        if rate > 0.0:
            return poisson_pp(rate, square, eps)
        spot = uniform_point(square)
        return pp_bind(from_nat_dist(dist_unit(0)), lambda _star: spot, universe=universe, label="cluster")

    return pp_bind(seeds, cluster, universe=universe, label="cluster_demo")

