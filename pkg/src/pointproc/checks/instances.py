"""Random small instances for the exact-law checks.

Everything lives on the base space ``{0, 1, 2} ⊂ ℕ``: distributions have at
most three support values with Dirichlet weights, bags at most three
elements. Generators take a :class:`numpy.random.Generator` so a suite run is
reproducible from its seed.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, List, Sequence

import numpy as np

from pointproc.core.bag import Bag
from pointproc.core.space import Nat, Region, Universe, region_complement, region_empty, region_set
from pointproc.dist.bag_dist import BagDist
from pointproc.dist.discrete import DiscreteDist, dist_from_pmf

BASE: tuple[Nat, ...] = (Nat(0), Nat(1), Nat(2))
MAX_SUPPORT = 3
MAX_BAG = 3


def instance_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _weights(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.dirichlet(np.ones(n))


def random_dist(rng: np.random.Generator, values: Sequence, max_support: int = MAX_SUPPORT) -> DiscreteDist:
    """Dirichlet-weighted distribution on up to *max_support* of *values*."""

    size = int(rng.integers(1, min(max_support, len(values)) + 1))
    picked = rng.choice(len(values), size=size, replace=False)
    weights = _weights(rng, size)
    return dist_from_pmf({values[int(i)]: float(w) for i, w in zip(picked, weights)})


def random_point_dist(rng: np.random.Generator) -> DiscreteDist:
    return random_dist(rng, BASE)


def random_bag(rng: np.random.Generator, elements: Sequence = BASE, max_size: int = MAX_BAG) -> Bag:
    size = int(rng.integers(0, max_size + 1))
    return Bag(tuple(elements[int(i)] for i in rng.integers(0, len(elements), size=size)))


def random_bag_dist(rng: np.random.Generator) -> BagDist:
    """Distribution over up to three (not necessarily distinct) random bags."""

    size = int(rng.integers(1, MAX_SUPPORT + 1))
    pmf: Dict[Bag, float] = {}
    for bag, w in zip((random_bag(rng) for _ in range(size)), _weights(rng, size)):
        pmf[bag] = pmf.get(bag, 0.0) + float(w)
    return dist_from_pmf(pmf)


def random_kernel(rng: np.random.Generator) -> Callable[[Nat], BagDist]:
    """A random GB kernel on the base space, as a lookup table."""

    table = {x: random_bag_dist(rng) for x in BASE}
    return table.__getitem__


def random_dist_sequence(rng: np.random.Generator, max_length: int = MAX_BAG) -> List[DiscreteDist]:
    return [random_point_dist(rng) for _ in range(int(rng.integers(0, max_length + 1)))]


def random_nested_dist(rng: np.random.Generator) -> DiscreteDist:
    """An element of GGX: a distribution over up to three random distributions."""

    size = int(rng.integers(1, MAX_SUPPORT + 1))
    pmf: Dict[DiscreteDist, float] = {}
    for inner, w in zip((random_point_dist(rng) for _ in range(size)), _weights(rng, size)):
        pmf[inner] = pmf.get(inner, 0.0) + float(w)
    return dist_from_pmf(pmf)


def random_gbgb(rng: np.random.Generator, max_outer: int = 2) -> DiscreteDist:
    """An element of GBGB X: distribution over bags of (up to two) processes."""

    size = int(rng.integers(1, max_outer + 1))
    pmf: Dict[Bag, float] = {}
    for w in _weights(rng, size):
        bag = Bag(tuple(random_bag_dist(rng) for _ in range(int(rng.integers(0, 3)))))
        pmf[bag] = pmf.get(bag, 0.0) + float(w)
    return dist_from_pmf(pmf)


def check_regions() -> List[Region]:
    """Every subset of the base space plus the flagged complements of the proper ones (15 regions)."""

    subsets = [
        region_set(combo) if combo else region_empty(Universe.NATS)
        for r in range(len(BASE) + 1)
        for combo in itertools.combinations(BASE, r)
    ]
    return subsets + [region_complement(s) for s in subsets if len(s.points) < len(BASE)]


def random_region(rng: np.random.Generator) -> Region:
    regions = check_regions()
    return regions[int(rng.integers(0, len(regions)))]
