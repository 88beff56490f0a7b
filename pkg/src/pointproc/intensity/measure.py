"""Symbolic intensity measures (elements of M X) and the M-Kleisli structure.

An :class:`IntensityMeasure` is a small expression tree. :func:`intensity_bind`
simplifies as it builds so the common constructions come out in closed form:

* a bind over a discrete base collapses to a weighted sum of kernel values;
* a scaled uniform density stays a :class:`Density`;
* the constant keep-probability kernel just rescales the base.

Only a bind over a continuous :class:`Density` survives as a
:class:`KernelBind`; :func:`eval` integrates it with a midpoint rule.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Optional, Tuple, Union

import numpy as np

from pointproc.core.bag import Bag
from pointproc.core.errors import RangeError, UsageError
from pointproc.core.space import (
    Point,
    Real,
    Real2,
    Region,
    Universe,
    region_contains,
    region_intersect,
    region_measure,
    region_universal,
)

logger = logging.getLogger(__name__)

DEFAULT_QUADRATURE_RESOLUTION = 64


# ---------------------------------------------------------------------------
# Variants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Dirac:
    point: Point


@dataclass(frozen=True)
class WeightedSum:
    """Σ wᵢ·δ_{xᵢ}; atoms are merged, sorted and free of zero weights."""

    atoms: Tuple[Tuple[Point, float], ...] = ()

    def __post_init__(self) -> None:
        acc: Dict[Point, float] = defaultdict(float)
        for point, weight in self.atoms:
            weight = float(weight)
            if not (weight >= 0.0 and math.isfinite(weight)):
                raise UsageError(f"atom weight must be finite and non-negative, got {weight}")
            acc[point] += weight
        object.__setattr__(self, "atoms", tuple(sorted((p, w) for p, w in acc.items() if w > 0.0)))


@dataclass(frozen=True)
class Density:
    """Constant density *c* with respect to the reference measure of *region*."""

    c: float
    region: Region

    def __post_init__(self) -> None:
        c = float(self.c)
        if not (c >= 0.0 and math.isfinite(c)):
            raise UsageError(f"density must be finite and non-negative, got {c}")
        object.__setattr__(self, "c", c)


@dataclass(frozen=True)
class Scaled:
    factor: float
    measure: "IntensityMeasure"

    def __post_init__(self) -> None:
        if not (self.factor >= 0.0 and math.isfinite(self.factor)):
            raise UsageError(f"scale factor must be finite and non-negative, got {self.factor}")


@dataclass(frozen=True)
class Sum:
    terms: Tuple["IntensityMeasure", ...] = ()


@dataclass(frozen=True)
class KernelBind:
    """∫ kernel(x) d base(x), kept symbolic."""

    base: "IntensityMeasure"
    kernel: Callable[[Point], "IntensityMeasure"]


IntensityMeasure = Union[Dirac, WeightedSum, Density, Scaled, Sum, KernelBind]

ZERO = WeightedSum()


class ScaledDiracKernel:
    """The kernel ``x ↦ p·δ_x`` (intensity of keeping a point with probability p)."""

    def __init__(self, p: float) -> None:
        if not 0.0 <= p <= 1.0:
            raise UsageError(f"keep probability must lie in [0, 1], got {p}")
        self.p = float(p)

    def __call__(self, x: Point) -> IntensityMeasure:
        return WeightedSum(((x, self.p),))

    def __repr__(self) -> str:
        return f"ScaledDiracKernel({self.p})"


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _midpoints(lo: float, hi: float, n: int) -> np.ndarray:
    return lo + (np.arange(n) + 0.5) * ((hi - lo) / n)


def integrate(m: IntensityMeasure, g: Callable[[Point], float], resolution: int = DEFAULT_QUADRATURE_RESOLUTION) -> float:
    """∫ g dm; exact on atoms, midpoint rule on continuous densities."""

    if isinstance(m, Dirac):
        return g(m.point)
    if isinstance(m, WeightedSum):
        return math.fsum(w * g(p) for p, w in m.atoms)
    if isinstance(m, Scaled):
        return m.factor * integrate(m.measure, g, resolution)
    if isinstance(m, Sum):
        return math.fsum(integrate(t, g, resolution) for t in m.terms)
    if isinstance(m, KernelBind):
        return integrate(m.base, lambda x: integrate(m.kernel(x), g, resolution), resolution)
    if isinstance(m, Density):
        return _integrate_density(m, g, resolution)
    raise UsageError(f"not an intensity measure: {m!r}")


def _integrate_density(m: Density, g: Callable[[Point], float], n: int) -> float:
    if m.c == 0.0:
        return 0.0
    region = m.region
    if region.complemented:
        raise RangeError(f"cannot integrate over the infinite-measure region {region}")
    if region.universe.is_discrete:
        return m.c * math.fsum(g(p) for p in region.points)
    if n < 1:
        raise UsageError(f"quadrature resolution must be positive, got {n}")
    total = []
    if region.universe is Universe.REAL_LINE:
        for a, b in region.intervals:
            cell = (b - a) / n
            total.append(cell * math.fsum(g(Real(x)) for x in _midpoints(a, b, n)))
    else:
        for x0, y0, x1, y1 in region.rects:
            cell = (x1 - x0) * (y1 - y0) / (n * n)
            ys = _midpoints(y0, y1, n)
            total.append(cell * math.fsum(g(Real2(x, y)) for x in _midpoints(x0, x1, n) for y in ys))
    return m.c * math.fsum(total)


def eval(m: IntensityMeasure, region: Region, resolution: Optional[int] = None) -> float:  # noqa: A001
    """Expected number of points in *region*.

    Raises
    ------
    RangeError
        When the answer would be infinite (a density over an
        infinite-measure intersection).
    """

    n = DEFAULT_QUADRATURE_RESOLUTION if resolution is None else resolution
    if isinstance(m, Dirac):
        return 1.0 if region_contains(region, m.point) else 0.0
    if isinstance(m, WeightedSum):
        return math.fsum(w for p, w in m.atoms if region_contains(region, p))
    if isinstance(m, Density):
        if m.c == 0.0:
            return 0.0
        size = region_measure(region_intersect(region, m.region))
        if math.isinf(size):
            raise RangeError(f"expected count over {region} is infinite")
        return m.c * size
    if isinstance(m, Scaled):
        return m.factor * eval(m.measure, region, n)
    if isinstance(m, Sum):
        return math.fsum(eval(t, region, n) for t in m.terms)
    if isinstance(m, KernelBind):
        return integrate(m.base, lambda x: eval(m.kernel(x), region, n), n)
    raise UsageError(f"not an intensity measure: {m!r}")


def total(m: IntensityMeasure, universe: Universe, resolution: Optional[int] = None) -> float:
    """Expected total number of points, i.e. ``eval`` on the whole universe."""

    return eval(m, region_universal(universe), resolution)


def uses_quadrature(m: IntensityMeasure) -> bool:
    """Whether :func:`eval` will fall back to the midpoint rule for *m*."""

    if isinstance(m, Scaled):
        return uses_quadrature(m.measure)
    if isinstance(m, Sum):
        return any(uses_quadrature(t) for t in m.terms)
    if isinstance(m, KernelBind):
        return _has_continuous_density(m.base) or uses_quadrature(m.base)
    return False


def _has_continuous_density(m: IntensityMeasure) -> bool:
    if isinstance(m, Density):
        return not m.region.universe.is_discrete and m.c > 0.0
    if isinstance(m, Scaled):
        return _has_continuous_density(m.measure)
    if isinstance(m, Sum):
        return any(_has_continuous_density(t) for t in m.terms)
    return isinstance(m, KernelBind)


# ---------------------------------------------------------------------------
# Monad structure
# ---------------------------------------------------------------------------


def intensity_unit(x: Point) -> IntensityMeasure:
    """η^M: the Dirac measure at *x*."""

    return Dirac(x)


def scale(a: float, m: IntensityMeasure) -> IntensityMeasure:
    """a·m, pushed into the tree where that keeps it closed-form."""

    if a == 1.0:
        return m
    if a == 0.0:
        return ZERO
    if isinstance(m, Dirac):
        return WeightedSum(((m.point, a),))
    if isinstance(m, WeightedSum):
        return WeightedSum(tuple((p, a * w) for p, w in m.atoms))
    if isinstance(m, Density):
        return Density(a * m.c, m.region)
    if isinstance(m, Scaled):
        return scale(a * m.factor, m.measure)
    return Scaled(a, m)


def combine(terms: Iterable[IntensityMeasure]) -> IntensityMeasure:
    """Sum of measures; atoms are merged into one :class:`WeightedSum`."""

    atoms = []
    rest = []
    for t in terms:
        if isinstance(t, Dirac):
            atoms.append((t.point, 1.0))
        elif isinstance(t, WeightedSum):
            atoms.extend(t.atoms)
        elif isinstance(t, Sum):
            rest.extend(t.terms)
        else:
            rest.append(t)
    if not rest:
        return WeightedSum(tuple(atoms))
    if atoms:
        rest.insert(0, WeightedSum(tuple(atoms)))
    return rest[0] if len(rest) == 1 else Sum(tuple(rest))


def intensity_bind(m: IntensityMeasure, kernel: Callable[[Point], IntensityMeasure]) -> IntensityMeasure:
    """M-Kleisli composition ``m ≫= kernel``.

    Discrete bases are integrated on the spot, so the result of a bind over a
    :class:`WeightedSum` is the finite sum ``Σ wᵢ·kernel(xᵢ)``.
    """

    if isinstance(kernel, ScaledDiracKernel):
        return scale(kernel.p, m)
    if isinstance(m, Dirac):
        return kernel(m.point)
    if isinstance(m, WeightedSum):
        return combine(scale(w, kernel(p)) for p, w in m.atoms)
    if isinstance(m, Scaled):
        return scale(m.factor, intensity_bind(m.measure, kernel))
    if isinstance(m, Sum):
        return combine(intensity_bind(t, kernel) for t in m.terms)
    if isinstance(m, Density) and (m.c == 0.0 or m.region.universe.is_discrete) and not m.region.complemented:
        return combine(scale(m.c, kernel(p)) for p in sorted(m.region.points))
    logger.debug("intensity_bind kept symbolic over %s", type(m).__name__)
    return KernelBind(m, kernel)


def embed_bag(b: Bag[Point]) -> IntensityMeasure:
    """i^B: the multiplicity-respecting sum of Diracs."""

    return Sum(tuple(Dirac(x) for x in b))
