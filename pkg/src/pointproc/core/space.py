"""Points of the supported base spaces and the region algebra used as query sets.

Four universes are supported:

====================  ==============  ==========================================
universe              point type      region body
====================  ==============  ==========================================
``UNIT1`` (𝟙)         :class:`Star`   finite set of points
``NATS`` (ℕ)          :class:`Nat`    finite set of points
``REAL_LINE`` (ℝ)     :class:`Real`   finite union of half-open ``[a, b)``
``UNIT_SQUARE`` (𝕀²)  :class:`Real2`  finite union of ``[x0, x1) × [y0, y1)``
====================  ==============  ==========================================

Every :class:`Region` is canonical on construction: intervals are merged and
sorted, rectangle unions are rewritten as maximal vertical slabs, and on the
finite-measure universes (𝟙, 𝕀²) complements are stored explicitly so the
``complemented`` flag only survives on ℕ and ℝ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, ClassVar, FrozenSet, Iterable, Tuple, Union

import numpy as np

from pointproc.core.errors import UsageError

Interval = Tuple[float, float]
Rect = Tuple[float, float, float, float]  # (x0, y0, x1, y1)


class Universe(str, Enum):
    UNIT1 = "unit1"
    NATS = "nats"
    REAL_LINE = "real_line"
    UNIT_SQUARE = "unit_square"

    @property
    def is_discrete(self) -> bool:
        return self in (Universe.UNIT1, Universe.NATS)

    @property
    def has_finite_measure(self) -> bool:
        return self in (Universe.UNIT1, Universe.UNIT_SQUARE)


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


def _finite_float(value: float, what: str) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{what} must be a real number, got {value!r}") from exc
    if not math.isfinite(out):
        raise UsageError(f"{what} must be finite, got {value!r}")
    return out + 0.0  # folds -0.0 into 0.0


@dataclass(frozen=True, order=True)
class Star:
    """The single element ⋆ of the one-point space."""

    universe: ClassVar[Universe] = Universe.UNIT1

    def __repr__(self) -> str:
        return "STAR"


STAR = Star()


@dataclass(frozen=True, order=True)
class Nat:
    value: int
    universe: ClassVar[Universe] = Universe.NATS

    def __post_init__(self) -> None:
        if isinstance(self.value, bool) or not isinstance(self.value, (int, np.integer)):
            raise UsageError(f"natural number expected, got {self.value!r}")
        if self.value < 0:
            raise UsageError(f"natural number must be non-negative, got {self.value}")
        object.__setattr__(self, "value", int(self.value))


@dataclass(frozen=True, order=True)
class Real:
    value: float
    universe: ClassVar[Universe] = Universe.REAL_LINE

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _finite_float(self.value, "coordinate"))


@dataclass(frozen=True, order=True)
class Real2:
    """A point of the plane, ordered lexicographically by (x, y)."""

    x: float
    y: float
    universe: ClassVar[Universe] = Universe.UNIT_SQUARE

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _finite_float(self.x, "x coordinate"))
        object.__setattr__(self, "y", _finite_float(self.y, "y coordinate"))


Point = Union[Star, Nat, Real, Real2]


def point_universe(p: object) -> Universe:
    universe = getattr(type(p), "universe", None)
    if not isinstance(universe, Universe):
        raise UsageError(f"{p!r} is not a point")
    return universe


def format_number(x: float) -> str:
    """Shortest round-trip positional decimal (never scientific notation)."""

    return np.format_float_positional(float(x), unique=True, trim="0")


def format_point(p: Point) -> str:
    """CSV form of a point: ``star``, an integer, a decimal, or ``x,y``."""

    if isinstance(p, Star):
        return "star"
    if isinstance(p, Nat):
        return str(p.value)
    if isinstance(p, Real):
        return format_number(p.value)
    if isinstance(p, Real2):
        return f"{format_number(p.x)},{format_number(p.y)}"
    raise UsageError(f"{p!r} is not a point")


# ---------------------------------------------------------------------------
# Canonical bodies
# ---------------------------------------------------------------------------


def _canonical_intervals(intervals: Iterable[Interval]) -> Tuple[Interval, ...]:
    out: list[list[float]] = []
    for a, b in sorted((a, b) for a, b in intervals if a < b):
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


def _canonical_rects(rects: Iterable[Rect]) -> Tuple[Rect, ...]:
    rects = [r for r in rects if r[0] < r[2] and r[1] < r[3]]
    if not rects:
        return ()
    xs = sorted({r[0] for r in rects} | {r[2] for r in rects})
    slabs: list[list] = []  # [x0, x1, profile]
    for x0, x1 in zip(xs, xs[1:]):
        profile = _canonical_intervals(
            (r[1], r[3]) for r in rects if r[0] <= x0 and r[2] >= x1
        )
        if not profile:
            continue
        if slabs and slabs[-1][1] == x0 and slabs[-1][2] == profile:
            slabs[-1][1] = x1
        else:
            slabs.append([x0, x1, profile])
    return tuple(
        sorted((x0, y0, x1, y1) for x0, x1, profile in slabs for y0, y1 in profile)
    )


def _in_intervals(x: float, intervals: Tuple[Interval, ...]) -> bool:
    return any(a <= x < b for a, b in intervals)


def _in_rects(x: float, y: float, rects: Tuple[Rect, ...]) -> bool:
    return any(x0 <= x < x1 and y0 <= y < y1 for x0, y0, x1, y1 in rects)


def _combine_intervals(a, b, op: Callable[[bool, bool], bool]) -> Tuple[Interval, ...]:
    cuts = sorted({e for iv in a + b for e in iv})
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        mid = 0.5 * (lo + hi)
        if op(_in_intervals(mid, a), _in_intervals(mid, b)):
            pieces.append((lo, hi))
    return _canonical_intervals(pieces)


def _combine_rects(a, b, op: Callable[[bool, bool], bool]) -> Tuple[Rect, ...]:
    xs = sorted({r[0] for r in a + b} | {r[2] for r in a + b})
    ys = sorted({r[1] for r in a + b} | {r[3] for r in a + b})
    cells = []
    for x0, x1 in zip(xs, xs[1:]):
        mx = 0.5 * (x0 + x1)
        for y0, y1 in zip(ys, ys[1:]):
            my = 0.5 * (y0 + y1)
            if op(_in_rects(mx, my, a), _in_rects(mx, my, b)):
                cells.append((x0, y0, x1, y1))
    return _canonical_rects(cells)


_UNIT_SQUARE_BODY: Tuple[Rect, ...] = ((0.0, 0.0, 1.0, 1.0),)
_UNIT1_BODY: FrozenSet[Star] = frozenset({STAR})


# ---------------------------------------------------------------------------
# Region
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """A measurable-set surrogate U ⊆ universe.

    Only the body matching ``universe`` may be non-empty: ``points`` for 𝟙/ℕ,
    ``intervals`` for ℝ, ``rects`` for 𝕀². ``complemented`` means the region
    denotes ``universe ∖ body``.
    """

    universe: Universe
    points: FrozenSet[Point] = field(default_factory=frozenset)
    intervals: Tuple[Interval, ...] = ()
    rects: Tuple[Rect, ...] = ()
    complemented: bool = False

    def __post_init__(self) -> None:
        universe = Universe(self.universe)
        object.__setattr__(self, "universe", universe)
        points = frozenset(self.points)
        intervals = tuple(
            (_finite_float(a, "interval end"), _finite_float(b, "interval end"))
            for a, b in self.intervals
        )
        rects = tuple(tuple(_finite_float(v, "rectangle corner") for v in r) for r in self.rects)

        if universe.is_discrete:
            if intervals or rects:
                raise UsageError(f"{universe.value} regions are finite point sets")
            for p in points:
                if point_universe(p) is not universe:
                    raise UsageError(f"point {p!r} does not belong to {universe.value}")
        elif universe is Universe.REAL_LINE:
            if points or rects:
                raise UsageError("real_line regions are unions of intervals")
            for a, b in intervals:
                if a > b:
                    raise UsageError(f"interval({a}, {b}) has its ends reversed")
            intervals = _canonical_intervals(intervals)
        else:
            if points or intervals:
                raise UsageError("unit_square regions are unions of rectangles")
            for x0, y0, x1, y1 in rects:
                if x0 > x1 or y0 > y1:
                    raise UsageError(f"rect({x0},{y0},{x1},{y1}) has its corners reversed")
                if min(x0, y0) < 0.0 or max(x1, y1) > 1.0:
                    raise UsageError(f"rect({x0},{y0},{x1},{y1}) leaves the unit square")
            rects = _canonical_rects(rects)

        complemented = bool(self.complemented)
        if complemented and universe is Universe.UNIT1:
            points, complemented = _UNIT1_BODY - points, False
        elif complemented and universe is Universe.UNIT_SQUARE:
            rects, complemented = _combine_rects(_UNIT_SQUARE_BODY, rects, lambda a, b: a and not b), False

        object.__setattr__(self, "points", points)
        object.__setattr__(self, "intervals", intervals)
        object.__setattr__(self, "rects", rects)
        object.__setattr__(self, "complemented", complemented)

    @property
    def is_empty(self) -> bool:
        return not self.complemented and not (self.points or self.intervals or self.rects)

    def __str__(self) -> str:
        if self.universe.is_discrete:
            body = "{" + ",".join(format_point(p) for p in sorted(self.points)) + "}"
        elif self.universe is Universe.REAL_LINE:
            body = " ∪ ".join(f"[{a},{b})" for a, b in self.intervals) or "∅"
        else:
            body = " ∪ ".join(f"[{x0},{x1})×[{y0},{y1})" for x0, y0, x1, y1 in self.rects) or "∅"
        return f"{self.universe.value}:{'∁' if self.complemented else ''}{body}"


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def region_set(points: Iterable[Point], universe: Universe | None = None) -> Region:
    points = frozenset(points)
    if universe is None:
        if not points:
            raise UsageError("an empty point set needs an explicit universe")
        universe = point_universe(next(iter(points)))
    return Region(universe, points=points)


def region_interval(a: float, b: float) -> Region:
    return Region(Universe.REAL_LINE, intervals=((a, b),))


def region_rect(x0: float, y0: float, x1: float, y1: float) -> Region:
    return Region(Universe.UNIT_SQUARE, rects=((x0, y0, x1, y1),))


def region_universal(universe: Universe) -> Region:
    return Region(universe, complemented=True)


def region_empty(universe: Universe) -> Region:
    return Region(universe)


def canonical(r: Region) -> Region:
    return Region(r.universe, r.points, r.intervals, r.rects, r.complemented)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def _check_point(r: Region, p: Point) -> None:
    if point_universe(p) is not r.universe:
        raise UsageError(f"point {p!r} does not belong to region universe {r.universe.value}")


def region_contains(r: Region, p: Point) -> bool:
    _check_point(r, p)
    if r.universe.is_discrete:
        inside = p in r.points
    elif r.universe is Universe.REAL_LINE:
        inside = _in_intervals(p.value, r.intervals)
    else:
        inside = _in_rects(p.x, p.y, r.rects)
    return inside != r.complemented


def region_measure(r: Region) -> float:
    """Counting measure, length or area; ``math.inf`` for complements on ℕ or ℝ."""

    if r.complemented:
        return math.inf
    if r.universe.is_discrete:
        return float(len(r.points))
    if r.universe is Universe.REAL_LINE:
        return math.fsum(b - a for a, b in r.intervals)
    return math.fsum((x1 - x0) * (y1 - y0) for x0, y0, x1, y1 in r.rects)


def region_complement(r: Region) -> Region:
    return Region(r.universe, r.points, r.intervals, r.rects, not r.complemented)


def _body_op(universe: Universe, a: Region, b: Region, op: Callable[[bool, bool], bool]) -> dict:
    if universe.is_discrete:
        keep = {p for p in a.points | b.points if op(p in a.points, p in b.points)}
        return {"points": frozenset(keep)}
    if universe is Universe.REAL_LINE:
        return {"intervals": _combine_intervals(a.intervals, b.intervals, op)}
    return {"rects": _combine_rects(a.rects, b.rects, op)}


def _same_universe(a: Region, b: Region) -> Universe:
    if a.universe is not b.universe:
        raise UsageError(f"cannot combine {a.universe.value} and {b.universe.value} regions")
    return a.universe


def region_intersect(a: Region, b: Region) -> Region:
    u = _same_universe(a, b)
    if not a.complemented and not b.complemented:
        return Region(u, **_body_op(u, a, b, lambda x, y: x and y))
    if not a.complemented:
        return Region(u, **_body_op(u, a, b, lambda x, y: x and not y))
    if not b.complemented:
        return Region(u, **_body_op(u, a, b, lambda x, y: y and not x))
    return Region(u, complemented=True, **_body_op(u, a, b, lambda x, y: x or y))


def region_union(a: Region, b: Region) -> Region:
    _same_universe(a, b)
    return region_complement(region_intersect(region_complement(a), region_complement(b)))


def region_difference(a: Region, b: Region) -> Region:
    return region_intersect(a, region_complement(b))
