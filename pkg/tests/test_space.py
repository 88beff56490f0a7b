"""Points, universes and the region algebra."""

from __future__ import annotations

import math

import numpy as np
import pytest

from pointproc.core.errors import UsageError
from pointproc.core.space import (
    STAR,
    Nat,
    Real,
    Real2,
    Region,
    Universe,
    canonical,
    format_point,
    point_universe,
    region_complement,
    region_contains,
    region_difference,
    region_empty,
    region_intersect,
    region_interval,
    region_measure,
    region_rect,
    region_set,
    region_union,
    region_universal,
)


def test_point_universes():
    assert point_universe(STAR) is Universe.UNIT1
    assert point_universe(Nat(3)) is Universe.NATS
    assert point_universe(Real(-1.5)) is Universe.REAL_LINE
    assert point_universe(Real2(0.1, 0.2)) is Universe.UNIT_SQUARE


@pytest.mark.parametrize("bad", [-1, 1.5, True])
def test_nat_rejects_non_naturals(bad):
    with pytest.raises(UsageError):
        Nat(bad)


def test_real_rejects_non_finite():
    with pytest.raises(UsageError):
        Real(math.inf)


def test_format_point():
    assert format_point(STAR) == "star"
    assert format_point(Nat(7)) == "7"
    assert format_point(Real(0.1)) == "0.1"
    assert format_point(Real2(0.25, 0.5)) == "0.25,0.5"


def test_intervals_are_merged_and_half_open():
    r = region_union(region_interval(0.0, 1.0), region_interval(0.5, 2.0))
    assert r.intervals == ((0.0, 2.0),)
    assert region_contains(r, Real(0.0))
    assert not region_contains(r, Real(2.0))


def test_rect_region_contains_lower_left_but_not_upper_right():
    r = region_rect(0.0, 0.0, 0.5, 0.5)
    assert region_contains(r, Real2(0.0, 0.0))
    assert not region_contains(r, Real2(0.5, 0.25))
    assert region_measure(r) == pytest.approx(0.25)


def test_unit_square_complement_is_stored_explicitly():
    r = region_complement(region_rect(0.0, 0.0, 0.5, 1.0))
    assert not r.complemented
    assert region_measure(r) == pytest.approx(0.5)
    assert region_contains(r, Real2(0.75, 0.1))


def test_unit1_complement_of_empty_is_star():
    r = region_universal(Universe.UNIT1)
    assert not r.complemented
    assert r.points == frozenset({STAR})


def test_nats_complement_keeps_flag_and_has_infinite_measure():
    r = region_complement(region_set([Nat(0)]))
    assert r.complemented
    assert region_measure(r) == math.inf
    assert region_contains(r, Nat(5))
    assert not region_contains(r, Nat(0))


def test_set_operations_on_nats():
    a = region_set([Nat(0), Nat(1)])
    b = region_set([Nat(1), Nat(2)])
    assert region_intersect(a, b) == region_set([Nat(1)])
    assert region_union(a, b) == region_set([Nat(0), Nat(1), Nat(2)])
    assert region_difference(a, b) == region_set([Nat(0)])
    assert region_intersect(a, region_complement(a)).is_empty


def test_rectangle_union_is_canonical():
    left = region_rect(0.0, 0.0, 0.5, 1.0)
    right = region_rect(0.5, 0.0, 1.0, 1.0)
    assert region_union(left, right) == region_universal(Universe.UNIT_SQUARE)


def test_mixed_universe_operations_fail():
    with pytest.raises(UsageError):
        region_intersect(region_set([Nat(0)]), region_interval(0.0, 1.0))
    with pytest.raises(UsageError):
        region_contains(region_set([Nat(0)]), STAR)


def test_rect_outside_unit_square_fails():
    with pytest.raises(UsageError):
        region_rect(0.0, 0.0, 1.5, 1.0)


def test_empty_set_needs_universe():
    with pytest.raises(UsageError):
        region_set([])
    assert region_empty(Universe.NATS).is_empty


# ---------------------------------------------------------------------------
# Randomized algebra on grid-aligned regions
# ---------------------------------------------------------------------------


def _random_rects(rng: np.random.Generator) -> Region:
    rects = []
    for _ in range(int(rng.integers(1, 4))):
        x0, x1 = sorted(rng.choice(17, size=2, replace=False) / 16)
        y0, y1 = sorted(rng.choice(17, size=2, replace=False) / 16)
        rects.append((x0, y0, x1, y1))
    region = Region(Universe.UNIT_SQUARE, rects=tuple(rects))
    return region_complement(region) if rng.random() < 0.5 else region


def _random_intervals(rng: np.random.Generator) -> Region:
    intervals = []
    for _ in range(int(rng.integers(1, 4))):
        a, b = sorted(rng.choice(33, size=2, replace=False) / 8 - 2.0)
        intervals.append((a, b))
    region = Region(Universe.REAL_LINE, intervals=tuple(intervals))
    return region_complement(region) if rng.random() < 0.5 else region


def _square_points(rng: np.random.Generator, n: int) -> list:
    # Half on the grid lines, where the half-open edges decide membership.
    grid = [Real2(float(x), float(y)) for x, y in rng.integers(0, 16, size=(n // 2, 2)) / 16]
    free = [Real2(float(x), float(y)) for x, y in rng.random((n - n // 2, 2))]
    return grid + free


def _line_points(rng: np.random.Generator, n: int) -> list:
    grid = [Real(float(v)) for v in rng.integers(-24, 25, size=n // 2) / 8]
    free = [Real(float(v)) for v in rng.uniform(-3.0, 3.0, size=n - n // 2)]
    return grid + free


REGION_FAMILIES = [
    pytest.param(_random_rects, _square_points, id="unit_square"),
    pytest.param(_random_intervals, _line_points, id="real_line"),
]


@pytest.mark.parametrize("make_region, make_points", REGION_FAMILIES)
def test_operations_agree_with_pointwise_logic(make_region, make_points):
    rng = np.random.default_rng(2024)
    for _ in range(20):
        a, b = make_region(rng), make_region(rng)
        both, either, only_a = region_intersect(a, b), region_union(a, b), region_difference(a, b)
        for p in make_points(rng, 50):
            in_a, in_b = region_contains(a, p), region_contains(b, p)
            assert region_contains(both, p) == (in_a and in_b)
            assert region_contains(either, p) == (in_a or in_b)
            assert region_contains(only_a, p) == (in_a and not in_b)


@pytest.mark.parametrize("make_region, make_points", REGION_FAMILIES)
def test_complement_is_an_involution(make_region, make_points):
    rng = np.random.default_rng(7)
    for _ in range(20):
        r = make_region(rng)
        once, twice = region_complement(r), region_complement(region_complement(r))
        assert twice == r
        for p in make_points(rng, 100):
            assert region_contains(twice, p) == region_contains(r, p)
            assert region_contains(once, p) != region_contains(r, p)


@pytest.mark.parametrize("make_region, make_points", REGION_FAMILIES)
def test_canonical_is_idempotent(make_region, make_points):
    rng = np.random.default_rng(11)
    for _ in range(20):
        r = region_union(make_region(rng), make_region(rng))
        assert canonical(r) == r
        assert canonical(canonical(r)) == canonical(r)


def test_square_measure_and_complement_sum_to_one():
    rng = np.random.default_rng(3)
    for _ in range(50):
        r = _random_rects(rng)
        assert region_measure(r) + region_measure(region_complement(r)) == pytest.approx(1.0, abs=1e-12)
        assert 0.0 <= region_measure(r) <= 1.0
