"""Canonical finite multisets and the Set-level bag monad.

A :class:`Bag` stores its elements as a sorted tuple, so two bags are equal
exactly when their tuples are equal. Bags are generic: besides points they
hold bags (``BagOfBags``) and distributions, which the distributive-law
identities need.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Generic, Iterable, Iterator, Tuple, TypeVar

from pointproc.core.space import Point, Real2, Region, format_point, region_contains

ElementT = TypeVar("ElementT")
OtherT = TypeVar("OtherT")


@dataclass(frozen=True, order=True)
class Bag(Generic[ElementT]):
    """Frozen multiset; ``elements`` is kept sorted (multiplicity by repetition)."""

    elements: Tuple[ElementT, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    @classmethod
    def of(cls, *elements: ElementT) -> "Bag[ElementT]":
        return cls(elements)

    def __iter__(self) -> Iterator[ElementT]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, element: object) -> bool:
        return element in self.elements

    def count(self, element: ElementT) -> int:
        return self.elements.count(element)

    def multiplicities(self) -> Counter:
        return Counter(self.elements)

    def __repr__(self) -> str:
        return f"Bag({list(self.elements)!r})"


# Bag[Bag[Point]]; sorted by the bag order.
BagOfBags = Bag

EMPTY_BAG: Bag = Bag()


def bag_of_bags(bags: Iterable[Bag]) -> Bag:
    return Bag(tuple(bags))


def bag_unit(x: ElementT) -> Bag[ElementT]:
    """η^B: the singleton bag."""

    return Bag((x,))


def bag_union(bb: Iterable[Bag[ElementT]]) -> Bag[ElementT]:
    """μ^B: multiplicity-respecting union of a bag (or any iterable) of bags."""

    return Bag(tuple(x for inner in bb for x in inner))


def bag_map(f: Callable[[ElementT], OtherT], b: Bag[ElementT]) -> Bag[OtherT]:
    return Bag(tuple(f(x) for x in b))


def tuple_to_bag(xs: Iterable[ElementT]) -> Bag[ElementT]:
    """K_n: forget the order of an n-tuple."""

    return Bag(tuple(xs))


def count_in_region(b: Bag[Point], region: Region) -> int:
    """Number of elements of *b*, with multiplicity, lying in *region*."""

    return sum(1 for x in b if region_contains(region, x))


def classify_composition(bb: Bag[Bag[Point]], region: Region) -> Tuple[int, ...]:
    """Per-inner-bag counts in *region*, sorted descending (e.g. ``(3, 1)``)."""

    return tuple(sorted((count_in_region(b, region) for b in bb), reverse=True))


def bag_to_csv_rows(b: Bag[Point]) -> list[list[str]]:
    """One row per point: ``[x]`` or ``[x, y]``."""

    return [format_point(p).split(",") if isinstance(p, Real2) else [format_point(p)] for p in b]


def bag_to_csv(b: Bag[Point]) -> str:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(bag_to_csv_rows(b))
    return buffer.getvalue()
