"""Canonical bags and the Set-level bag monad."""

from __future__ import annotations

from pointproc.core.bag import (
    EMPTY_BAG,
    Bag,
    bag_map,
    bag_of_bags,
    bag_to_csv,
    bag_union,
    bag_unit,
    classify_composition,
    count_in_region,
    tuple_to_bag,
)
from pointproc.core.space import STAR, Nat, Real2, region_complement, region_set


def test_bags_are_order_insensitive():
    assert Bag.of(Nat(2), Nat(0), Nat(2)) == Bag.of(Nat(0), Nat(2), Nat(2))
    assert tuple_to_bag((Nat(1), Nat(0))) == Bag.of(Nat(0), Nat(1))


def test_multiplicities_and_count():
    b = Bag.of(Nat(1), Nat(1), Nat(0))
    assert len(b) == 3
    assert b.count(Nat(1)) == 2
    assert b.multiplicities() == {Nat(0): 1, Nat(1): 2}


def test_unit_and_union_laws():
    b = Bag.of(Nat(0), Nat(1), Nat(1))
    assert bag_union(bag_unit(b)) == b
    assert bag_union(bag_map(bag_unit, b)) == b
    assert bag_union([EMPTY_BAG, b, EMPTY_BAG]) == b


def test_union_keeps_multiplicity():
    assert bag_union([Bag.of(STAR), Bag.of(STAR, STAR)]) == Bag.of(STAR, STAR, STAR)


def test_count_in_region():
    b = Bag.of(Nat(0), Nat(0), Nat(1), Nat(2))
    zero = region_set([Nat(0)])
    assert count_in_region(b, zero) == 2
    assert count_in_region(b, region_complement(zero)) == 2


def test_classify_composition_sorts_descending():
    u = region_set([Nat(0)])
    bb = bag_of_bags([Bag.of(Nat(0)), Bag.of(Nat(0), Nat(0), Nat(0)), Bag.of(Nat(1))])
    assert classify_composition(bb, u) == (3, 1, 0)


def test_bag_to_csv():
    assert bag_to_csv(Bag.of(Real2(0.5, 0.25), Real2(0.1, 0.2))) == "0.1,0.2\n0.5,0.25\n"
    assert bag_to_csv(Bag.of(STAR, STAR)) == "star\nstar\n"
