"""Set-level bag monad laws and the μ^B-preimage decomposition."""

from __future__ import annotations

import itertools
from typing import Dict, List, Set, Tuple

from pointproc.checks.instances import BASE, instance_rng, check_regions, random_bag
from pointproc.core.bag import Bag, bag_map, bag_of_bags, bag_union, bag_unit, classify_composition, count_in_region
from pointproc.core.base_check import BaseCheck
from pointproc.core.space import Nat, Universe, region_set, region_universal
from pointproc.core.state import CheckResult, VerificationState


def _random_triple(rng) -> Bag:
    """Bag of bags of bags with at most six points in total."""

    while True:
        outer = Bag(
            tuple(
                Bag(tuple(random_bag(rng, max_size=2) for _ in range(int(rng.integers(0, 3)))))
                for _ in range(int(rng.integers(0, 3)))
            )
        )
        if sum(len(b) for bb in outer for b in bb) <= 6:
            return outer


class BagMonadLaws(BaseCheck):
    """η^B / μ^B unit and associativity laws on random nested bags."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        regions = check_regions()
        failures: List[str] = []
        for _ in range(state.instances):
            b = random_bag(rng)
            if bag_union(bag_unit(b)) != b:
                failures.append(f"left unit on {b!r}")
            if bag_union(bag_map(bag_unit, b)) != b:
                failures.append(f"right unit on {b!r}")
            bbb = _random_triple(rng)
            if bag_union(bag_union(bbb)) != bag_union(bag_map(bag_union, bbb)):
                failures.append(f"associativity on {bbb!r}")
            bb = Bag(tuple(random_bag(rng) for _ in range(int(rng.integers(0, 3)))))
            for region in regions:
                if count_in_region(bag_union(bb), region) != sum(count_in_region(x, region) for x in bb):
                    failures.append(f"count additivity on {bb!r}")
                    break
        return CheckResult(
            self.name,
            passed=not failures,
            instances=state.instances,
            max_discrepancy=float(len(failures)),
            detail={"failures": failures[:5]},
        )


def _inner_bags(points: Tuple[Nat, ...], max_total: int) -> List[Bag]:
    return [
        Bag(combo)
        for size in range(max_total + 1)
        for combo in itertools.combinations_with_replacement(points, size)
    ]


def enumerate_bag_of_bags(points: Tuple[Nat, ...], max_total: int = 4, max_outer: int = 4) -> List[Bag]:
    """Every bag of bags over *points* with at most *max_total* points and *max_outer* inner bags."""

    inner = _inner_bags(points, max_total)
    out = []
    for outer_size in range(max_outer + 1):
        for combo in itertools.combinations_with_replacement(inner, outer_size):
            if sum(len(b) for b in combo) <= max_total:
                out.append(bag_of_bags(combo))
    return out


class CompositionDecomposition(BaseCheck):
    """Exhaustive check that μ^B⁻¹(A^U_k) is the union of its composition classes."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        points = BASE[:2]
        everything = enumerate_bag_of_bags(points)
        regions = [region_set([points[0]]), region_set([points[1]]), region_set(points), region_universal(Universe.NATS)]
        mismatches = 0
        classes: Dict[int, Set[Tuple[int, ...]]] = {}
        for bb in everything:
            for region_index, region in enumerate(regions):
                direct = count_in_region(bag_union(bb), region)
                composition = classify_composition(bb, region)
                for k in range(5):
                    if (direct == k) != (sum(composition) == k):
                        mismatches += 1
                if region_index == 0:
                    classes.setdefault(direct, set()).add(tuple(c for c in composition if c))
        ways_for_four = sorted(classes.get(4, ()), reverse=True)
        return CheckResult(
            self.name,
            passed=mismatches == 0 and len(ways_for_four) == 5,
            instances=len(everything),
            max_discrepancy=float(mismatches),
            detail={"bags_of_bags": len(everything), "compositions_of_four": [list(c) for c in ways_for_four]},
        )
