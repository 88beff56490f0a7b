"""The distributive law l : BG → GB.

Two triangle and two pentagon identities, the cardinality lemma, and the
polynomial-coefficient oracle for l's counting probabilities.
"""

from __future__ import annotations

from pointproc.checks.gb_laws import EXACT_TOLERANCE, _DiscrepancyTracker
from pointproc.checks.instances import (
    check_regions,
    instance_rng,
    random_bag,
    random_dist_sequence,
    random_nested_dist,
    random_point_dist,
    random_region,
)
from pointproc.core.bag import Bag, bag_map, bag_union, bag_unit
from pointproc.core.base_check import BaseCheck
from pointproc.core.state import CheckResult, VerificationState
from pointproc.dist.bag_dist import distributive_law, poly_coeff_check, prob_count
from pointproc.dist.discrete import dist_join, dist_map, dist_unit


def _l(bag) -> object:
    return distributive_law(list(bag))


class TriangleIdentities(BaseCheck):
    """l ∘ Bη^G = η^G B and G η^B = l ∘ η^B G."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        tracker = _DiscrepancyTracker()
        for _ in range(state.instances):
            b = random_bag(rng)
            tracker.compare("triangle I", _l(bag_map(dist_unit, b)), dist_unit(b))
            nu = random_point_dist(rng)
            tracker.compare("triangle II", dist_map(nu, bag_unit), _l(bag_unit(nu)))
        return tracker.result(self.name, state.instances)


class PentagonIdentities(BaseCheck):
    """l ∘ Bμ^G = μ^G B ∘ Gl ∘ lG and Gμ^B ∘ lB ∘ Bl = l ∘ μ^B G."""

    requires = ("TriangleIdentities",)

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        tracker = _DiscrepancyTracker()
        for _ in range(state.instances):
            # B G G X
            bgg = Bag(tuple(random_nested_dist(rng) for _ in range(int(rng.integers(0, 4)))))
            tracker.compare(
                "pentagon I",
                _l(bag_map(dist_join, bgg)),
                dist_join(dist_map(_l(bgg), _l)),
            )
            # B B G X
            bbg = Bag(tuple(Bag(tuple(random_dist_sequence(rng))) for _ in range(int(rng.integers(0, 4)))))
            tracker.compare(
                "pentagon II",
                dist_map(_l(bag_map(_l, bbg)), bag_union),
                _l(bag_union(bbg)),
            )
        return tracker.result(self.name, state.instances)


class CardinalityLemma(BaseCheck):
    """Every bag in the support of l[ν₁..νₙ] has exactly n elements."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        wrong = 0
        checked = 0
        for _ in range(state.instances):
            nus = random_dist_sequence(rng)
            for bag, _ in distributive_law(nus).items:
                checked += 1
                wrong += len(bag) != len(nus)
        return CheckResult(
            self.name,
            passed=wrong == 0,
            instances=state.instances,
            max_discrepancy=float(wrong),
            detail={"support_bags": checked},
        )


class PolynomialOracle(BaseCheck):
    """l[νs](A^U_k) against the coefficient of x^k in Π(νᵢ(Ū) + νᵢ(U)x), n ≤ 5."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        worst = 0.0
        for _ in range(max(state.instances, 100)):
            nus = random_dist_sequence(rng, max_length=5)
            region = random_region(rng)
            k = int(rng.integers(0, len(nus) + 2))
            worst = max(worst, abs(prob_count(distributive_law(nus), region, k) - poly_coeff_check(nus, region, k)))
        return CheckResult(
            self.name,
            passed=worst <= EXACT_TOLERANCE,
            instances=max(state.instances, 100),
            max_discrepancy=worst,
            tolerance=EXACT_TOLERANCE,
            detail={"regions": len(check_regions())},
        )
