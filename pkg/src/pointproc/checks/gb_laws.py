"""Monad laws for G and GB on random small discrete instances."""

from __future__ import annotations

from pointproc.checks.instances import (
    BASE,
    instance_rng,
    random_bag_dist,
    random_dist,
    random_gbgb,
    random_kernel,
)
from pointproc.core.base_check import BaseCheck
from pointproc.core.state import CheckResult, VerificationState
from pointproc.dist.bag_dist import gbe_bind, gbe_join, gbe_map, gbe_unit
from pointproc.dist.discrete import dist_bind, dist_map, dist_product, dist_unit, total_variation

EXACT_TOLERANCE = 1e-12


class _DiscrepancyTracker:
    """Keeps the worst total-variation discrepancy seen and where it happened."""

    def __init__(self) -> None:
        self.worst = 0.0
        self.where = ""

    def compare(self, law: str, left, right) -> None:
        tv = total_variation(left, right)
        if tv > self.worst:
            self.worst, self.where = tv, law

    def result(self, name: str, instances: int) -> CheckResult:
        return CheckResult(
            name,
            passed=self.worst <= EXACT_TOLERANCE,
            instances=instances,
            max_discrepancy=self.worst,
            tolerance=EXACT_TOLERANCE,
            detail={"worst_law": self.where} if self.where else {},
        )


class DistMonadLaws(BaseCheck):
    """G unit/associativity laws and product marginals, supports up to five values."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        values = list(range(6))
        tracker = _DiscrepancyTracker()
        for _ in range(state.instances):
            d = random_dist(rng, values, max_support=5)
            table = {v: random_dist(rng, values, max_support=5) for v in values}
            table2 = {v: random_dist(rng, values, max_support=5) for v in values}
            k, h = table.__getitem__, table2.__getitem__
            x = values[int(rng.integers(0, len(values)))]
            tracker.compare("left unit", dist_bind(dist_unit(x), k), k(x))
            tracker.compare("right unit", dist_bind(d, dist_unit), d)
            tracker.compare(
                "associativity",
                dist_bind(dist_bind(d, k), h),
                dist_bind(d, lambda v: dist_bind(k(v), h)),
            )
            e = random_dist(rng, values, max_support=5)
            pair = dist_product([d, e])
            tracker.compare("first marginal", dist_map(pair, lambda t: t[0]), d)
            tracker.compare("second marginal", dist_map(pair, lambda t: t[1]), e)
        return tracker.result(self.name, state.instances)


class GBMonadLaws(BaseCheck):
    """GB left unit, right unit and associativity by exact enumeration."""

    requires = ("DistMonadLaws",)

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        tracker = _DiscrepancyTracker()
        for _ in range(state.instances):
            alpha = random_bag_dist(rng)
            f, g = random_kernel(rng), random_kernel(rng)
            x = BASE[int(rng.integers(0, len(BASE)))]
            tracker.compare("left unit", gbe_bind(gbe_unit(x), f), f(x))
            tracker.compare("right unit", gbe_bind(alpha, gbe_unit), alpha)
            tracker.compare(
                "associativity",
                gbe_bind(gbe_bind(alpha, f), g),
                gbe_bind(alpha, lambda y: gbe_bind(f(y), g)),
            )
        return tracker.result(self.name, state.instances)


class BindJoinAgreement(BaseCheck):
    """gbe_bind against μ^{GB} ∘ GB f, and μ^{GB} on random GBGB values."""

    requires = ("GBMonadLaws",)

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        tracker = _DiscrepancyTracker()
        for _ in range(state.instances):
            alpha = random_bag_dist(rng)
            f = random_kernel(rng)
            tracker.compare("bind via join", gbe_bind(alpha, f), gbe_join(gbe_map(alpha, f)))
            gbgb = random_gbgb(rng)
            tracker.compare("join via bind", gbe_join(gbgb), gbe_bind(gbgb, lambda process: process))
        return tracker.result(self.name, state.instances)
