"""𝔼 : GB → M is a monad morphism: Unit and Mult laws plus supporting identities."""

from __future__ import annotations

import math

from pointproc.checks.gb_laws import EXACT_TOLERANCE
from pointproc.checks.instances import (
    BASE,
    check_regions,
    instance_rng,
    random_bag_dist,
    random_dist_sequence,
    random_kernel,
    random_region,
)
from pointproc.core.base_check import BaseCheck
from pointproc.core.space import Real, region_interval, region_union
from pointproc.core.state import CheckResult, VerificationState
from pointproc.dist.bag_dist import gbe_bind, gbe_unit, prob_count
from pointproc.intensity.expected import distributive_intensity_check, intensity_of_exact
from pointproc.intensity.measure import Density, Dirac, KernelBind, eval, intensity_bind, intensity_unit

QUADRATURE_TOLERANCE = 1e-9


def _result(name: str, worst: float, instances: int, tolerance: float = EXACT_TOLERANCE, **detail) -> CheckResult:
    return CheckResult(
        name,
        passed=worst <= tolerance,
        instances=instances,
        max_discrepancy=worst,
        tolerance=tolerance,
        detail=detail,
    )


class UnitLaw(BaseCheck):
    """η^M = 𝔼 ∘ η^{GB}, exactly, on every check region."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        regions = check_regions()
        worst = 0.0
        for x in BASE:
            exact = intensity_of_exact(gbe_unit(x))
            for region in regions:
                worst = max(worst, abs(eval(exact, region) - eval(intensity_unit(x), region)))
        return _result(self.name, worst, len(BASE), tolerance=0.0, regions=len(regions))


class MultLaw(BaseCheck):
    """μ^M ∘ 𝔼𝔼 = 𝔼 ∘ μ^{GB}: 𝔼(α ≫= f) against 𝔼α ≫= 𝔼∘f."""

    requires = ("UnitLaw",)

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        regions = check_regions()
        worst = 0.0
        for _ in range(state.instances):
            alpha = random_bag_dist(rng)
            f = random_kernel(rng)
            left = intensity_of_exact(gbe_bind(alpha, f))
            right = intensity_bind(intensity_of_exact(alpha), lambda x: intensity_of_exact(f(x)))
            for region in regions:
                worst = max(worst, abs(eval(left, region) - eval(right, region)))
        return _result(self.name, worst, state.instances, regions=len(regions))


class CountingIdentity(BaseCheck):
    """𝔼α(U) = Σ_k k·α(A^U_k)."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        regions = check_regions()
        worst = 0.0
        for _ in range(state.instances):
            alpha = random_bag_dist(rng)
            top = max(len(bag) for bag, _ in alpha.items)
            measure = intensity_of_exact(alpha)
            for region in regions:
                by_counts = math.fsum(k * prob_count(alpha, region, k) for k in range(top + 1))
                worst = max(worst, abs(eval(measure, region) - by_counts))
        return _result(self.name, worst, state.instances)


class DistributiveIntensity(BaseCheck):
    """𝔼(l[ν₁..νₙ])(U) = Σᵢ νᵢ(U) for n ≤ 5."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        worst = 0.0
        for _ in range(state.instances):
            left, right = distributive_intensity_check(random_dist_sequence(rng, max_length=5), random_region(rng))
            worst = max(worst, abs(left - right))
        return _result(self.name, worst, state.instances)


def _shift_kernel(x: Real) -> Dirac:
    return Dirac(Real(x.value + 0.3))


class IntensityAdditivity(BaseCheck):
    """eval(m, U ⊎ V) = eval(m, U) + eval(m, V) for exact and quadrature measures."""

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        rng = instance_rng(seed)
        regions = check_regions()
        worst_exact = 0.0
        for _ in range(state.instances):
            measure = intensity_of_exact(random_bag_dist(rng))
            u = regions[int(rng.integers(0, len(regions)))]
            v = regions[int(rng.integers(0, len(regions)))]
            if u.complemented or v.complemented or u.points & v.points:
                continue
            joint = eval(measure, region_union(u, v))
            worst_exact = max(worst_exact, abs(joint - eval(measure, u) - eval(measure, v)))

        shifted = KernelBind(Density(1.0, region_interval(0.0, 1.0)), _shift_kernel)
        worst_quadrature = 0.0
        for _ in range(20):
            a, b, c = sorted(float(t) for t in rng.uniform(-0.5, 2.0, size=3))
            u, v = region_interval(a, b), region_interval(b, c)
            joint = eval(shifted, region_union(u, v))
            worst_quadrature = max(worst_quadrature, abs(joint - eval(shifted, u) - eval(shifted, v)))
        passed = worst_exact <= EXACT_TOLERANCE and worst_quadrature <= QUADRATURE_TOLERANCE
        return CheckResult(
            self.name,
            passed=passed,
            instances=state.instances + 20,
            max_discrepancy=max(worst_exact, worst_quadrature),
            tolerance=QUADRATURE_TOLERANCE,
            detail={"exact": worst_exact, "quadrature": worst_quadrature},
        )
