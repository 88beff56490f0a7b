"""Sampler-based processes: determinism, bind, constructors and estimators."""

from __future__ import annotations

import math

import numpy as np
import pytest

from pointproc.core.bag import EMPTY_BAG, Bag
from pointproc.core.errors import ResourceError, UsageError
from pointproc.core.seeding import SeedState, derive_seed, mix
from pointproc.core.space import (
    STAR,
    Nat,
    Real,
    Real2,
    Universe,
    region_contains,
    region_interval,
    region_rect,
    region_set,
    region_universal,
)
from pointproc.dist.bag_dist import prob_count
from pointproc.dist.discrete import dist_from_pmf, poisson_trunc, total_variation
from pointproc.intensity.expected import empirical_intensity_stats
from pointproc.intensity.measure import ZERO, eval
from pointproc.process import point_process
from pointproc.process.constructors import (
    cluster_demo,
    cluster_square,
    compound,
    displace,
    from_nat_dist,
    from_point_dist,
    keep_with_probability,
    poisson_pp,
    superpose,
    thin,
    thin_constant,
    uniform_point,
)
from pointproc.process.point_process import (
    PointProcess,
    count_correlation,
    count_matrix,
    empirical_count_prob,
    empirical_counts,
    empirical_joint_count_prob,
    pp_bind,
    pp_unit,
)

SQUARE = region_universal(Universe.UNIT_SQUARE)
STAR_REGION = region_set([STAR])


# ---------------------------------------------------------------------------
# Seeds
# ---------------------------------------------------------------------------


def test_mix_is_a_pure_64_bit_function():
    assert mix(0, 0) == 0xE220A8397B1DCDAF
    assert mix(0, 0) == mix(0, 0)
    assert 0 <= mix(2**64 - 1, 5) < 2**64
    assert mix(1, 0) != mix(1, 1)


def test_seed_streams_are_distinct():
    s = SeedState(7, 3)
    assert s.split(0) != s.split(1)
    assert s.replicate(4) == SeedState(7, 4)
    assert 0.0 <= s.uniform(0) < 1.0
    assert s.uniform(0) != s.uniform(1)


def test_derive_seed_keeps_the_first_attempt():
    assert derive_seed(42, 0) == 42
    assert derive_seed(42, 1) != 42


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def test_same_seed_same_draws():
    pi = poisson_pp(10.0, SQUARE)
    assert pi.draws(123, 5) == pi.draws(123, 5)
    assert pi.draws(123, 5) != pi.draws(124, 5)


def test_draw_i_is_replicate_i():
    pi = poisson_pp(5.0, SQUARE)
    assert pi.draws(9, 4)[3] == pi.draw(9, 3)


def test_worker_count_does_not_change_draws():
    pi = poisson_pp(5.0, SQUARE)
    assert pi.draws(31, 20, workers=4) == pi.draws(31, 20, workers=1)


def test_zero_draws_is_a_usage_error():
    with pytest.raises(UsageError):
        pp_unit(STAR).draws(1, 0)


def test_unit_always_draws_its_point():
    assert pp_unit(Nat(4)).draws(1, 3) == [Bag.of(Nat(4))] * 3
    assert pp_unit(Nat(4)).exact.support == {Bag.of(Nat(4)): 1.0}
    assert pp_unit(Real(0.5)).exact is None


def test_bind_universe_mismatch_is_reported():
    alpha = pp_bind(pp_unit(STAR), lambda _x: pp_unit(Nat(1)), universe=Universe.UNIT1)
    with pytest.raises(UsageError):
        alpha.draw(1)


def test_per_draw_point_guard(monkeypatch):
    monkeypatch.setattr(point_process, "MAX_DRAW_POINTS", 10)
    many = from_nat_dist(dist_from_pmf({20: 1.0}))
    alpha = pp_bind(many, lambda x: pp_unit(x))
    with pytest.raises(ResourceError):
        alpha.draw(1)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def test_from_nat_dist_draws_stars():
    coin = from_nat_dist(dist_from_pmf({0: 0.5, 1: 0.5}))
    draws = coin.draws(5, 50)
    assert set(draws) == {EMPTY_BAG, Bag.of(STAR)}
    assert coin.exact.support == {EMPTY_BAG: 0.5, Bag.of(STAR): 0.5}


def test_from_nat_dist_rejects_non_counts():
    with pytest.raises(UsageError):
        from_nat_dist(dist_from_pmf({-1: 1.0}))


def test_from_point_dist():
    nu = dist_from_pmf({Nat(0): 0.25, Nat(3): 0.75})
    alpha = from_point_dist(nu)
    assert alpha.universe is Universe.NATS
    assert all(len(b) == 1 for b in alpha.draws(2, 20))
    assert alpha.exact.support == {Bag.of(Nat(0)): 0.25, Bag.of(Nat(3)): 0.75}


def test_uniform_point_stays_in_region():
    region = region_interval(2.0, 3.0)
    for bag in uniform_point(region).draws(11, 200):
        (x,) = bag
        assert region_contains(region, x)


def test_uniform_point_needs_finite_positive_measure():
    with pytest.raises(UsageError):
        uniform_point(region_set([Nat(0)]))
    with pytest.raises(UsageError):
        uniform_point(region_universal(Universe.REAL_LINE))


def test_poisson_points_lie_in_region():
    window = region_rect(0.0, 0.0, 0.5, 0.5)
    for bag in poisson_pp(8.0, window).draws(3, 50):
        assert all(region_contains(window, p) for p in bag)


def test_poisson_rejects_non_positive_rate():
    with pytest.raises(UsageError):
        poisson_pp(0.0, SQUARE)


def test_compound_exact_distribution():
    gamma = compound(dist_from_pmf({1: 1.0}), dist_from_pmf({1: 0.5, 2: 0.5}))
    assert gamma.exact.support == pytest.approx({Bag.of(STAR): 0.5, Bag.of(STAR, STAR): 0.5})


def test_thin_exact_is_binomial():
    alpha = thin_constant(from_nat_dist(dist_from_pmf({2: 1.0})), 0.5)
    assert prob_count(alpha.exact, STAR_REGION, 1) == pytest.approx(0.5)
    assert prob_count(alpha.exact, STAR_REGION, 2) == pytest.approx(0.25)


def test_thin_with_general_rule():
    def keep_nonzero(x):
        return pp_unit(x) if x.value > 0 else PointProcess(lambda _s: EMPTY_BAG, Universe.NATS, intensity=ZERO)

    base = from_point_dist(dist_from_pmf({Nat(0): 0.5, Nat(2): 0.5}))
    kept = thin(base, keep_nonzero)
    assert {len(b) for b in kept.draws(1, 40)} == {0, 1}


def test_superpose_unions_independent_draws():
    both = superpose(pp_unit(Nat(1)), pp_unit(Nat(2)))
    assert both.draw(1) == Bag.of(Nat(1), Nat(2))
    assert both.exact.support == {Bag.of(Nat(1), Nat(2)): 1.0}


def test_displace_shifts_every_point():
    base = pp_unit(Real(1.0))
    shifted = displace(base, uniform_point(region_interval(0.0, 0.5)))
    for bag in shifted.draws(4, 30):
        (x,) = bag
        assert 1.0 <= x.value <= 1.5


def test_displace_needs_real_line():
    with pytest.raises(UsageError):
        displace(pp_unit(Nat(1)), pp_unit(Real(0.0)))


def test_cluster_square_is_clipped():
    (rect,) = cluster_square(Real2(0.02, 0.5), 0.1).rects
    assert rect == pytest.approx((0.0, 0.45, 0.07, 0.55))


def test_cluster_demo_draws_unit_square_points():
    beta = cluster_demo()
    bags = beta.draws(8, 3)
    assert all(0.0 <= p.x < 1.0 and 0.0 <= p.y < 1.0 for b in bags for p in b)


def test_cluster_demo_without_cluster_points_is_empty():
    beta = cluster_demo(cluster_rate=0.0)
    assert all(len(b) == 0 for b in beta.draws(5, 50))
    assert eval(beta.intensity, SQUARE) == 0.0


def test_cluster_demo_intensity_matches_simulation():
    beta = cluster_demo()
    expected = eval(beta.intensity, SQUARE)
    assert expected == pytest.approx(133.349609375, rel=1e-12)
    mean, stderr = empirical_intensity_stats(beta, SQUARE, 2000, SeedState(17))
    assert abs(mean - expected) <= 4 * stderr


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------


def test_count_matrix_shape():
    counts = count_matrix(pp_unit(STAR), [STAR_REGION, region_set([], Universe.UNIT1)], 4, SeedState(1))
    assert counts.shape == (4, 2)
    assert counts[:, 0].tolist() == [1, 1, 1, 1]
    assert counts[:, 1].tolist() == [0, 0, 0, 0]


def test_empirical_count_prob_matches_exact():
    coin = from_nat_dist(dist_from_pmf({0: 0.5, 1: 0.5}))
    n = 4000
    p = empirical_count_prob(coin, STAR_REGION, 1, n, SeedState(99))
    assert abs(p - 0.5) <= 4 * math.sqrt(0.25 / n)


def test_empirical_counts_mean_matches_rate():
    n = 2000
    counts = empirical_counts(from_nat_dist(poisson_trunc(3.0)), STAR_REGION, n, SeedState(5))
    assert abs(counts.mean() - 3.0) <= 4 * math.sqrt(3.0 / n)


def test_joint_counts_need_disjoint_regions():
    pi = poisson_pp(4.0, SQUARE)
    left = region_rect(0.0, 0.0, 0.5, 1.0)
    with pytest.raises(UsageError):
        empirical_joint_count_prob(pi, [left, left], [0, 0], 10, SeedState(1))


def test_poisson_counts_in_disjoint_windows_are_uncorrelated():
    n = 3000
    pi = poisson_pp(10.0, SQUARE)
    r = count_correlation(pi, region_rect(0.0, 0.0, 0.5, 0.5), region_rect(0.5, 0.5, 1.0, 1.0), n, SeedState(17))
    assert abs(r) <= 4 / math.sqrt(n)


def test_count_correlation_is_nan_for_constant_counts():
    r = count_correlation(pp_unit(Nat(0)), region_set([Nat(0)]), region_set([Nat(1)]), 10, SeedState(1))
    assert math.isnan(r)


def test_exact_matches_simulation_for_compound():
    gamma = compound(poisson_trunc(3.0, 1e-9), dist_from_pmf({1: 0.5, 2: 0.5}))
    n = 4000
    counts = empirical_counts(gamma, STAR_REGION, n, SeedState(2024))
    for k in range(3, 7):
        p = prob_count(gamma.exact, STAR_REGION, k)
        freq = float(np.mean(counts == k))
        assert abs(freq - p) <= 4 * math.sqrt(p * (1 - p) / n)


# ---------------------------------------------------------------------------
# Monad laws on samplers
# ---------------------------------------------------------------------------

LAW_DRAWS = 10_000


def _empirical_tv(process: PointProcess, law: dict, seed: int) -> float:
    draws = process.draws(seed, LAW_DRAWS)
    freq = {}
    for bag in draws:
        freq[bag] = freq.get(bag, 0) + 1
    outcomes = freq.keys() | law.keys()
    return 0.5 * math.fsum(abs(freq.get(b, 0) / LAW_DRAWS - law.get(b, 0.0)) for b in outcomes)


def _three_way_count():
    return from_nat_dist(dist_from_pmf({0: 0.25, 1: 0.5, 2: 0.25}))


def _coin_to_nat(_star):
    return from_point_dist(dist_from_pmf({Nat(0): 0.5, Nat(1): 0.5}))


def test_right_unit_on_samples():
    alpha = _three_way_count()
    law = alpha.exact.support
    assert _empirical_tv(pp_bind(alpha, pp_unit), law, seed=41) <= 0.02


def test_right_unit_on_exact_laws():
    alpha = from_nat_dist(poisson_trunc(3.0, 1e-9))
    assert total_variation(pp_bind(alpha, pp_unit).exact, alpha.exact) <= 1e-12


def test_left_unit_on_samples():
    def f(x):
        return from_point_dist(dist_from_pmf({Nat(0): 0.5, Nat(x.value + 1): 0.5}))

    law = f(Nat(1)).exact.support
    assert _empirical_tv(pp_bind(pp_unit(Nat(1)), f), law, seed=42) <= 0.02


def test_associativity_on_samples():
    coin = from_nat_dist(dist_from_pmf({0: 0.5, 1: 0.5}))
    keep = keep_with_probability(0.5)
    left = pp_bind(pp_bind(coin, _coin_to_nat, universe=Universe.NATS), keep)
    right = pp_bind(coin, lambda x: pp_bind(_coin_to_nat(x), keep), universe=Universe.NATS)
    law = {EMPTY_BAG: 0.75, Bag.of(Nat(0)): 0.125, Bag.of(Nat(1)): 0.125}

    assert left.exact.support == pytest.approx(law)
    assert _empirical_tv(left, law, seed=43) <= 0.02
    assert _empirical_tv(right, law, seed=44) <= 0.02


def test_thinning_keeps_a_sub_bag_of_the_same_draw():
    pi = poisson_pp(10.0, SQUARE)
    thinned = thin_constant(pi, 0.4)
    for i in range(50):
        s = SeedState(9, i)
        kept, full = thinned.sample(s), pi.sample(s.split(0))
        assert len(kept) <= len(full)
        assert not kept.multiplicities() - full.multiplicities()
