"""The G monad on countable carriers."""

from __future__ import annotations

import math

import pytest
from scipy import stats

from pointproc.core.errors import UsageError
from pointproc.core.space import Nat, region_set
from pointproc.dist.discrete import (
    DiscreteDist,
    dist_bind,
    dist_from_pmf,
    dist_join,
    dist_map,
    dist_prob,
    dist_product,
    dist_to_json,
    dist_uniform,
    dist_unit,
    expectation,
    poisson_trunc,
    quantile_function,
    total_variation,
)


def coin(p: float = 0.5) -> DiscreteDist:
    return dist_from_pmf({0: 1.0 - p, 1: p})


def test_weights_must_sum_to_one():
    with pytest.raises(UsageError):
        dist_from_pmf({0: 0.5, 1: 0.4})
    with pytest.raises(UsageError):
        dist_from_pmf({0: -0.1, 1: 1.1})


def test_zero_weights_are_dropped():
    d = dist_from_pmf({0: 1.0, 1: 0.0})
    assert d.items == ((0, 1.0),)


def test_uniform():
    d = dist_uniform(["b", "a", "b"])
    assert d.support == {"a": 0.5, "b": 0.5}


@pytest.mark.parametrize("rate", [0.5, 3.0, 10.0])
def test_poisson_truncation(rate):
    d = poisson_trunc(rate, 1e-9)
    assert 0.0 < d.defect < 1e-9
    assert d.mass + d.defect == pytest.approx(1.0, abs=1e-12)
    for k, w in d.items:
        assert w == pytest.approx(stats.poisson.pmf(k, rate), rel=1e-9)
    assert expectation(d) == pytest.approx(rate, abs=1e-6)


@pytest.mark.parametrize("rate", [0.0, -1.0, math.inf])
def test_poisson_rejects_bad_rates(rate):
    with pytest.raises(UsageError):
        poisson_trunc(rate)


def test_bind_unit_laws():
    d = coin(0.3)

    def k(x: int) -> DiscreteDist:
        return dist_from_pmf({x: 0.5, x + 10: 0.5})

    assert total_variation(dist_bind(dist_unit(1), k), k(1)) == 0.0
    assert total_variation(dist_bind(d, dist_unit), d) == 0.0


def test_bind_propagates_defect():
    d = poisson_trunc(2.0, 1e-6)
    out = dist_bind(d, lambda k: dist_unit(k % 2))
    assert out.defect == pytest.approx(d.defect)


def test_map_merges_values():
    d = dist_uniform([0, 1, 2, 3])
    assert dist_map(d, lambda x: x % 2).support == pytest.approx({0: 0.5, 1: 0.5})


def test_join():
    dd = dist_from_pmf({coin(0.2): 0.5, coin(0.6): 0.5})
    assert dist_join(dd).support[1] == pytest.approx(0.4)


def test_product_marginals():
    pair = dist_product([coin(0.3), coin(0.8)])
    assert pair.support[(1, 1)] == pytest.approx(0.24)
    assert total_variation(dist_map(pair, lambda t: t[1]), coin(0.8)) < 1e-15


def test_product_of_nothing_is_empty_tuple():
    assert dist_product([]).support == {(): 1.0}


def test_dist_prob_accepts_regions_sets_and_predicates():
    d = dist_from_pmf({Nat(0): 0.25, Nat(1): 0.75})
    assert dist_prob(d, region_set([Nat(1)])) == 0.75
    assert dist_prob(d, {Nat(0)}) == 0.25
    assert dist_prob(d, lambda x: x.value >= 0) == 1.0


def test_total_variation_counts_defect():
    a = DiscreteDist(((0, 0.9),), 0.1)
    b = dist_unit(0)
    assert total_variation(a, b) == pytest.approx(0.1)


def test_quantile_function_is_inverse_cdf():
    q = quantile_function(dist_from_pmf({0: 0.25, 1: 0.5, 2: 0.25}))
    assert q(0.0) == 0
    assert q(0.3) == 1
    assert q(0.75) == 2
    assert q(0.999) == 2


def test_dist_to_json():
    payload = dist_to_json(dist_from_pmf({Nat(1): 0.5, Nat(2): 0.5}))
    assert payload == {"support": [{"value": 1, "p": 0.5}, {"value": 2, "p": 0.5}], "defect": 0.0}
