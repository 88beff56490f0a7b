"""Verification suites run end to end with small instance counts."""

from __future__ import annotations

import math

import pytest

from pointproc.checks.empirical import WaldLemma, discrete_examples, run_seeds
from pointproc.core.seeding import mix
from pointproc.core.state import VerificationState
from pointproc.workflows.manager import SuiteManager
from pointproc.workflows.runs import run_verify, verify_states
from pointproc.workflows.suites import SUITE_NAMES, SUITES, expand


@pytest.mark.parametrize("suite", ["bag-laws", "gb-laws", "distributive", "morphism"])
def test_exact_suites_pass(suite):
    state = SuiteManager(SUITES[suite]).run(VerificationState(suite=suite, seed=7, instances=20))

    failures = [r.to_dict() for r in state.results if not r.passed]
    assert failures == []
    assert "errors" not in state.metadata
    assert all(r.attempts == 1 for r in state.results)


def test_exact_suites_are_deterministic():
    first = SuiteManager(SUITES["gb-laws"]).run(VerificationState(suite="gb-laws", seed=3, instances=10))
    second = SuiteManager(SUITES["gb-laws"]).run(VerificationState(suite="gb-laws", seed=3, instances=10))
    assert first.to_dict() == second.to_dict()


def test_wald_lemma_with_few_draws():
    state = VerificationState(suite="empirical", seed=1, draws=2000, seeds=(11,))
    result = WaldLemma().run(state)

    assert result.passed, result.to_dict()
    assert result.detail["compositional"] == pytest.approx(4.5, abs=1e-6)
    assert result.detail["exact"] == pytest.approx(4.5, abs=1e-6)
    assert result.detail["from_exact_measure"] == pytest.approx(4.5, abs=1e-6)


def test_reseed_derives_fresh_seeds():
    state = VerificationState(suite="empirical", seed=5, seeds=(11, 22))
    assert run_seeds(state, 5) == (11, 22)
    assert run_seeds(state, 99) == (mix(99, 0), mix(99, 1))


def test_discrete_examples_all_have_exact_laws():
    for name, (process, regions) in discrete_examples().items():
        assert process.exact is not None, name
        assert regions


def test_expand():
    assert expand("all") == list(SUITES)
    assert expand("morphism") == ["morphism"]
    assert SUITE_NAMES[-1] == "all"
    with pytest.raises(ValueError):
        expand("nope")


def test_verify_states_reads_config():
    config = {"verify": {"instances": 5, "seeds": [1, 2]}, "run": {"workers": 2}}
    (state,) = verify_states("bag-laws", 9, config)

    assert state.instances == 5
    assert state.seeds == (1, 2)
    assert state.metadata["workers"] == 2
    assert state.passed


def test_run_verify_report_shape():
    text, passed = run_verify("distributive", 4, {"verify": {"instances": 10}})

    assert passed
    assert '"suite": "distributive"' in text
    assert '"passed": true' in text


@pytest.fixture(scope="module")
def empirical_state():
    state = VerificationState(suite="empirical", seed=3, draws=2000, seeds=(11,))
    return SuiteManager(SUITES["empirical"], max_retries=2).run(state)


def test_empirical_suite_passes_with_few_draws(empirical_state):
    failures = [r.to_dict() for r in empirical_state.results if not r.passed]
    assert failures == []
    assert "errors" not in empirical_state.metadata
    assert [r.name for r in empirical_state.results] == [
        "ExactCalibration",
        "PoissonIntensity",
        "WaldLemma",
        "PoissonIndependence",
        "ClusterIntensity",
    ]


def test_empirical_report_shapes(empirical_state):
    results = {r.name: r for r in empirical_state.results}

    calibration = results["ExactCalibration"]
    assert calibration.instances > 0
    assert calibration.tolerance == 4.0
    assert set(calibration.detail) == {"worst_cell"}

    poisson = results["PoissonIntensity"]
    assert poisson.detail["compositional"] == 2.5
    assert len(poisson.detail["empirical"]) == 1
    assert poisson.tolerance == pytest.approx(3.0 * math.sqrt(2.5 / 2000))

    independence = results["PoissonIndependence"]
    assert set(independence.detail) == {"joint_cells_z", "correlation_z"}
    assert independence.instances > 0

    cluster = results["ClusterIntensity"]
    assert cluster.tolerance == 3.0
    assert cluster.instances == 2000
    assert cluster.detail["compositional"] == pytest.approx(133.349609375, rel=1e-12)
    assert cluster.detail["stderr"] > 0.0


def test_verify_states_workers_argument_beats_config():
    config = {"verify": {"instances": 5}, "run": {"workers": 1}}
    (state,) = verify_states("bag-laws", 9, config, workers=3)

    assert state.metadata["workers"] == 3
    assert state.passed
