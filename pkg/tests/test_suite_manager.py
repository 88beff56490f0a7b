"""Unit tests for SuiteManager.

They verify:

1. Dependency-aware ordering – checks only run after their prerequisites.
2. Skipping – a check whose prerequisite failed is recorded as failed, not run.
3. Retry with reseed – statistical checks get a second seed, exact ones do not.
4. Error propagation – exceptions become failed results plus an ``errors`` entry.
"""

from __future__ import annotations

from typing import List

import pytest

from pointproc.core.base_check import BaseCheck
from pointproc.core.seeding import derive_seed
from pointproc.core.state import CheckResult, VerificationState
from pointproc.workflows.manager import SuiteManager


# ---------------------------------------------------------------------------
# Helper checks used in tests
# ---------------------------------------------------------------------------

class RecordingCheck(BaseCheck):
    """Appends its *record_key* to ``state.metadata['events']`` when executed."""

    record_key = "?"
    outcome = True

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:  # noqa: D401
        state.metadata.setdefault("events", []).append(self.record_key)
        return CheckResult(self.name, passed=self.outcome)


class CheckA(RecordingCheck):
    record_key = "A"


class CheckB(RecordingCheck):
    record_key = "B"
    requires = ("CheckA",)


class CheckC(RecordingCheck):
    record_key = "C"


class FailingA(RecordingCheck):
    record_key = "A"
    outcome = False


class NeedsFailingA(RecordingCheck):
    record_key = "B"
    requires = ("FailingA",)


class FlakyStatistical(BaseCheck):
    """Fails for the base seed, passes for any reseed."""

    statistical = True

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        state.metadata.setdefault("seeds", []).append(seed)
        return CheckResult(self.name, passed=seed != state.seed)


class FlakyExact(FlakyStatistical):
    statistical = False


class Exploding(BaseCheck):
    def _execute(self, state: VerificationState, seed: int) -> CheckResult:
        raise RuntimeError("intentional failure")


def _state() -> VerificationState:
    return VerificationState(suite="test", seed=42)


# ---------------------------------------------------------------------------
# Tests
# ---------------------------------------------------------------------------

def test_dependency_order():
    """Declared and explicit dependencies both constrain the order."""

    manager = SuiteManager([CheckB, CheckC, CheckA], dependencies={"CheckC": ["CheckB"]})
    state = manager.run(_state())

    assert state.metadata["events"] == ["A", "B", "C"]
    assert state.passed


def test_unknown_dependency_is_rejected():
    with pytest.raises(ValueError, match="Unknown dependency"):
        SuiteManager([CheckA], dependencies={"CheckA": ["Nope"]})


def test_cycle_is_rejected():
    with pytest.raises(ValueError, match="cycle"):
        SuiteManager([CheckA, CheckB], dependencies={"CheckA": ["CheckB"]})


def test_failed_prerequisite_skips_dependent():
    state = SuiteManager([FailingA, NeedsFailingA]).run(_state())

    assert state.metadata["events"] == ["A"]
    skipped = state.result("NeedsFailingA")
    assert skipped.passed is False
    assert skipped.attempts == 0
    assert skipped.detail == {"skipped": ["FailingA"]}
    assert not state.passed


def test_statistical_check_is_reseeded():
    state = SuiteManager([FlakyStatistical], max_retries=2).run(_state())

    seeds: List[int] = state.metadata["seeds"]
    assert seeds == [42, derive_seed(42, 1)]
    result = state.result("FlakyStatistical")
    assert result.passed
    assert result.attempts == 2
    assert result.seed == derive_seed(42, 1)


def test_exact_check_runs_once():
    state = SuiteManager([FlakyExact], max_retries=3).run(_state())

    assert state.metadata["seeds"] == [42]
    assert not state.passed


def test_exception_becomes_failed_result():
    state = SuiteManager([Exploding, CheckC]).run(_state())

    assert state.result("Exploding").passed is False
    assert state.metadata["errors"] == [{"check": "Exploding", "error": "intentional failure"}]
    assert state.result("CheckC").passed


def test_empty_suite_does_not_pass():
    assert not SuiteManager([]).run(_state()).passed


def test_max_retries_must_be_positive():
    with pytest.raises(ValueError):
        SuiteManager([CheckA], max_retries=0)
