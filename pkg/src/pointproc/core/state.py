"""Verification state.

A single :class:`VerificationState` flows through every check of a suite run.
Checks read the run parameters from it and the :class:`SuiteManager` appends
one :class:`CheckResult` per check; the JSON report printed by
``pointproc verify`` is ``state.to_dict()``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple


@dataclass
class CheckResult:
    """Outcome of one check.

    Attributes
    ----------
    name: str
        Check class name.
    passed: bool
        Whether every instance stayed within tolerance.
    instances: int
        Number of instances (or cells) examined.
    max_discrepancy: float
        Largest observed discrepancy (total variation, absolute error or
        number of standard errors, depending on the check).
    tolerance: float
        Bound ``max_discrepancy`` was compared against.
    attempts: int
        Seeds tried; statistical checks get one reseed.
    seed: int | None
        Seed of the final attempt.
    detail: Dict[str, Any]
        Check-specific extras (failing instance, per-process summaries, ...).
    """

    name: str
    passed: bool
    instances: int = 0
    max_discrepancy: float = 0.0
    tolerance: float = 0.0
    attempts: int = 1
    seed: int | None = None
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "instances": self.instances,
            "max_discrepancy": self.max_discrepancy,
            "tolerance": self.tolerance,
            "attempts": self.attempts,
            "seed": self.seed,
            "detail": self.detail,
        }


@dataclass
class VerificationState:
    """Centralized container for one suite run.

    Attributes
    ----------
    suite: str
        Suite name (``bag-laws``, ``gb-laws``, ...).
    seed: int
        Base seed; instance generators and Monte Carlo replicates derive from it.
    instances: int
        Random instances per exact-law check.
    draws: int
        Monte Carlo draws per statistical check.
    seeds: Tuple[int, ...]
        Independent seeds for the statistical checks.
    results: List[CheckResult]
        Filled in by the manager, in execution order.
    metadata: Dict[str, Any]
        Free-form; ``metadata["errors"]`` collects exceptions raised by checks.
    """

    suite: str
    seed: int
    instances: int = 200
    draws: int = 10_000
    seeds: Tuple[int, ...] = (11, 22, 33)
    results: List[CheckResult] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(r.passed for r in self.results)

    def result(self, name: str) -> CheckResult | None:
        for r in reversed(self.results):
            if r.name == name:
                return r
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "instances": self.instances,
            "draws": self.draws,
            "seeds": list(self.seeds),
            "passed": self.passed,
            "results": [r.to_dict() for r in self.results],
            "metadata": self.metadata,
        }
