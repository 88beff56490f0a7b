"""Common foundation for every verification check.

Concrete checks (``BagMonadLaws``, ``PentagonIdentities``, ...) inherit from
:class:`BaseCheck` and implement :meth:`_execute`. This layer takes care of

* a per-check logger named after the check,
* "Starting" / "Finished" log lines around each run,
* turning an exception into a failed :class:`CheckResult` recorded in
  ``state.metadata["errors"]`` instead of aborting the suite.
"""

from __future__ import annotations

import logging
from typing import ClassVar, Optional, Tuple

from pointproc.core.state import CheckResult, VerificationState


class BaseCheck:
    """Abstract check; subclasses implement :meth:`_execute`.

    Class attributes
    ----------------
    statistical
        Monte Carlo checks may be retried with a reseeded stream.
    requires
        Names of checks that must pass first.
    """

    statistical: ClassVar[bool] = False
    requires: ClassVar[Tuple[str, ...]] = ()

    def __init__(self, name: Optional[str] = None) -> None:  # noqa: D401
        self.name = name or self.__class__.__name__
        self.logger = logging.getLogger(self.name)

    def run(self, state: VerificationState, seed: Optional[int] = None) -> CheckResult:
        """Execute the check while handling errors uniformly."""

        seed = state.seed if seed is None else seed
        try:
            self.logger.info("Starting %s (seed=%d)", self.name, seed)
            result = self._execute(state, seed)
            self.logger.info("Finished %s: %s", self.name, "passed" if result.passed else "FAILED")
        except Exception as exc:
            self.logger.exception("%s encountered an error: %s", self.name, exc)
            state.metadata.setdefault("errors", []).append({"check": self.name, "error": str(exc)})
            result = CheckResult(self.name, passed=False, detail={"error": str(exc)})
        result.seed = seed
        return result

    def _execute(self, state: VerificationState, seed: int) -> CheckResult:  # noqa: D401
        """Subclass hook containing the actual comparison."""
        raise NotImplementedError("_execute must be implemented by concrete check subclasses")
