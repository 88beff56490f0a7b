"""SuiteManager: runs the checks of one verification suite.

* **Explicit dependencies** – a check may declare (``requires``) or be given
  (``dependencies=``) checks that must pass before it runs; it is skipped and
  counted as failed otherwise.
* **Retry with reseed** – a failed *statistical* check is rerun with
  ``derive_seed(state.seed, attempt)`` up to ``max_retries`` attempts in total.
  Exact checks are deterministic and run once.
* **Graceful error propagation** – exceptions become failed results (see
  :class:`BaseCheck`) and the remaining checks still run.

Usage
-----
```python
manager = SuiteManager([TriangleIdentities, PentagonIdentities], max_retries=2)
state = manager.run(VerificationState(suite="distributive", seed=7))
```
"""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from typing import Dict, List, Sequence, Type

from pointproc.core.base_check import BaseCheck
from pointproc.core.seeding import derive_seed
from pointproc.core.state import CheckResult, VerificationState

logger = logging.getLogger(__name__)


class SuiteManager:
    """Orders checks by their prerequisites and executes them."""

    def __init__(
        self,
        check_classes: Sequence[Type[BaseCheck]],
        *,
        dependencies: Dict[str, Sequence[str]] | None = None,
        max_retries: int = 2,
    ):  # noqa: D401
        """Create a manager.

        Parameters
        ----------
        check_classes
            Concrete ``BaseCheck`` subclasses, in preferred execution order.
        dependencies
            Optional mapping ``{check_name: [prerequisite, ...]}`` added to
            what the classes declare themselves.
        max_retries
            Total attempts allowed for a statistical check.
        """

        if max_retries < 1:
            raise ValueError("max_retries must be at least 1")
        self.max_retries = max_retries
        self._checks: Dict[str, BaseCheck] = {cls.__name__: cls() for cls in check_classes}

        self._deps: Dict[str, List[str]] = defaultdict(list)
        declared = {name: list(check.requires) for name, check in self._checks.items()}
        for name, deps in {**declared, **(dependencies or {})}.items():
            if name not in self._checks:
                raise ValueError(f"Unknown check in dependencies: {name}")
            for dep in deps:
                if dep not in self._checks:
                    raise ValueError(f"Unknown dependency '{dep}' for {name}")
                if dep not in self._deps[name]:
                    self._deps[name].append(dep)

        self.order = self._topological_order()

    def _topological_order(self) -> List[str]:
        indegree = {name: len(self._deps.get(name, ())) for name in self._checks}
        queue = deque(name for name in self._checks if indegree[name] == 0)
        order: List[str] = []
        while queue:
            node = queue.popleft()
            order.append(node)
            for child in self._checks:
                if node in self._deps.get(child, ()):
                    indegree[child] -= 1
                    if indegree[child] == 0:
                        queue.append(child)
        if len(order) != len(self._checks):
            raise ValueError("Dependency graph contains a cycle – cannot proceed")
        return order

    def _run_check(self, check: BaseCheck, state: VerificationState) -> CheckResult:
        attempts = self.max_retries if check.statistical else 1
        for attempt in range(attempts):
            result = check.run(state, derive_seed(state.seed, attempt))
            result.attempts = attempt + 1
            if result.passed:
                break
            if attempt + 1 < attempts:
                logger.warning("%s failed with seed %d; reseeding", check.name, result.seed)
        return result

    def run(self, state: VerificationState) -> VerificationState:
        """Execute every check in dependency order and return the state."""

        logger.info("Starting suite %s with %d checks", state.suite, len(self.order))
        for name in self.order:
            failed = [dep for dep in self._deps.get(name, ()) if not getattr(state.result(dep), "passed", False)]
            if failed:
                logger.warning("Skipping %s: prerequisite %s failed", name, ", ".join(failed))
                state.results.append(CheckResult(name, passed=False, attempts=0, detail={"skipped": failed}))
                continue
            state.results.append(self._run_check(self._checks[name], state))
        logger.info("Finished suite %s: %s", state.suite, "passed" if state.passed else "FAILED")
        return state
