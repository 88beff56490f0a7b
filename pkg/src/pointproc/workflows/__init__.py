"""Workflow orchestration subpackage.

Contains the suite manager that orders and retries checks, the suite
registry, and the ``draw`` / ``intensity`` / ``verify`` runs the CLI calls.
"""

from .manager import SuiteManager  # noqa: F401
