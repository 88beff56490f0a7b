#!/usr/bin/env python3
"""Entry point to run pointproc from a source checkout.

Usage
-----
$ python scripts/run_pointproc.py draw pipelines/fig1.pp --n 5 --format svg
$ python scripts/run_pointproc.py verify all

Equivalent to ``python -m pointproc`` with ``src/`` on the import path.
"""
from __future__ import annotations

from pathlib import Path

# Ensure local src/ is importable when executing from project root
import sys
sys.path.append(str(Path(__file__).resolve().parents[1] / "src"))

from pointproc.cli import main  # noqa: E402


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
