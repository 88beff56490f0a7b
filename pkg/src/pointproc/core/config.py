"""Run configuration.

Settings come from a YAML file (``configs/default.yml`` unless ``--config``
points elsewhere) layered over built-in defaults. The seed is resolved as
``--seed`` flag > ``POINTPROC_SEED`` (environment or ``.env``) > ``run.seed``
in YAML > built-in default.
"""

from __future__ import annotations

import copy
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import yaml

from pointproc.core.errors import UsageError
from pointproc.core.seeding import MASK64

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("configs/default.yml")
SEED_ENV_VAR = "POINTPROC_SEED"
OUTPUT_FORMATS = ("csv", "svg", "json")

DEFAULTS: Dict[str, Any] = {
    "run": {"seed": 20240601, "draws": 5, "format": "csv", "workers": 1},
    "sampling": {"poisson_epsilon": 1e-12},
    "intensity": {"quadrature_resolution": 64, "empirical_draws": 10000},
    "verify": {"seeds": [11, 22, 33], "draws": 10000, "instances": 200, "max_retries": 2},
    "logging": {"level": "WARNING"},
}


def _merge(base: Dict[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value
    return base


def load_config(path: Union[str, Path, None] = None) -> Dict[str, Any]:
    """YAML settings merged over :data:`DEFAULTS`; a missing file only warns."""

    config = copy.deepcopy(DEFAULTS)
    config_path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    if not config_path.exists():
        logger.warning("Config file %s not found; proceeding with defaults", config_path)
        return config
    loaded = yaml.safe_load(config_path.read_text(encoding="utf-8")) or {}
    if not isinstance(loaded, Mapping):
        raise UsageError(f"{config_path} must contain a YAML mapping")
    return _merge(config, loaded)


def parse_seed(value: Any) -> int:
    """Integer seed reduced modulo 2**64."""

    if isinstance(value, bool):
        raise UsageError(f"seed must be an integer, got {value!r}")
    if isinstance(value, int):
        return value & MASK64
    try:
        return int(str(value).strip()) & MASK64
    except ValueError:
        raise UsageError(f"seed must be an integer, got {value!r}") from None


def resolve_seed(
    flag: Optional[Any], config: Mapping[str, Any], environ: Optional[Mapping[str, str]] = None
) -> int:
    environ = os.environ if environ is None else environ
    if flag is not None:
        return parse_seed(flag)
    if environ.get(SEED_ENV_VAR):
        return parse_seed(environ[SEED_ENV_VAR])
    return parse_seed(config.get("run", {}).get("seed", DEFAULTS["run"]["seed"]))


@dataclass
class RunConfig:
    """Everything one ``draw`` or ``intensity`` invocation needs.

    Attributes
    ----------
    seed
        64-bit run seed; draw *i* uses replicate *i* of it.
    draws
        Number of draws (``draw``) or Monte Carlo replicates (``intensity``).
    output_format
        One of ``csv``, ``svg``, ``json``.
    regions
        Region literals for intensity reports.
    quadrature_resolution
        Midpoint grid per interval / per rectangle side.
    poisson_epsilon
        Truncation bound for Poisson count distributions.
    workers
        Threads used for replicate sampling; output never depends on it.
    """

    seed: int
    draws: int = 5
    output_format: str = "csv"
    regions: List[str] = field(default_factory=list)
    quadrature_resolution: int = 64
    poisson_epsilon: float = 1e-12
    workers: int = 1

    def __post_init__(self) -> None:
        self.seed = parse_seed(self.seed)
        if isinstance(self.draws, bool) or not isinstance(self.draws, int) or self.draws < 1:
            raise UsageError(f"draws must be a positive integer, got {self.draws!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise UsageError(f"format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.output_format!r}")
        if self.quadrature_resolution < 1:
            raise UsageError("quadrature resolution must be positive")
        if not 0.0 < self.poisson_epsilon < 1.0:
            raise UsageError("Poisson epsilon must lie in (0, 1)")
        if self.workers < 1:
            raise UsageError("workers must be at least 1")

    @classmethod
    def from_config(cls, config: Mapping[str, Any], seed: int, **overrides: Any) -> "RunConfig":
        run = config.get("run", {})
        values = {
            "seed": seed,
            "draws": run.get("draws", DEFAULTS["run"]["draws"]),
            "output_format": run.get("format", DEFAULTS["run"]["format"]),
            "workers": run.get("workers", 1),
            "quadrature_resolution": config.get("intensity", {}).get("quadrature_resolution", 64),
            "poisson_epsilon": config.get("sampling", {}).get("poisson_epsilon", 1e-12),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
