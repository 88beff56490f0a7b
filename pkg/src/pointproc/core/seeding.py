"""Splittable, counter-based seed streams.

Every random decision in pointproc is a pure function of a :class:`SeedState`.
The derivation function is the SplitMix64 finaliser applied to
``seed + (index + 1) * GOLDEN``::

    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB      mod 2**64
    mix(seed, index) = z ^ (z >> 31)

Because only 64-bit integer arithmetic is involved, a given (seed, index) pair
produces the same stream on every platform.

* ``SeedState(seed, i)`` is replicate *i* of a run seeded with *seed*; its
  working key is ``mix(seed, i)``.
* ``state.split(j)`` is child stream *j* (``SeedState(state.key, j)``).
* ``state.uniform(j)`` is the *j*-th uniform double in ``[0, 1)`` of the
  stream, drawn from a salted key so it never coincides with a child key.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_UNIFORM_SALT = 0xD1B54A32D192ED03
_INV_2_53 = 1.0 / (1 << 53)


def mix(seed: int, index: int) -> int:
    """SplitMix64 child-seed derivation (see module docstring)."""

    z = (seed + (index + 1) * GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SeedState:
    """A 64-bit seed plus a stream/replicate index."""

    seed: int
    index: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "seed", int(self.seed) & MASK64)
        if self.index < 0:
            raise ValueError("stream index must be non-negative")

    @cached_property
    def key(self) -> int:
        return mix(self.seed, self.index)

    def split(self, j: int) -> "SeedState":
        return SeedState(self.key, j)

    def replicate(self, i: int) -> "SeedState":
        """Replicate *i* of the same run (same seed, different index)."""

        return SeedState(self.seed, i)

    def uniform(self, j: int = 0) -> float:
        return (mix(self.key ^ _UNIFORM_SALT, j) >> 11) * _INV_2_53


def derive_seed(seed: int, attempt: int) -> int:
    """Seed used for the *attempt*-th reseed of a statistical check (0 = as given)."""

    return seed & MASK64 if attempt == 0 else mix(seed & MASK64, 1_000_003 + attempt)
