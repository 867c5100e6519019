"""Deterministic seed derivation over the Monte Carlo (run, replication) grid.

Every experiment owns a :class:`SeedPlan`.  Replication seeds are derived
from the master seed with a SplitMix64-style avalanche mix, keyed by a
:class:`Domain` tag plus the (run, replication) pair.  Separate domains keep
noise streams disjoint where the design requires it (e.g. pseudo-empirical
data versus candidate evaluation within one estimation run).

The mix is bijective in the packed ``(run << 32) | rep`` key for a fixed
(master, domain), so seeds are injective over run, rep < 2**32.  Because the
plan is pure, any experiment built on it yields identical output regardless
of worker count or scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class Domain(IntEnum):
    """Disjoint seed-derivation domains, one per noise consumer."""

    TRUE_MOMENTS = 1
    SENSITIVITY = 2
    TRACES = 3
    EMPIRICAL = 4
    CANDIDATE_EVAL = 5
    WEIGHTING = 6
    ROBUSTNESS = 7
    WIENER = 8
    SERIES = 9


def _avalanche(z: int) -> int:
    """SplitMix64 finalizer; a bijection on 64-bit integers."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SeedPlan:
    """Pure mapping (domain, run, replication) -> 64-bit seed."""

    master_seed: int

    def seed(self, domain: Domain, run: int, rep: int) -> int:
        if not (0 <= run < 1 << 32):
            raise ValueError(f"run index {run} outside [0, 2**32)")
        if not (0 <= rep < 1 << 32):
            raise ValueError(f"replication index {rep} outside [0, 2**32)")
        base = _avalanche((self.master_seed + _GOLDEN * int(domain)) & _MASK64)
        return _avalanche(base ^ ((run << 32) | rep))
