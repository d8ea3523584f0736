"""Deterministic RNG stream derivation.

Every random draw in the package comes from a numpy Generator derived from a
master seed, a small integer purpose tag, and optional indices, via SeedSequence
spawn keys.  Identical (master_seed, key) always yields an identical stream, so
results never depend on scheduling or call order across streams.
"""
from __future__ import annotations

import numpy as np

HOLES = 1
EDGES = 2
REPLICATE = 3
BRANCHING = 4
SWEEP = 5


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Generator for (master_seed, key); key is (purpose, index...)."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=key))


def child_seed(master_seed: int, *key: int) -> int:
    """A 64-bit seed usable as a new master seed, derived from (master_seed, key)."""
    ss = np.random.SeedSequence(master_seed, spawn_key=key)
    return int(ss.generate_state(1, dtype=np.uint64)[0])
