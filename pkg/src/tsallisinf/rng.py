"""Deterministic random streams for simulation runs.

Every run derives its streams from (seed, algorithm id, role) where the
seed already includes the run index (run r of a batch with base seed b uses
seed b + r).  Streams are backed by the counter-based Philox generator, so
a logged seed fully determines a run regardless of scheduling or thread
count.
"""

from __future__ import annotations

import hashlib

import numpy as np

ROLE_ENV = "env"
ROLE_LEFT = "learner-left"
ROLE_RIGHT = "learner-right"


def _tag(algorithm_id: str, role: str) -> int:
    digest = hashlib.sha256(f"{algorithm_id}|{role}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def stream(seed: int, algorithm_id: str, role: str) -> np.random.Generator:
    """Independent generator for one (run, algorithm, role) combination."""
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    ss = np.random.SeedSequence(entropy=(int(seed), _tag(algorithm_id, role)))
    return np.random.Generator(np.random.Philox(ss))
