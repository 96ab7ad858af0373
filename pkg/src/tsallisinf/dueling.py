"""Dueling-bandit reduction by self-play (sparring).

Each round two learners independently propose arms i and j; a single noisy
comparison declares the left or right side the winner with

    P[left side wins] = (1 + u_i - u_j) / 2

for per-arm utilities u in [0, 1] with |u_i - u_j| <= 1.  The winning side
incurs loss 0, the losing side loss 1, so the two losses always sum to 1
(also when i = j, where each side wins with probability 1/2).  Regret per
round is 2 max(u) - u_i - u_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class DuelSpec:
    """Comparison model over K arms with fixed utilities."""

    utilities: Tuple[float, ...]
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "utilities", tuple(float(u) for u in self.utilities))
        if len(self.utilities) < 1:
            raise ValueError("need at least one arm")
        if any(not 0.0 <= u <= 1.0 for u in self.utilities):
            raise ValueError("utilities must lie in [0, 1]")

    @property
    def n_arms(self) -> int:
        return len(self.utilities)

    def gaps(self) -> np.ndarray:
        """Utility shortfall per arm: max(u) - u_i."""
        u = np.array(self.utilities)
        return u.max() - u


def env_label(spec: DuelSpec) -> str:
    return spec.name if spec.name is not None else f"dueling-k{spec.n_arms}"


def duel_left_wins(spec: DuelSpec, i: int, j: int, u: float) -> bool:
    """Outcome of one comparison given a uniform draw u in [0, 1)."""
    p_left = (1.0 + spec.utilities[i] - spec.utilities[j]) / 2.0
    return u < p_left


def duel(spec: DuelSpec, i: int, j: int, u: float) -> int:
    """Arm of the winning side (i if the left side wins, else j)."""
    return i if duel_left_wins(spec, i, j, u) else j


def sparring_round(
    spec: DuelSpec,
    left,
    right,
    rng_env: np.random.Generator,
    rng_left: np.random.Generator,
    rng_right: np.random.Generator,
) -> Tuple[int, int, float]:
    """Play one round of self-play between two single-bandit learners.

    Returns (i, j, regret increment).  Feedback: the losing side's learner
    observes loss 1, the winning side's learner loss 0.
    """
    i = left.select(rng_left)
    j = right.select(rng_right)
    left_won = duel_left_wins(spec, i, j, float(rng_env.random()))
    loss_left = 0.0 if left_won else 1.0
    left.update(i, loss_left, rng_left)
    right.update(j, 1.0 - loss_left, rng_right)
    u = spec.utilities
    increment = 2.0 * max(u) - u[i] - u[j]
    return i, j, increment
