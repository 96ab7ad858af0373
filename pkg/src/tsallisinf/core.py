"""Core domain types for bandit simulation.

Values are validated at construction and treated as immutable afterwards.
The one exception is :class:`RegretTrace`, which is a single-run accumulator
and is only ever touched by the thread that owns the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

# Tolerance for "sums to one" checks on probability vectors.
SIMPLEX_TOL = 1e-9


def _readonly(values, dtype=np.float64) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def as_weights(values: Sequence[float], tol: float = SIMPLEX_TOL) -> np.ndarray:
    """Validate a probability vector: strictly positive, sums to 1 within tol.

    Returns a read-only float64 copy.
    """
    w = _readonly(values)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("weights must be a non-empty 1-d vector")
    if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
        raise ValueError("weights must be finite and strictly positive")
    total = float(w.sum())
    if abs(total - 1.0) > tol:
        raise ValueError(f"weights sum to {total!r}, expected 1 within {tol}")
    return w


def as_losses(values: Sequence[float]) -> np.ndarray:
    """Validate a loss vector with entries in [0, 1]. Returns read-only copy."""
    losses = _readonly(values)
    if losses.ndim != 1 or losses.size == 0:
        raise ValueError("losses must be a non-empty 1-d vector")
    if not np.all(np.isfinite(losses)):
        raise ValueError("losses must be finite")
    if np.any(losses < 0.0) or np.any(losses > 1.0):
        raise ValueError("losses must lie in [0, 1]")
    return losses


def sample_index(weights: np.ndarray, u: float) -> int:
    """Inverse-CDF draw from a probability vector.

    Returns the first index i with u < w_0 + ... + w_i.  u = 0 always picks
    index 0; u just above a cumulative boundary picks the next arm.  Any
    leftover mass from rounding goes to the last arm.
    """
    if not 0.0 <= u < 1.0 + 1e-12:
        raise ValueError("u must lie in [0, 1)")
    cum = np.cumsum(weights)
    idx = int(np.searchsorted(cum, u, side="right"))
    return min(idx, len(weights) - 1)


@dataclass(frozen=True, eq=False)
class GapVector:
    """Suboptimality gaps of a stochastic environment.

    ``gaps[i]`` is the loss-mean excess of arm i over the best arm; at least
    one entry is zero.  ``unique_optimum`` records whether exactly one arm
    attains the minimum, which gap-dependent bounds require.
    """

    gaps: np.ndarray
    unique_optimum: bool = field(init=False)
    optimal_arm: Optional[int] = field(init=False)

    def __post_init__(self):
        gaps = _readonly(self.gaps)
        if gaps.ndim != 1 or gaps.size == 0:
            raise ValueError("gaps must be a non-empty 1-d vector")
        if not np.all(np.isfinite(gaps)) or np.any(gaps < 0.0):
            raise ValueError("gaps must be finite and non-negative")
        if gaps.min() > 0.0:
            raise ValueError("at least one gap must be zero")
        zero = np.flatnonzero(gaps == 0.0)
        object.__setattr__(self, "gaps", gaps)
        object.__setattr__(self, "unique_optimum", len(zero) == 1)
        object.__setattr__(
            self, "optimal_arm", int(zero[0]) if len(zero) == 1 else None
        )

    @classmethod
    def from_means(cls, means: Sequence[float]) -> "GapVector":
        m = np.asarray(means, dtype=np.float64)
        return cls(m - m.min())

    @property
    def n_arms(self) -> int:
        return int(self.gaps.size)

    def min_positive(self) -> float:
        """Smallest non-zero gap. Requires at least one suboptimal arm."""
        positive = self.gaps[self.gaps > 0.0]
        if positive.size == 0:
            raise ValueError("all arms are optimal; no positive gap exists")
        return float(positive.min())


def checkpoint_grid(horizon: int) -> np.ndarray:
    """Rounds at which regret is recorded.

    Geometric grid ceil(10^(k/20)) for k = 0, 1, ..., every round up to 100,
    and the horizon itself; deduplicated, ascending, clipped to [1, horizon].
    Powers of ten are exact grid points.  A zero horizon yields an empty grid.
    """
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    if horizon == 0:
        return np.array([], dtype=np.int64)
    points = set(range(1, min(horizon, 100) + 1))
    points.add(horizon)
    k = 0
    while True:
        t = math.ceil(10.0 ** (k / 20.0))
        if t > horizon:
            break
        points.add(t)
        k += 1
    return np.array(sorted(points), dtype=np.int64)


@dataclass
class RegretTrace:
    """Cumulative pseudo-regret of one run, sampled on a checkpoint grid.

    Rounds must be recorded consecutively starting at 1.  Mutated in place;
    owned by a single run.
    """

    algorithm: str
    env: str
    seed: int
    horizon: int
    grid: np.ndarray = field(default=None)  # type: ignore[assignment]
    checkpoints: list = field(default_factory=list)
    _running: float = 0.0
    _last_t: int = 0
    _next_idx: int = 0

    def __post_init__(self):
        if self.grid is None:
            self.grid = checkpoint_grid(self.horizon)

    def add(self, t: int, increment: float) -> "RegretTrace":
        """Record one round's pseudo-regret increment."""
        if t != self._last_t + 1:
            raise ValueError(
                f"rounds must be consecutive: got t={t} after t={self._last_t}"
            )
        if increment < 0.0:
            raise ValueError("pseudo-regret increments are non-negative")
        self._last_t = t
        self._running += increment
        if self._next_idx < len(self.grid) and t == self.grid[self._next_idx]:
            self.checkpoints.append((t, self._running))
            self._next_idx += 1
        return self

    def record_round(self, t: int, chosen: int, gaps: GapVector) -> "RegretTrace":
        """Record round t in which arm ``chosen`` was played."""
        return self.add(t, float(gaps.gaps[chosen]))

    @property
    def final(self) -> float:
        return self._running

    def value_at(self, t: int) -> float:
        """Recorded cumulative pseudo-regret at checkpoint t."""
        for ct, value in self.checkpoints:
            if ct == t:
                return value
        raise KeyError(f"t={t} is not a recorded checkpoint")


def record_round(
    trace: RegretTrace, t: int, chosen: int, gaps: GapVector
) -> RegretTrace:
    """Functional alias for :meth:`RegretTrace.record_round`."""
    return trace.record_round(t, chosen, gaps)
