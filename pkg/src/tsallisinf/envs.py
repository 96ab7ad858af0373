"""Loss-generating environments.

Specs are immutable descriptions; ``make_env`` turns a spec into a per-run
generator whose blocks must be requested consecutively from round 1.  All
randomness comes from the caller's stream, one uniform per arm per round in
arm-index order, so results do not depend on block sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .core import GapVector

FLIP_BEST = "flip-best"


@dataclass(frozen=True)
class StochasticSpec:
    """I.i.d. Bernoulli losses with the given per-arm means."""

    means: Tuple[float, ...]
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "means", tuple(float(m) for m in self.means))
        if len(self.means) < 1:
            raise ValueError("need at least one arm")
        if any(not 0.0 <= m <= 1.0 for m in self.means):
            raise ValueError("Bernoulli means must lie in [0, 1]")

    @property
    def n_arms(self) -> int:
        return len(self.means)


@dataclass(frozen=True)
class SwitchingSpec:
    """Two alternating stochastic regimes with fixed gaps.

    Phase k (0-based) lasts ceil(initial * growth^k) rounds.  Even phases
    draw from means (0, gap, ..., gap), odd phases from
    (1 - gap, 1, ..., 1); arm 0 stays optimal with gap vector
    (0, gap, ..., gap) throughout.
    """

    n_arms: int
    gap: float
    initial_phase_length: int = 10
    growth: float = 1.6
    name: Optional[str] = None

    def __post_init__(self):
        if self.n_arms < 2:
            raise ValueError("switching environments need at least two arms")
        if not 0.0 < self.gap <= 1.0:
            raise ValueError("gap must lie in (0, 1]")
        if self.initial_phase_length < 1 or self.growth < 1.0:
            raise ValueError("phase lengths must be positive and non-shrinking")

    def phase_length(self, k: int) -> int:
        return math.ceil(self.initial_phase_length * self.growth**k)


@dataclass(frozen=True)
class CorruptedSpec:
    """Adversarial wrapper around a stochastic base environment.

    A budget C limits the cumulative sup-norm distance between corrupted
    and base loss vectors.  Strategy "flip-best" forces the optimal arm's
    loss to 1 while the remaining budget covers the change; regret is still
    measured against the base environment's gaps.
    """

    base: Union[StochasticSpec, SwitchingSpec]
    budget: float
    strategy: str = FLIP_BEST
    name: Optional[str] = None

    def __post_init__(self):
        if self.budget < 0.0:
            raise ValueError("corruption budget must be >= 0")
        if self.strategy != FLIP_BEST:
            raise ValueError(f"unknown corruption strategy {self.strategy!r}")

    @property
    def n_arms(self) -> int:
        return self.base.n_arms


EnvSpec = Union[StochasticSpec, SwitchingSpec, CorruptedSpec]


def experiment1(n_arms: int, gap: float) -> StochasticSpec:
    """One optimal arm at mean (1 - gap)/2, the rest at (1 + gap)/2."""
    if n_arms < 2:
        raise ValueError("n_arms must be >= 2")
    if not 0.0 < gap <= 1.0:
        raise ValueError("gap must lie in (0, 1]")
    lo = (1.0 - gap) / 2.0
    hi = (1.0 + gap) / 2.0
    means = (lo,) + (hi,) * (n_arms - 1)
    return StochasticSpec(means, name=f"experiment1-k{n_arms}-gap{gap:g}")


def multi_optimal(n_arms: int) -> StochasticSpec:
    """One suboptimal arm at mean 9/16; the other K-1 arms tie at 7/16."""
    if n_arms < 2:
        raise ValueError("n_arms must be >= 2")
    means = (9.0 / 16.0,) + (7.0 / 16.0,) * (n_arms - 1)
    return StochasticSpec(means, name=f"multi-optimal-k{n_arms}")


def gaps_of(spec: EnvSpec) -> GapVector:
    """Suboptimality gaps the environment is scored against."""
    if isinstance(spec, StochasticSpec):
        return GapVector.from_means(spec.means)
    if isinstance(spec, SwitchingSpec):
        return GapVector(np.array([0.0] + [spec.gap] * (spec.n_arms - 1)))
    if isinstance(spec, CorruptedSpec):
        return gaps_of(spec.base)
    raise TypeError(f"not an environment spec: {spec!r}")


def env_label(spec: EnvSpec) -> str:
    if spec.name is not None:
        return spec.name
    if isinstance(spec, StochasticSpec):
        return f"stochastic-k{spec.n_arms}"
    if isinstance(spec, SwitchingSpec):
        return f"switching-k{spec.n_arms}-gap{spec.gap:g}"
    if isinstance(spec, CorruptedSpec):
        return f"corrupted-{spec.strategy}-c{spec.budget:g}-{env_label(spec.base)}"
    raise TypeError(f"not an environment spec: {spec!r}")


class StochasticEnv:
    def __init__(self, spec: StochasticSpec):
        self.spec = spec
        self.n_arms = spec.n_arms
        self._means = np.array(spec.means)

    def sample_block(self, t_start: int, n: int, rng: np.random.Generator) -> np.ndarray:
        u = rng.random((n, self.n_arms))
        return (u < self._means).astype(np.float64)


class SwitchingEnv:
    def __init__(self, spec: SwitchingSpec):
        self.spec = spec
        self.n_arms = spec.n_arms
        k = spec.n_arms
        self._phase_means = np.array(
            [
                [0.0] + [spec.gap] * (k - 1),
                [1.0 - spec.gap] + [1.0] * (k - 1),
            ]
        )
        self._ends = [spec.phase_length(0)]  # cumulative phase end rounds

    def _phase_indices(self, t_start: int, n: int) -> np.ndarray:
        last = t_start + n - 1
        while self._ends[-1] < last:
            k = len(self._ends)
            self._ends.append(self._ends[-1] + self.spec.phase_length(k))
        ends = np.array(self._ends)
        rounds = np.arange(t_start, t_start + n)
        return np.searchsorted(ends, rounds, side="left") % 2

    def sample_block(self, t_start: int, n: int, rng: np.random.Generator) -> np.ndarray:
        means = self._phase_means[self._phase_indices(t_start, n)]
        u = rng.random((n, self.n_arms))
        return (u < means).astype(np.float64)


class CorruptedEnv:
    """Applies the corruption strategy on top of a base environment.

    Tracks cumulative spend; a flip happens only when its full cost fits in
    the remaining budget, so spend never exceeds the budget.
    """

    def __init__(self, spec: CorruptedSpec):
        self.spec = spec
        self.n_arms = spec.n_arms
        self._base = make_env(spec.base)
        gaps = gaps_of(spec.base)
        self.target_arm = int(np.argmin(gaps.gaps))
        self.spent = 0.0

    def sample_block(self, t_start: int, n: int, rng: np.random.Generator) -> np.ndarray:
        block = self._base.sample_block(t_start, n, rng)
        costs = 1.0 - block[:, self.target_arm]
        within = self.spent + np.cumsum(costs) <= self.spec.budget
        if within.any():
            block[within, self.target_arm] = 1.0
            self.spent += float(costs[within].sum())
        return block


def make_env(spec: EnvSpec):
    if isinstance(spec, StochasticSpec):
        return StochasticEnv(spec)
    if isinstance(spec, SwitchingSpec):
        return SwitchingEnv(spec)
    if isinstance(spec, CorruptedSpec):
        return CorruptedEnv(spec)
    raise TypeError(f"not an environment spec: {spec!r}")
