"""Classic bandit baselines: UCB1, Thompson sampling, and Exp3.

All three observe losses in [0, 1]; UCB1 and Thompson work on rewards
1 - loss internally.  Each policy exposes reset/select/update plus a
``step(observed, rng)`` convenience that folds in the previous round's
feedback and returns the next arm.
"""

from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from .core import sample_index


class Ucb1Policy:
    """Deterministic optimism index with exploration parameter 1.5.

    Plays each arm once in index order, then
    argmax_i  mean_reward_i + sqrt(1.5 log(t) / (2 n_i)),
    ties broken toward the lowest index.
    """

    exploration = 1.5

    def __init__(self, n_arms: int):
        self.reset(n_arms)

    def reset(self, n_arms: int) -> None:
        if n_arms < 1:
            raise ValueError("n_arms must be >= 1")
        self.n_arms = n_arms
        self.t = 0
        self.counts = np.zeros(n_arms, dtype=np.int64)
        self.reward_sums = np.zeros(n_arms)

    def select(self, rng=None) -> int:
        t = self.t + 1
        if t <= self.n_arms:
            return t - 1
        means = self.reward_sums / self.counts
        bonus = np.sqrt(self.exploration * math.log(t) / (2.0 * self.counts))
        return int(np.argmax(means + bonus))

    def update(self, arm: int, loss: float, rng=None) -> None:
        self.counts[arm] += 1
        self.reward_sums[arm] += 1.0 - loss
        self.t += 1

    def step(self, observed: Optional[Tuple[int, float]] = None, rng=None) -> int:
        if observed is not None:
            self.update(*observed)
        return self.select()

    def get_params(self) -> dict:
        return {"kind": "ucb1", "exploration": self.exploration}


class ThompsonPolicy:
    """Beta-Bernoulli posterior sampling on rewards.

    Each arm keeps a Beta(successes + 1, failures + 1) posterior; the round
    plays the arm with the largest posterior draw.  Fractional losses are
    binarized with a Bernoulli draw of matching mean before the update, so
    the posterior stays conjugate.
    """

    def __init__(self, n_arms: int):
        self.reset(n_arms)

    def reset(self, n_arms: int) -> None:
        if n_arms < 1:
            raise ValueError("n_arms must be >= 1")
        self.n_arms = n_arms
        self.t = 0
        self.successes = np.zeros(n_arms)
        self.failures = np.zeros(n_arms)

    def select(self, rng: np.random.Generator) -> int:
        theta = rng.beta(self.successes + 1.0, self.failures + 1.0)
        return int(np.argmax(theta))

    def update(self, arm: int, loss: float, rng: np.random.Generator) -> None:
        loss_bit = 1.0 if float(rng.random()) < loss else 0.0
        if loss_bit:
            self.failures[arm] += 1.0
        else:
            self.successes[arm] += 1.0
        self.t += 1

    def step(
        self, observed: Optional[Tuple[int, float]], rng: np.random.Generator
    ) -> int:
        if observed is not None:
            self.update(*observed, rng)
        return self.select(rng)

    def get_params(self) -> dict:
        return {"kind": "thompson"}


class Exp3Policy:
    """Exponential weights with importance-weighted losses.

    Anytime rate eta_t = sqrt(log(K) / (t K)); the sampling distribution is
    softmax(-eta_t L) over cumulative estimates L.
    """

    def __init__(self, n_arms: int):
        self.reset(n_arms)

    def reset(self, n_arms: int) -> None:
        if n_arms < 1:
            raise ValueError("n_arms must be >= 1")
        self.n_arms = n_arms
        self.t = 0
        self.cum = np.zeros(n_arms)
        self._w: Optional[np.ndarray] = None

    def weights(self) -> np.ndarray:
        t = self.t + 1
        eta = math.sqrt(math.log(self.n_arms) / (t * self.n_arms)) if self.n_arms > 1 else 0.0
        logits = -eta * self.cum
        logits -= logits.max()
        w = np.exp(logits)
        w /= w.sum()
        return w

    def select(self, rng: np.random.Generator) -> int:
        return self.select_with(float(rng.random()))

    def select_with(self, u: float) -> int:
        w = self.weights()
        self._w = w
        return sample_index(w, u)

    def update(self, arm: int, loss: float, rng=None) -> None:
        w = self._w
        if w is None:
            raise RuntimeError("update called before select")
        self.cum[arm] += loss / w[arm]
        self.t += 1
        self._w = None

    def step(
        self, observed: Optional[Tuple[int, float]], rng: np.random.Generator
    ) -> int:
        if observed is not None:
            self.update(*observed)
        return self.select(rng)

    def get_params(self) -> dict:
        return {"kind": "exp3"}
