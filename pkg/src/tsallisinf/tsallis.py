"""The Tsallis-entropy bandit learner.

Configuration picks the entropy power alpha, the loss estimator, the
learning-rate schedule, and optional per-arm scalings.  The functional core
(`init_state`, `select_arm`, `update`) treats states as immutable values;
:class:`TsallisInfPolicy` wraps the same logic in a mutable object tuned for
long simulation loops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Optional, Tuple

import numpy as np

from . import schedules
from .core import GapVector, sample_index
from .estimators import iw_estimate, rv_estimate
from .solvers import newton_weights_half, solve_weights_general

IW = "iw"
RV = "rv"
SCHEDULE_SQRT = "thm1"
SCHEDULE_ALPHA_FAMILY = "thm2"
SCHEDULE_ORACLE = "thm3-oracle"
_SCHEDULES = (SCHEDULE_SQRT, SCHEDULE_ALPHA_FAMILY, SCHEDULE_ORACLE)


@dataclass(frozen=True)
class TsallisConfig:
    """Static learner configuration.

    alpha: entropy power in [0, 1]; 1/2 is the default and the only value
        the reduced-variance estimator is analyzed for.
    estimator: "iw" or "rv".
    schedule: "thm1" (2/sqrt(t) or 4/sqrt(t), alpha = 1/2 only), "thm2"
        (the general-alpha anytime rate), or "thm3-oracle" (gap-aware rate;
        requires oracle_gaps).
    xi: optional per-arm regularizer scalings, all positive; None means
        symmetric (all ones).  Ignored under "thm3-oracle", which derives
        its own scalings from the gaps.
    oracle_gaps: true suboptimality gaps, required by "thm3-oracle".
    """

    alpha: float = 0.5
    estimator: str = RV
    schedule: str = SCHEDULE_SQRT
    xi: Optional[Tuple[float, ...]] = None
    oracle_gaps: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.estimator not in (IW, RV):
            raise ValueError(f"estimator must be 'iw' or 'rv', got {self.estimator!r}")
        if self.schedule not in _SCHEDULES:
            raise ValueError(f"schedule must be one of {_SCHEDULES}, got {self.schedule!r}")
        if self.estimator == RV and self.alpha != 0.5:
            raise ValueError("the reduced-variance estimator requires alpha = 1/2")
        if self.schedule == SCHEDULE_SQRT and self.alpha != 0.5:
            raise ValueError("the sqrt-rate schedule requires alpha = 1/2")
        if self.xi is not None:
            object.__setattr__(self, "xi", tuple(float(x) for x in self.xi))
            if any(not math.isfinite(x) or x <= 0.0 for x in self.xi):
                raise ValueError("xi entries must be positive and finite")
        if self.schedule == SCHEDULE_ORACLE:
            if self.oracle_gaps is None:
                raise ValueError("'thm3-oracle' requires oracle_gaps")
            gv = GapVector(np.asarray(self.oracle_gaps, dtype=np.float64))
            if not gv.unique_optimum:
                raise ValueError("'thm3-oracle' requires a unique optimal arm")
            object.__setattr__(
                self, "oracle_gaps", tuple(float(g) for g in self.oracle_gaps)
            )

    def get_params(self) -> dict:
        return asdict(self)


def learning_rate(config: TsallisConfig, n_arms: int, t: int) -> float:
    """eta_t for round t (1-based) under the configured schedule."""
    if config.schedule == SCHEDULE_SQRT:
        return schedules.sqrt_rate(config.estimator, t)
    if config.schedule == SCHEDULE_ALPHA_FAMILY:
        return schedules.alpha_family_rate(config.alpha, n_arms, t)
    return schedules.oracle_rate(config.alpha, t)


def effective_xi(config: TsallisConfig, n_arms: int) -> Optional[np.ndarray]:
    """Per-arm scalings actually used; None means symmetric."""
    if config.schedule == SCHEDULE_ORACLE:
        gaps = np.asarray(config.oracle_gaps, dtype=np.float64)
        if gaps.size != n_arms:
            raise ValueError("oracle_gaps length must equal the number of arms")
        return schedules.oracle_xi(gaps, config.alpha)
    if config.xi is None:
        return None
    xi = np.asarray(config.xi, dtype=np.float64)
    if xi.size != n_arms:
        raise ValueError("xi length must equal the number of arms")
    return xi


@dataclass(frozen=True, eq=False)
class TsallisState:
    """Learner state after ``t`` completed rounds (immutable value)."""

    config: TsallisConfig
    n_arms: int
    t: int
    cum_estimates: np.ndarray
    warm_x: Optional[float] = None

    def __post_init__(self):
        cum = np.array(self.cum_estimates, dtype=np.float64, copy=True)
        cum.setflags(write=False)
        if cum.shape != (self.n_arms,):
            raise ValueError("cum_estimates must have one entry per arm")
        object.__setattr__(self, "cum_estimates", cum)


def init_state(config: TsallisConfig, n_arms: int) -> TsallisState:
    if n_arms < 1:
        raise ValueError("n_arms must be >= 1")
    effective_xi(config, n_arms)  # fail fast on length mismatches
    return TsallisState(config, n_arms, 0, np.zeros(n_arms), None)


def _is_half_symmetric(config: TsallisConfig, n_arms: int) -> bool:
    if config.alpha != 0.5:
        return False
    xi = effective_xi(config, n_arms)
    return xi is None or bool(np.all(xi == 1.0))


def _solve_weights(state: TsallisState, eta: float) -> Tuple[np.ndarray, Optional[float]]:
    """Weights for the coming round, plus the Newton normalizer if used.

    eta = 0 only happens in round 1 where the cumulative estimates are all
    zero; the maximizer is then the regularizer's minimizer, which any
    positive rate recovers (eta cancels when the loss term is zero).
    """
    if eta == 0.0:
        if state.t != 0 or np.any(state.cum_estimates != 0.0):
            raise ValueError("eta = 0 is only valid in the first round")
        eta = 1.0
    if _is_half_symmetric(state.config, state.n_arms):
        w, x = newton_weights_half(state.cum_estimates, eta, state.warm_x)
        return w, x
    xi = effective_xi(state.config, state.n_arms)
    return solve_weights_general(state.cum_estimates, eta, state.config.alpha, xi), None


def select_arm(state: TsallisState, u: float) -> Tuple[int, np.ndarray]:
    """Sample the round-(t+1) arm with the uniform draw ``u`` in [0, 1).

    Returns (arm index, sampling weights).  Deterministic given (state, u).
    """
    eta = learning_rate(state.config, state.n_arms, state.t + 1)
    weights, _ = _solve_weights(state, eta)
    return sample_index(weights, u), weights


def update(
    state: TsallisState,
    chosen: int,
    observed_loss: float,
    w_used: np.ndarray,
    warm_x: Optional[float] = None,
) -> TsallisState:
    """Fold one round of feedback into the state.

    ``w_used`` must be the exact weights the arm was sampled from; the
    estimator's unbiasedness depends on it.  ``warm_x`` optionally carries
    the Newton normalizer of the round just played.
    """
    if not 0.0 <= observed_loss <= 1.0:
        raise ValueError("observed loss must lie in [0, 1]")
    if not 0 <= chosen < state.n_arms:
        raise ValueError("chosen arm out of range")
    t = state.t + 1
    if state.config.estimator == IW:
        est = iw_estimate(chosen, observed_loss, w_used)
    else:
        eta = learning_rate(state.config, state.n_arms, t)
        est = rv_estimate(chosen, observed_loss, w_used, eta)
    cum = state.cum_estimates + est
    if state.config.estimator == IW and cum[chosen] < 0.0:
        raise ValueError("importance-weighted estimates cannot be negative")
    return TsallisState(
        state.config,
        state.n_arms,
        t,
        cum,
        state.warm_x if warm_x is None else warm_x,
    )


class TsallisInfPolicy:
    """Mutable wrapper around the functional core for simulation loops.

    Produces exactly the same arm sequence as the functional ops driven by
    the same uniform draws; cumulative estimates are updated in place and
    the Newton normalizer is carried between rounds as a warm start.
    """

    def __init__(self, config: TsallisConfig, n_arms: int):
        self.config = config
        self.reset(n_arms)

    def reset(self, n_arms: int) -> None:
        if n_arms < 1:
            raise ValueError("n_arms must be >= 1")
        effective_xi(self.config, n_arms)
        self.n_arms = n_arms
        self.t = 0
        self.cum = np.zeros(n_arms)
        self.warm_x: Optional[float] = None
        self._half = _is_half_symmetric(self.config, n_arms)
        self._xi = effective_xi(self.config, n_arms)
        self._w: Optional[np.ndarray] = None
        self._eta = 0.0

    def select(self, rng: np.random.Generator) -> int:
        return self.select_with(float(rng.random()))

    def select_with(self, u: float) -> int:
        """Select with an externally drawn uniform (for batched streams)."""
        eta = learning_rate(self.config, self.n_arms, self.t + 1)
        # Round 1 under a zero rate: the loss term is zero, so any positive
        # rate recovers the regularizer's minimizer.  The estimator still
        # sees the true schedule rate.
        eta_solver = eta if eta > 0.0 else 1.0
        if self._half:
            w, x = newton_weights_half(self.cum, eta_solver, self.warm_x)
            self.warm_x = x
        else:
            w = solve_weights_general(self.cum, eta_solver, self.config.alpha, self._xi)
        self._w = w
        self._eta = eta
        return sample_index(w, u)

    def update(self, arm: int, loss: float, rng=None) -> None:
        w = self._w
        if w is None:
            raise RuntimeError("update called before select")
        if self.config.estimator == IW:
            self.cum[arm] += loss / w[arm]
        else:
            eta = self._eta
            if eta * eta <= 1.0:
                # Baseline of 1/2 on every arm whose weight reaches eta^2.
                np.add(self.cum, np.where(w >= eta * eta, 0.5, 0.0), out=self.cum)
                b = 0.5 if w[arm] >= eta * eta else 0.0
                self.cum[arm] += (loss - b) / w[arm]
            else:
                # No arm can reach the baseline threshold; plain iw update.
                self.cum[arm] += loss / w[arm]
        self.t += 1
        self._w = None

    @property
    def last_weights(self) -> Optional[np.ndarray]:
        return self._w

    def get_params(self) -> dict:
        return {"kind": "tsallis", **self.config.get_params()}
