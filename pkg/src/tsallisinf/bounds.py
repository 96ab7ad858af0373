"""Reference regret-bound curves.

These are the closed-form guarantees the simulator plots against measured
pseudo-regret.  All logarithms are natural.  ``estimator`` is "iw" for plain
importance weighting or "rv" for the reduced-variance variant; the constants
differ between the two.
"""

from __future__ import annotations

import math
from typing import Union

import numpy as np

from .core import GapVector

IW = "iw"
RV = "rv"
_ESTIMATORS = (IW, RV)


def _check_estimator(estimator: str) -> str:
    est = estimator.lower()
    if est not in _ESTIMATORS:
        raise ValueError(f"estimator must be one of {_ESTIMATORS}, got {estimator!r}")
    return est


def bound_thm1_adversarial(n_arms: int, horizon: int, estimator: str = IW) -> float:
    """Horizon-uniform adversarial bound for the sqrt-rate schedule at
    alpha = 1/2.

    iw: 4 sqrt(K t) + 1
    rv: 2 sqrt(K t) + 10 K log t + 16
    """
    est = _check_estimator(estimator)
    if n_arms < 1 or horizon < 1:
        raise ValueError("n_arms and horizon must be >= 1")
    kt = float(n_arms) * float(horizon)
    if est == IW:
        return 4.0 * math.sqrt(kt) + 1.0
    return 2.0 * math.sqrt(kt) + 10.0 * n_arms * math.log(horizon) + 16.0


def bound_thm1_self_bounding(
    gaps: Union[GapVector, "np.ndarray"],
    horizon: int,
    corruption: float = 0.0,
    estimator: str = IW,
) -> float:
    """Gap-dependent bound for stochastic regimes with corruption budget C.

    Requires a unique optimal arm.  With the suboptimal-gap sum
    bracket = sum_{i != i*} c_log / Delta_i  (c_log = 4 log T + 12 for iw,
    log T + 3 for rv) and B = bracket + 1/Delta_min, the bound is

      C <= B:  bracket + 1/Delta_min + C + extra
      C >  B:  2 sqrt(B C) + extra

    where extra = 4 log T + sqrt(K) + 8 for iw and
    28 K log T + sqrt(K) + 32 for rv.  The two branches agree at C = B.
    """
    est = _check_estimator(estimator)
    if not isinstance(gaps, GapVector):
        gaps = GapVector(np.asarray(gaps, dtype=np.float64))
    if not gaps.unique_optimum:
        raise ValueError("self-bounding bound requires a unique optimal arm")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if corruption < 0.0:
        raise ValueError("corruption budget must be >= 0")

    k = gaps.n_arms
    log_t = math.log(horizon)
    positive = gaps.gaps[gaps.gaps > 0.0]
    if est == IW:
        c_log = 4.0 * log_t + 12.0
        extra = 4.0 * log_t + math.sqrt(k) + 8.0
    else:
        c_log = log_t + 3.0
        extra = 28.0 * k * log_t + math.sqrt(k) + 32.0
    bracket = float(np.sum(c_log / positive))
    b = bracket + 1.0 / gaps.min_positive()

    if corruption <= b:
        return bracket + 1.0 / gaps.min_positive() + corruption + extra
    return 2.0 * math.sqrt(b * corruption) + extra


def bound_thm2_adversarial(n_arms: int, horizon: int, alpha: float) -> float:
    """Adversarial bound of the anytime alpha-family schedule:

    2 sqrt(min{1/(alpha - alpha^2), log(K)/alpha, log(T)/(1 - alpha)} K T) + 1
    """
    if n_arms < 1 or horizon < 1:
        raise ValueError("n_arms and horizon must be >= 1")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    candidates = []
    if 0.0 < alpha < 1.0:
        candidates.append(1.0 / (alpha - alpha * alpha))
    if alpha > 0.0:
        candidates.append(math.log(n_arms) / alpha)
    if alpha < 1.0:
        candidates.append(math.log(horizon) / (1.0 - alpha))
    lead = min(candidates)
    return 2.0 * math.sqrt(lead * n_arms * horizon) + 1.0
