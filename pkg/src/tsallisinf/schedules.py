"""Learning-rate schedules.

All schedules are anytime: eta_t depends only on the round index t (1-based)
and static problem quantities, never on the horizon.
"""

from __future__ import annotations

import math

import numpy as np

E = math.e


def sqrt_rate(estimator: str, t: int) -> float:
    """The alpha = 1/2 schedule: 2/sqrt(t) for iw, 4/sqrt(t) for rv."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if estimator not in ("iw", "rv"):
        raise ValueError(f"estimator must be 'iw' or 'rv', got {estimator!r}")
    lead = 2.0 if estimator == "iw" else 4.0
    return lead / math.sqrt(t)


def alpha_family_rate(alpha: float, n_arms: int, t: int) -> float:
    """Schedule for general alpha:

        sqrt( (K^(1-2a) - K^(-a)) / (1-a)  *  (1 - t^(-a)) / (a t) )

    with the boundary values sqrt((K-1) log t / t) at alpha = 0 and
    sqrt(log K (1 - 1/t) / t) at alpha = 1.  Every alpha gives eta_1 = 0:
    the first round plays the regularizer's minimizer.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    k = float(n_arms)
    if alpha == 0.0:
        return math.sqrt((k - 1.0) * math.log(t) / t)
    if alpha == 1.0:
        return math.sqrt(math.log(k) * (1.0 - 1.0 / t) / t)
    lead = (k ** (1.0 - 2.0 * alpha) - k ** (-alpha)) / (1.0 - alpha)
    tail = (1.0 - t ** (-alpha)) / (alpha * t)
    return math.sqrt(lead * tail)


def oracle_rate(alpha: float, t: int) -> float:
    """Gap-oracle schedule used with per-arm scalings xi_i = Delta_i^(1-2a).

    With tbar = max(e, t),

        eta_t = (16 / tbar)^a * (1 - tbar^(a-1)) / (4 (1 - a)),

    the rate that drives each suboptimal arm's weight toward the
    16/(Delta_i^2 t) exploration target.  Limits: (1 - 1/tbar)/4 at
    alpha = 0 and 4 log(tbar)/tbar at alpha = 1.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    tbar = max(E, float(t))
    if alpha == 1.0:
        return 4.0 * math.log(tbar) / tbar
    return (16.0 / tbar) ** alpha * (1.0 - tbar ** (alpha - 1.0)) / (4.0 * (1.0 - alpha))


def oracle_xi(gaps: np.ndarray, alpha: float) -> np.ndarray:
    """Per-arm scalings for the gap-oracle schedule.

    Suboptimal arms get Delta_i^(1-2a); the unique optimal arm borrows the
    smallest positive gap.  Requires a unique optimum.
    """
    gaps = np.asarray(gaps, dtype=np.float64)
    zero = np.flatnonzero(gaps == 0.0)
    if len(zero) != 1:
        raise ValueError("gap-oracle scaling requires a unique optimal arm")
    effective = gaps.copy()
    effective[zero[0]] = gaps[gaps > 0.0].min()
    return effective ** (1.0 - 2.0 * alpha)
