"""Simplex projections through the Tsallis regularizer.

Each round's sampling distribution maximizes <w, -L> - Psi(w)/eta over the
probability simplex, where L is the cumulative loss-estimate vector and

    Psi(w) = -sum_i (w_i^alpha - alpha w_i) / (alpha (1 - alpha) xi_i)

with per-arm scaling xi_i > 0 (alpha = 0 and alpha = 1 are the log-barrier
and negative-entropy limits).  Stationarity gives the closed form

    w_i(nu) = (eta (1 - alpha) xi_i (L_i + nu) + 1)^(1/(alpha - 1))
    w_i(nu) = exp(-eta xi_i (L_i + nu))            for alpha = 1

where the normalizer nu is the unique root of sum_i w_i(nu) = 1.  Both
solvers below are shift-invariant in L: only loss differences matter.
"""

from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq

# Convergence target for the Newton solver: |sum(w) - 1|.
NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 100

# Exact weights can drop below float64 range (e.g. exp(-eta xi L) at
# alpha = 1 with large spreads); flooring at the smallest positive normal
# keeps every output entry strictly positive without measurably changing
# the sum.
_WEIGHT_FLOOR = float(np.finfo(np.float64).tiny)


def newton_weights_half(
    cum_estimates: np.ndarray, eta: float, warm_x: Optional[float] = None
) -> Tuple[np.ndarray, float]:
    """Weights for the alpha = 1/2, symmetric (xi = 1) regularizer.

    On this branch w_i = 4 (eta (L_i - x))^-2 with x < min(L) the root of
    sum_i w_i = 1.  Newton's method on x converges quadratically and is
    warm-started with the previous round's x; an invalid or missing warm
    start is replaced by the exact solution of the all-equal case,
    x = min(L) - 2 sqrt(K)/eta.  If Newton leaves the valid branch or fails
    to converge in NEWTON_MAX_ITER steps, bisection finishes the job.

    Returns (weights, x); x seeds the next round's warm start.
    """
    if eta <= 0.0:
        raise ValueError("eta must be positive")
    losses = np.asarray(cum_estimates, dtype=np.float64)
    if losses.ndim != 1 or losses.size == 0:
        raise ValueError("cum_estimates must be a non-empty 1-d vector")
    k = losses.size
    shift = float(losses.min())
    m = losses - shift  # min(m) = 0; solve for x < 0 in shifted coordinates

    x = -2.0 * math.sqrt(k) / eta
    if warm_x is not None:
        cand = warm_x - shift
        if math.isfinite(cand) and cand < 0.0:
            x = cand

    inv_eta_sq4 = 4.0 / (eta * eta)
    w = None
    for _ in range(NEWTON_MAX_ITER):
        diff = m - x
        w = inv_eta_sq4 / (diff * diff)
        total = w.sum()
        if abs(total - 1.0) <= NEWTON_TOL:
            return np.maximum(w, _WEIGHT_FLOOR), x + shift
        # f(x) = sum(w) - 1 is increasing and convex on x < 0 with
        # f'(x) = eta * sum(w^{3/2}).
        slope = eta * np.sum(w * np.sqrt(w))
        x_new = x - (total - 1.0) / slope
        if not (x_new < 0.0) or not math.isfinite(x_new):
            break
        x = x_new

    x = _bisect_half(m, eta, k)
    diff = m - x
    w = inv_eta_sq4 / (diff * diff)
    return np.maximum(w, _WEIGHT_FLOOR), x + shift


def _bisect_half(m: np.ndarray, eta: float, k: int) -> float:
    """Bisection fallback on the shifted normalizer, bracket guaranteed."""
    lo = -2.0 * k / eta * (1.0 + float(m.max()))
    hi = 0.0
    inv_eta_sq4 = 4.0 / (eta * eta)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        diff = m - mid
        total = (inv_eta_sq4 / (diff * diff)).sum()
        if abs(total - 1.0) <= NEWTON_TOL:
            return mid
        if total > 1.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def solve_weights_general(
    cum_estimates: np.ndarray,
    eta: float,
    alpha: float,
    xi: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Weights for any alpha in [0, 1] and positive scaling vector xi.

    Brackets the normalizer root and hands it to a guarded root finder.
    After shifting L so min(L) = 0, the root lies in [0, hi] where hi makes
    every coordinate at most 1/K.  Slower but fully general; the simulation
    loop prefers :func:`newton_weights_half` when it applies.
    """
    if eta <= 0.0:
        raise ValueError("eta must be positive")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    losses = np.asarray(cum_estimates, dtype=np.float64)
    if losses.ndim != 1 or losses.size == 0:
        raise ValueError("cum_estimates must be a non-empty 1-d vector")
    k = losses.size
    if xi is None:
        xi_arr = np.ones(k)
    else:
        xi_arr = np.asarray(xi, dtype=np.float64)
        if xi_arr.shape != losses.shape:
            raise ValueError("xi must match cum_estimates in shape")
        if np.any(xi_arr <= 0.0) or not np.all(np.isfinite(xi_arr)):
            raise ValueError("xi entries must be positive and finite")
    if k == 1:
        return np.ones(1)

    m = losses - losses.min()

    if alpha == 1.0:
        scale = eta * xi_arr

        def weights_at(nu: float) -> np.ndarray:
            return np.exp(-scale * (m + nu))

        hi = float(np.max(math.log(k) / scale - m))
    else:
        scale = eta * (1.0 - alpha) * xi_arr
        power = 1.0 / (alpha - 1.0)

        def weights_at(nu: float) -> np.ndarray:
            return (scale * (m + nu) + 1.0) ** power

        hi = float(np.max((k ** (1.0 - alpha) - 1.0) / scale - m))

    def excess(nu: float) -> float:
        return float(weights_at(nu).sum()) - 1.0

    # min(m) = 0 puts the root in [0, hi]: the best arm alone has weight 1
    # at nu = 0, and every arm has weight <= 1/K at nu = hi.
    lo = 0.0
    hi = max(hi, 1e-12)
    f_hi = excess(hi)
    while f_hi > 0.0:  # enlarge against rounding; at most a few steps
        hi *= 2.0
        f_hi = excess(hi)
    nu = brentq(excess, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    return np.maximum(weights_at(nu), _WEIGHT_FLOOR)
