"""Unbiased loss estimators built from bandit feedback.

Only the played arm's loss is observed.  Both estimators are unbiased over
the sampling distribution: sum_i w_i * estimate(chosen=i)_j = loss_j for
every arm j.
"""

from __future__ import annotations

import numpy as np


def iw_estimate(chosen: int, loss: float, weights: np.ndarray) -> np.ndarray:
    """Importance-weighted estimate: loss/w on the played arm, zero elsewhere.

    Entries are non-negative whenever the observed loss is.
    """
    est = np.zeros(len(weights))
    est[chosen] = loss / weights[chosen]
    return est


def rv_estimate(
    chosen: int, loss: float, weights: np.ndarray, eta: float
) -> np.ndarray:
    """Reduced-variance estimate with per-arm baseline B_i.

    B_i = 1/2 when w_i >= eta^2, else 0; the estimate is
    (loss - B_chosen)/w_chosen + B_chosen on the played arm and B_i on the
    rest.  Every entry is >= -1/(2 eta^2).  Intended for the alpha = 1/2
    regularizer; when eta > 1 no arm can satisfy w_i >= eta^2, so the
    estimate degenerates to the importance-weighted one, while eta = 0
    puts the baseline on every arm.
    """
    if eta < 0.0:
        raise ValueError("eta must be non-negative")
    baseline = np.where(weights >= eta * eta, 0.5, 0.0)
    est = baseline.copy()
    est[chosen] = (loss - baseline[chosen]) / weights[chosen] + baseline[chosen]
    return est
