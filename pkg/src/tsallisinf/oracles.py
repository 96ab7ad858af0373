"""Reference oracles and randomized self-check suites.

The reference solvers recompute sampling weights by plain interval
bisection, sharing no code with the production solvers (Newton iteration
and Brent root-finding in :mod:`tsallisinf.solvers`).  The suites draw
random instances and compare the two routes coordinate by coordinate; they
back both the ``oracle-check`` CLI subcommand and the acceptance tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .estimators import iw_estimate, rv_estimate
from .solvers import newton_weights_half, solve_weights_general

ALPHA_GRID = tuple(round(0.1 * k, 1) for k in range(11))

SOLVER_TOL = 1e-8
IDENTITY_TOL = 1e-12
SHIFT_TOL = 1e-10
PERMUTATION_TOL = 1e-10
SIMPLEX_TOL = 1e-9


def bisect_weights_half_reference(losses: np.ndarray, eta: float) -> np.ndarray:
    """Bisection on the normalizer x of sum_i 4 (eta (L_i - x))^-2 = 1."""
    losses = np.asarray(losses, dtype=np.float64)
    lo = float(losses.min()) - 2.0 * losses.size / eta * (1.0 + max(1.0, float(losses.max())))
    hi = float(losses.min())
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        total = float(np.sum(4.0 / (eta * (losses - mid)) ** 2))
        if total > 1.0:
            hi = mid
        else:
            lo = mid
    x = 0.5 * (lo + hi)
    return 4.0 / (eta * (losses - x)) ** 2


def bisect_weights_general_reference(
    losses: np.ndarray,
    eta: float,
    alpha: float,
    xi: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Bisection on the normalizer nu of the stationarity system."""
    losses = np.asarray(losses, dtype=np.float64)
    k = losses.size
    xi = np.ones(k) if xi is None else np.asarray(xi, dtype=np.float64)
    if k == 1:
        return np.ones(1)

    if alpha == 1.0:
        def weights_at(nu):
            return np.exp(-eta * xi * (losses + nu))

        hi = float(np.max(np.log(k) / (eta * xi) - losses))
    else:
        def weights_at(nu):
            return (eta * (1.0 - alpha) * xi * (losses + nu) + 1.0) ** (1.0 / (alpha - 1.0))

        hi = float(np.max((k ** (1.0 - alpha) - 1.0) / (eta * (1.0 - alpha) * xi) - losses))

    lo = -float(losses.min())  # the best arm alone already has weight 1 here
    hi = max(hi, lo + 1e-12)
    while float(weights_at(hi).sum()) > 1.0:
        hi = lo + 2.0 * (hi - lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if float(weights_at(mid).sum()) > 1.0:
            lo = mid
        else:
            hi = mid
    return weights_at(0.5 * (lo + hi))


@dataclass(frozen=True)
class SuiteResult:
    name: str
    instances: int
    max_error: float
    tolerance: float
    elapsed: float
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (
            f"{status} {self.name}: {self.instances} instances, "
            f"max error {self.max_error:.3e} (tol {self.tolerance:g}), "
            f"{self.failures} failures, {self.elapsed:.2f}s"
        )


def _random_instance(rng: np.random.Generator, k_max: int = 64):
    k = int(rng.integers(2, k_max + 1))
    losses = rng.uniform(0.0, 100.0, size=k)
    eta = float(rng.uniform(0.0, 4.0))
    if eta == 0.0:
        eta = 4.0
    alpha = float(ALPHA_GRID[int(rng.integers(0, len(ALPHA_GRID)))])
    return k, losses, eta, alpha


def run_solver_suite(n_instances: int = 1000, seed: int = 0) -> SuiteResult:
    """Production solvers vs the bisection references, per coordinate."""
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    worst = 0.0
    failures = 0
    for _ in range(n_instances):
        k, losses, eta, alpha = _random_instance(rng)
        w = solve_weights_general(losses, eta, alpha)
        ref = bisect_weights_general_reference(losses, eta, alpha)
        err = float(np.max(np.abs(w - ref)))
        w_half, _ = newton_weights_half(losses, eta)
        w_gen_half = solve_weights_general(losses, eta, 0.5)
        err = max(err, float(np.max(np.abs(w_half - w_gen_half))))
        worst = max(worst, err)
        if err > SOLVER_TOL:
            failures += 1
    return SuiteResult(
        "solver-oracle", n_instances, worst, SOLVER_TOL, time.perf_counter() - start, failures
    )


def run_estimator_suite(n_instances: int = 10000, seed: int = 0) -> SuiteResult:
    """Unbiasedness identity and the reduced-variance floor."""
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    worst = 0.0
    failures = 0
    for _ in range(n_instances):
        k = int(rng.integers(2, 17))
        w = rng.uniform(0.01, 1.0, size=k)
        w /= w.sum()
        losses = rng.uniform(0.0, 1.0, size=k)
        eta = float(rng.uniform(0.0, 4.0))
        if eta == 0.0:
            eta = 4.0
        iw_rows = np.stack([iw_estimate(i, float(losses[i]), w) for i in range(k)])
        rv_rows = np.stack([rv_estimate(i, float(losses[i]), w, eta) for i in range(k)])
        err = float(np.max(np.abs(w @ iw_rows - losses)))
        err = max(err, float(np.max(np.abs(w @ rv_rows - losses))))
        floor = -0.5 / (eta * eta)
        ok_floor = bool(np.all(rv_rows >= floor - 1e-12))
        worst = max(worst, err)
        if err > IDENTITY_TOL or not ok_floor:
            failures += 1
    return SuiteResult(
        "estimator-identity", n_instances, worst, IDENTITY_TOL,
        time.perf_counter() - start, failures,
    )


def run_invariance_suite(n_instances: int = 1000, seed: int = 0) -> SuiteResult:
    """Shift invariance, permutation equivariance, monotonicity, simplex."""
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    worst = 0.0
    failures = 0
    for _ in range(n_instances):
        k = int(rng.integers(2, 33))
        losses = rng.uniform(0.0, 100.0, size=k)
        eta = float(rng.uniform(0.01, 4.0))
        alpha = float(ALPHA_GRID[int(rng.integers(0, len(ALPHA_GRID)))])
        xi = rng.uniform(0.25, 4.0, size=k)
        bad = False

        w = solve_weights_general(losses, eta, alpha, xi)

        # Simplex membership.
        simplex_err = abs(float(w.sum()) - 1.0)
        worst = max(worst, simplex_err)
        if simplex_err > SIMPLEX_TOL or np.any(w <= 0.0):
            bad = True

        # Only loss differences matter.
        shift = float(rng.uniform(-50.0, 50.0))
        w_shift = solve_weights_general(losses + shift, eta, alpha, xi)
        shift_err = float(np.max(np.abs(w_shift - w)))
        worst = max(worst, shift_err)
        if shift_err > SHIFT_TOL:
            bad = True

        # Relabeling arms relabels weights.
        perm = rng.permutation(k)
        w_perm = solve_weights_general(losses[perm], eta, alpha, xi[perm])
        perm_err = float(np.max(np.abs(w_perm - w[perm])))
        worst = max(worst, perm_err)
        if perm_err > PERMUTATION_TOL:
            bad = True

        # Raising one arm's cumulative loss lowers its weight and cannot
        # lower anyone else's.  Strictness is only measurable away from the
        # simplex corners: within 1e-12 of weight 0 or 1 the exact decrease
        # falls below float64 resolution.
        i = int(rng.integers(0, k))
        bumped = losses.copy()
        bumped[i] += float(rng.uniform(0.5, 10.0))
        w_bump = solve_weights_general(bumped, eta, alpha, xi)
        others = np.delete(np.arange(k), i)
        saturated = w[i] < 1e-12 or w[i] > 1.0 - 1e-12
        if not (w_bump[i] < w[i] or saturated):
            bad = True
        if not np.all(w_bump[others] >= w[others] - PERMUTATION_TOL):
            bad = True

        if bad:
            failures += 1
    return SuiteResult(
        "solver-invariance", n_instances, worst, SOLVER_TOL,
        time.perf_counter() - start, failures,
    )


def run_all_suites(seed: int = 0):
    return [
        run_solver_suite(seed=seed),
        run_estimator_suite(seed=seed),
        run_invariance_suite(seed=seed),
    ]
