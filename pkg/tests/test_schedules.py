"""Learning-rate schedules and the gap-scaled regularizer weights."""

import math

import numpy as np
import pytest

from tsallisinf.schedules import alpha_family_rate, oracle_rate, oracle_xi, sqrt_rate


def test_sqrt_rate_values():
    assert sqrt_rate("iw", 1) == pytest.approx(2.0)
    assert sqrt_rate("rv", 4) == pytest.approx(2.0)
    assert sqrt_rate("iw", 100) == pytest.approx(0.2)
    assert sqrt_rate("rv", 100) == pytest.approx(0.4)


def test_sqrt_rate_rejects_bad_args():
    with pytest.raises(ValueError):
        sqrt_rate("other", 1)
    with pytest.raises(ValueError):
        sqrt_rate("iw", 0)


def test_alpha_family_shannon_limit_value():
    got = alpha_family_rate(1.0, 2, 2)
    assert got == pytest.approx(0.41627730557884884, abs=1e-12)


def test_alpha_family_log_barrier_limit_value():
    got = alpha_family_rate(0.0, 3, 10)
    assert got == pytest.approx(0.6786140424415112, abs=1e-12)


def test_alpha_family_interior_value():
    got = alpha_family_rate(0.5, 4, 9)
    assert got == pytest.approx(0.3849001794597505, abs=1e-12)


def test_alpha_family_first_round_is_zero():
    assert alpha_family_rate(0.5, 4, 1) == 0.0
    assert alpha_family_rate(0.25, 2, 1) == 0.0


def test_alpha_family_boundary_behavior():
    for k, t in ((2, 5), (8, 1000)):
        # the alpha=0 boundary value is the analytic limit of the general
        # formula
        assert alpha_family_rate(1e-9, k, t) == pytest.approx(
            alpha_family_rate(0.0, k, t), rel=1e-6
        )
        # the alpha=1 boundary rate is defined directly as
        # sqrt(log(K)(1-1/t)/t); the general formula's interior limit sits
        # a factor sqrt(K) below it, so the family is deliberately
        # discontinuous there
        assert alpha_family_rate(1.0, k, t) == pytest.approx(
            math.sqrt(math.log(k) * (1.0 - 1.0 / t) / t), abs=1e-12
        )
        assert alpha_family_rate(1 - 1e-9, k, t) * math.sqrt(k) == pytest.approx(
            alpha_family_rate(1.0, k, t), rel=1e-6
        )


def test_alpha_family_decays_with_t():
    rates = [alpha_family_rate(0.5, 4, t) for t in (2, 10, 100, 10000)]
    assert all(a > b for a, b in zip(rates, rates[1:]))


def test_oracle_rate_values():
    assert oracle_rate(0.5, 16) == pytest.approx(0.375, abs=1e-12)
    assert oracle_rate(0.0, 100) == pytest.approx(0.2475, abs=1e-12)
    # rounds below e are clamped to t = e
    assert oracle_rate(1.0, 1) == pytest.approx(4.0 / math.e, abs=1e-12)
    assert oracle_rate(1.0, 50) == pytest.approx(0.3129618404342517, abs=1e-12)


def test_oracle_rate_alpha_limit_is_continuous():
    for t in (5, 500):
        assert oracle_rate(1 - 1e-9, t) == pytest.approx(
            oracle_rate(1.0, t), rel=1e-5
        )


def test_oracle_rate_clamps_small_t():
    assert oracle_rate(0.3, 1) == oracle_rate(0.3, 2)  # both below e... t=2 < e
    assert oracle_rate(0.3, 3) != oracle_rate(0.3, 2)


def test_oracle_xi_power_of_gaps():
    gaps = np.array([0.0, 0.2, 0.4])
    # alpha = 1/2 wipes the gap dependence out entirely
    assert np.allclose(oracle_xi(gaps, 0.5), 1.0)
    # alpha = 0: xi_i = gap_i, optimal arm borrows the smallest positive gap
    assert np.allclose(oracle_xi(gaps, 0.0), [0.2, 0.2, 0.4])
    # alpha = 1: xi_i = 1/gap_i
    assert np.allclose(oracle_xi(gaps, 1.0), [5.0, 5.0, 2.5])


def test_oracle_xi_requires_unique_optimum():
    with pytest.raises(ValueError):
        oracle_xi(np.array([0.0, 0.0, 0.3]), 0.5)
