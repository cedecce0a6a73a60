import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from noisebudget import (
    EVENT_BUDGET,
    EventBudgetError,
    StaircaseApd,
    ValidationError,
    apd_to_cascade,
    build_report,
    mc_step_gain,
    mc_total_gain,
    step_stats,
    total_excess_noise,
    total_mean_gain,
    total_product_composition,
)


def rel(a: float, b: float, tol: float = 1e-12) -> bool:
    return math.isclose(a, b, rel_tol=tol, abs_tol=0.0)


# ---------------------------------------------------------- step moments


def test_step_stats_at_one_half():
    s = step_stats(0.5)
    assert s.mean_gain == 1.5
    assert s.variance == 0.25
    assert s.second_moment == 2.5
    assert float(s.excess_noise) == 2.5 / 2.25


def test_step_endpoints_are_noiseless():
    # p = 0 never duplicates, p = 1 duplicates every carrier
    for p, mean in ((0.0, 1.0), (1.0, 2.0)):
        s = step_stats(p)
        assert s.mean_gain == mean
        assert s.variance == 0.0
        assert float(s.excess_noise) == 1.0


@given(st.floats(min_value=0.0, max_value=1.0))
def test_step_excess_forms_agree(p):
    # <M^2>/<M>^2 against 1 + var/<M>^2, derived independently here
    s = step_stats(p)
    other = 1.0 + p * (1.0 - p) / ((1.0 + p) * (1.0 + p))
    assert math.isclose(s.excess_noise, other, rel_tol=1e-15)


@given(st.floats(min_value=0.0, max_value=1.0))
def test_step_second_moment_consistency(p):
    s = step_stats(p)
    assert math.isclose(
        s.second_moment, s.variance + s.mean_gain**2, rel_tol=1e-15
    )


@pytest.mark.parametrize("bad", [-0.1, 1.1, math.nan])
def test_step_probability_domain(bad):
    with pytest.raises(ValueError):
        step_stats(bad)


# --------------------------------------------------------- device totals


def test_device_validation():
    with pytest.raises(ValueError):
        StaircaseApd(())
    with pytest.raises(ValueError) as err:
        StaircaseApd((0.5, 1.5))
    assert "bad steps: [2]" in str(err.value)
    assert len(StaircaseApd((0.1, 0.2, 0.3))) == 3


def test_total_excess_two_equal_steps():
    total = total_excess_noise(StaircaseApd((0.5, 0.5)))
    assert rel(total, 100.0 / 81.0, 1e-15)


def test_total_excess_endpoint_devices():
    assert float(total_excess_noise(StaircaseApd((0.0, 0.0, 0.0)))) == 1.0
    assert float(total_excess_noise(StaircaseApd((1.0,) * 5))) == 1.0


def test_total_mean_gain_is_product_of_step_means():
    assert total_mean_gain(StaircaseApd((0.5, 0.5))) == 2.25
    assert total_mean_gain(StaircaseApd((1.0,) * 3)) == 8.0


# --------------------------------------------------- cascade equivalence


def test_single_step_cascade():
    net = apd_to_cascade(StaircaseApd((0.5,)))
    assert len(net) == 1
    assert net.stages[0].power_gain == 2.25
    assert net.stages[0].external_noise == 0.0
    assert net.stages[0].internal_noise == 0.25


def test_deterministic_steps_map_to_clean_stages():
    net = apd_to_cascade(StaircaseApd((0.0, 1.0)))
    assert [s.power_gain for s in net.stages] == [1.0, 4.0]
    assert all(s.internal_noise == 0.0 for s in net.stages)
    report = build_report(net)
    assert all(float(r.corrected) == 1.0 for r in report.per_stage)


def test_cascade_carries_given_source_powers():
    net = apd_to_cascade(StaircaseApd((0.3,)), input_signal=7.0, input_noise=2.0)
    assert net.input_signal == 7.0
    assert net.input_noise == 2.0


def test_cascade_rejects_bad_source_noise():
    with pytest.raises(ValidationError):
        apd_to_cascade(StaircaseApd((0.5,)), input_noise=0.0)


@given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=10))
def test_cascade_reproduces_step_and_total_noise(probs):
    apd = StaircaseApd(tuple(probs))
    net = apd_to_cascade(apd)
    report = build_report(net)
    for row, p in zip(report.per_stage, apd.steps):
        assert rel(row.corrected, step_stats(p).excess_noise)
    assert rel(total_product_composition(net), total_excess_noise(apd))


# ------------------------------------------------------------ Monte Carlo


def test_mc_step_is_deterministic_for_a_seed():
    a = mc_step_gain(0.5, 10_000, seed=11)
    b = mc_step_gain(0.5, 10_000, seed=11)
    assert a == b
    assert a.seed == 11
    assert a.workers == 1
    assert a.trials == 10_000


def test_mc_step_worker_split_is_deterministic():
    a = mc_step_gain(0.5, 10_000, seed=11, workers=3)
    b = mc_step_gain(0.5, 10_000, seed=11, workers=3)
    assert a == b
    assert a.workers == 3


def test_mc_step_degenerate_probabilities_are_exact():
    zero = mc_step_gain(0.0, 1000, seed=0)
    one = mc_step_gain(1.0, 1000, seed=0)
    assert zero.mean == 1.0 and zero.variance == 0.0
    assert one.mean == 2.0 and one.variance == 0.0
    assert one.std_error_mean == 0.0


def test_mc_step_tracks_closed_form():
    # fixed seed, bound = 4 analytic standard errors
    trials = 200_000
    est = mc_step_gain(0.3, trials, seed=20260816)
    se = math.sqrt(0.3 * 0.7 / trials)
    assert abs(est.mean - 1.3) < 4 * se


def test_mc_estimate_internal_consistency():
    est = mc_step_gain(0.7, 50_000, seed=5)
    assert est.std_error_mean == math.sqrt(est.variance / est.trials)
    assert rel(est.excess_noise, est.second_moment / est.mean**2)


def test_mc_argument_domain():
    with pytest.raises(ValueError):
        mc_step_gain(0.5, 0, seed=0)
    with pytest.raises(ValueError):
        mc_step_gain(0.5, -5, seed=0)
    with pytest.raises(ValueError):
        mc_step_gain(0.5, 100, seed=0, workers=0)
    with pytest.raises(ValueError):
        mc_step_gain(1.5, 100, seed=0)


def test_mc_total_single_step_matches_closed_form():
    est = mc_total_gain(StaircaseApd((0.5,)), 1_000_000, seed=42)
    assert abs(est.mean - 1.5) < 0.0015
    assert abs(est.excess_noise - 10.0 / 9.0) < 0.002


def test_mc_total_mean_tracks_gain_product():
    apd = StaircaseApd((0.3, 0.7))
    est = mc_total_gain(apd, 200_000, seed=20260816)
    assert abs(est.mean - total_mean_gain(apd)) < 4 * est.std_error_mean


def test_mc_total_is_deterministic_across_worker_counts_separately():
    apd = StaircaseApd((0.5, 0.5))
    a = mc_total_gain(apd, 20_000, seed=9, workers=4)
    b = mc_total_gain(apd, 20_000, seed=9, workers=4)
    assert a == b


def test_mc_total_deterministic_device_is_exact():
    est = mc_total_gain(StaircaseApd((1.0, 1.0)), 5_000, seed=3)
    assert est.mean == 4.0
    assert est.variance == 0.0
    assert est.excess_noise == 1.0


def test_budget_rejects_oversized_trial_counts():
    with pytest.raises(EventBudgetError):
        mc_step_gain(0.5, EVENT_BUDGET + 1, seed=0)


def test_budget_rejects_runaway_carrier_growth():
    # 31 deterministic doublings from a single trial pass 10^9 carriers
    with pytest.raises(EventBudgetError) as err:
        mc_total_gain(StaircaseApd((1.0,) * 31), 1, seed=0)
    assert "budget" in str(err.value)
